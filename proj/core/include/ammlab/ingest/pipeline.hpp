#pragma once

#include "ammlab/ingest/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ammlab::ingest {

struct EventWindow {
    std::int64_t window_start = 0;
    std::vector<PoolEvent> events;
};

/// Partitions timestamp-sorted events into half-open windows
/// [t, t + width) aligned to multiples of `width` from the epoch. Throws
/// ValidationError on unsorted input; every event lands in exactly one
/// window.
std::vector<EventWindow> window_events(std::span<const PoolEvent> events,
                                       std::int64_t width_seconds = 60);

/// Fallback reserve estimate when the pool TVL is unavailable, in token
/// units (token0 = X, e.g. ETH; token1 = Y, e.g. USDC).
struct ReserveEstimate {
    double token0 = 0.0;
    double token1 = 0.0;
};

struct SkippedWindow {
    std::int64_t window_start = 0;
    std::string reason;
};

struct OpportunityScan {
    std::vector<OpportunityWindow> opportunities;  ///< sorted by |impact| desc
    std::vector<SkippedWindow> skipped;            ///< qualifying windows we could not model
};

/// Finds windows holding at least one swap and one mint/burn (each at or
/// above the USD floor), estimates alpha as liquidity USD over pool TVL,
/// converts the swap flow to token-X units at the window-mean pool price,
/// and replays both orderings of the aggregate liquidity-and-swap pair on
/// the estimated reserves.
///
/// TVL per window comes from `hourly_tvl` (latest hour point at or before
/// the window start) when provided, else the metadata TVL, else the
/// reserve estimate priced at the window mean.
OpportunityScan detect_opportunities(
    std::span<const EventWindow> windows, const PoolMetadata& metadata,
    const ReserveEstimate& reserves, double min_event_usd = 1.0,
    std::span<const std::pair<std::int64_t, double>> hourly_tvl = {});

/// CSV with header
/// `window_start,swap_usd,liquidity_usd,alpha,price_impact_pct,price_case1,price_case2`.
void write_opportunities_csv(std::ostream& out,
                             std::span<const OpportunityWindow> opportunities);

}  // namespace ammlab::ingest
