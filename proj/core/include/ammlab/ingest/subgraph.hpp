#pragma once

#include "ammlab/ingest/transport.hpp"
#include "ammlab/ingest/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ammlab::ingest {

/// Graph-protocol client for pool metadata and event pages.
///
/// Event entities carry raw integer token amounts plus an amountUSD column;
/// amounts are decimal-adjusted here using the pool's token decimals.
/// Pages are pulled with a timestamp cursor (timestamp_gte plus tx-id
/// dedup, so equal-timestamp runs across page joints are kept).
class SubgraphClient {
public:
    SubgraphClient(HttpTransport& http, std::string endpoint);

    PoolMetadata fetch_pool_metadata(const std::string& pool_id);

    /// Chronologically sorted, decimal-adjusted events with
    /// timestamp >= min_timestamp, at most `limit` of them. `page_size`
    /// requests above 1000 are clamped to the wire maximum of 1000.
    std::vector<PoolEvent> fetch_events(const std::string& pool_id, EventKind kind,
                                        std::int64_t min_timestamp, std::size_t limit,
                                        const PoolMetadata& metadata,
                                        std::size_t page_size = 1000);

    /// (hour_start_unix, tvl_usd) points for hourly TVL lookups.
    std::vector<std::pair<std::int64_t, double>> fetch_hourly_tvl(
        const std::string& pool_id, std::int64_t min_timestamp, std::size_t limit);

    // Exact request bodies, exposed so fixture tooling can key recordings.
    static std::string metadata_query_body(const std::string& pool_id);
    static std::string events_query_body(const std::string& pool_id, EventKind kind,
                                         std::int64_t min_timestamp, std::size_t first);
    static std::string hourly_tvl_query_body(const std::string& pool_id,
                                             std::int64_t min_timestamp,
                                             std::size_t first);

private:
    HttpTransport& http_;
    std::string endpoint_;
};

}  // namespace ammlab::ingest
