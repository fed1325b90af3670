#pragma once

#include "ammlab/rational.hpp"

#include <cstdint>
#include <string>

namespace ammlab::ingest {

enum class EventKind { Swap, Mint, Burn };

std::string to_string(EventKind kind);

/// Normalized on-chain pool event. Swap amounts are signed with the pool's
/// perspective: positive means the token entered the pool, negative that it
/// left. Mint and burn amounts are nonnegative; the kind carries the
/// direction.
struct PoolEvent {
    EventKind kind = EventKind::Swap;
    std::string tx_id;
    std::int64_t timestamp = 0;
    Rational amount0;       ///< decimal-adjusted token0 amount
    Rational amount1;       ///< decimal-adjusted token1 amount
    double amount_usd = 0.0;
    double price = 0.0;     ///< pool-reported token1-per-token0 price, 0 if unknown
};

struct PoolMetadata {
    std::string pool_id;
    int token0_decimals = 18;
    int token1_decimals = 6;
    int fee_tier_ppm = 0;   ///< parts-per-million fee tier
    double tvl_usd = 0.0;
};

struct OraclePoint {
    std::int64_t block_number = 0;
    std::int64_t timestamp = 0;
    double eth_usd = 0.0;
};

/// A 60-second window holding both swap and liquidity activity, with the
/// modeled ordering impact on the estimated reserves.
struct OpportunityWindow {
    std::int64_t window_start = 0;
    double swap_usd = 0.0;
    double liquidity_usd = 0.0;
    double alpha_est = 0.0;
    double price_impact_pct = 0.0;
    double price_case1 = 0.0;  ///< liquidity-then-swap final spot price
    double price_case2 = 0.0;  ///< swap-then-liquidity final spot price
};

/// raw integer token units -> exact decimal-adjusted rational.
Rational adjust_decimals(const BigInt& raw, int decimals);

/// Exact inverse of adjust_decimals; throws if the value does not land on
/// an integer at the given scale.
BigInt raw_from_adjusted(const Rational& adjusted, int decimals);

}  // namespace ammlab::ingest
