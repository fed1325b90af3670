#include "ammlab/ingest/pipeline.hpp"

#include "ammlab/errors.hpp"
#include "ammlab/path_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ammlab::ingest {

std::vector<EventWindow> window_events(std::span<const PoolEvent> events,
                                       std::int64_t width_seconds) {
    if (width_seconds <= 0) throw ValidationError("window width must be positive");

    std::vector<EventWindow> windows;
    std::int64_t previous = std::numeric_limits<std::int64_t>::min();
    for (const PoolEvent& event : events) {
        if (event.timestamp < previous)
            throw ValidationError("events must be sorted by timestamp");
        previous = event.timestamp;

        // Epoch-aligned floor; timestamps are positive in practice but
        // handle negatives exactly anyway.
        std::int64_t start = event.timestamp / width_seconds * width_seconds;
        if (event.timestamp < 0 && event.timestamp % width_seconds != 0)
            start -= width_seconds;

        if (windows.empty() || windows.back().window_start != start)
            windows.push_back({start, {}});
        windows.back().events.push_back(event);
    }
    return windows;
}

OpportunityScan detect_opportunities(
    std::span<const EventWindow> windows, const PoolMetadata& metadata,
    const ReserveEstimate& reserves, double min_event_usd,
    std::span<const std::pair<std::int64_t, double>> hourly_tvl) {
    OpportunityScan scan;

    // Latest positive hourly TVL at or before the window start, if any.
    auto hourly_tvl_at = [&](std::int64_t window_start) -> double {
        double tvl = 0.0;
        for (const auto& [hour_start, value] : hourly_tvl) {
            if (hour_start > window_start) break;  // points are sorted
            if (value > 0.0) tvl = value;
        }
        return tvl;
    };

    for (const EventWindow& window : windows) {
        double swap_usd = 0.0;
        double liquidity_usd = 0.0;
        double price_sum = 0.0;
        std::size_t priced_swaps = 0;
        for (const PoolEvent& event : window.events) {
            const double usd = std::fabs(event.amount_usd);
            if (usd < min_event_usd) continue;
            if (event.kind == EventKind::Swap) {
                swap_usd += usd;
                if (event.price > 0.0) {
                    price_sum += event.price;
                    ++priced_swaps;
                }
            } else {
                liquidity_usd += usd;
            }
        }
        if (swap_usd <= 0.0 || liquidity_usd <= 0.0) continue;  // not a qualifying window

        const double window_price =
            priced_swaps > 0 ? price_sum / double(priced_swaps) : 0.0;
        if (window_price <= 0.0) {
            scan.skipped.push_back({window.window_start, "no usable pool price in window"});
            continue;
        }

        double tvl_usd = hourly_tvl_at(window.window_start);
        if (tvl_usd <= 0.0) tvl_usd = metadata.tvl_usd;
        if (tvl_usd <= 0.0) tvl_usd = reserves.token0 * window_price + reserves.token1;
        if (tvl_usd <= 0.0) {
            scan.skipped.push_back({window.window_start, "zero TVL"});
            continue;
        }

        OpportunityWindow opp;
        opp.window_start = window.window_start;
        opp.swap_usd = swap_usd;
        opp.liquidity_usd = liquidity_usd;
        opp.alpha_est = liquidity_usd / tvl_usd;

        const double swap_token0 = swap_usd / window_price;
        if (!(reserves.token0 > 0.0) || !(reserves.token1 > 0.0)) {
            scan.skipped.push_back({window.window_start, "nonpositive reserve estimate"});
            continue;
        }

        const Pool pool0{Rational(reserves.token0), Rational(reserves.token1)};
        const PathComparison cmp =
            commute_compare(pool0, AddLiquidity{Rational(opp.alpha_est)},
                            Swap{Token::X, Rational(swap_token0)});
        opp.price_case1 = to_double(cmp.final_ab.spot_price());
        opp.price_case2 = to_double(cmp.final_ba.spot_price());
        opp.price_impact_pct = to_double(cmp.price_impact_pct);
        scan.opportunities.push_back(opp);
    }

    std::stable_sort(scan.opportunities.begin(), scan.opportunities.end(),
                     [](const OpportunityWindow& a, const OpportunityWindow& b) {
                         const double ia = std::fabs(a.price_impact_pct);
                         const double ib = std::fabs(b.price_impact_pct);
                         return ia != ib ? ia > ib : a.window_start < b.window_start;
                     });
    return scan;
}

void write_opportunities_csv(std::ostream& out,
                             std::span<const OpportunityWindow> opportunities) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    out << "window_start,swap_usd,liquidity_usd,alpha,price_impact_pct,"
           "price_case1,price_case2\n";
    for (const OpportunityWindow& o : opportunities) {
        out << o.window_start << ',' << fmt(o.swap_usd) << ',' << fmt(o.liquidity_usd)
            << ',' << fmt(o.alpha_est) << ',' << fmt(o.price_impact_pct) << ','
            << fmt(o.price_case1) << ',' << fmt(o.price_case2) << '\n';
    }
}

}  // namespace ammlab::ingest
