#pragma once

#include "ammlab/operation.hpp"
#include "ammlab/pool.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace ammlab {

/// Final states of the two orderings of a pair of operations, plus the
/// exact reserve differences and the relative spot-price impact.
///
/// Ordering labels follow the liquidity/swap convention used everywhere in
/// this project: "case 1" is liquidity-then-swap (AB when A adds
/// liquidity), "case 2" is swap-then-liquidity (BA).
struct PathComparison {
    Pool final_ab;          ///< A applied first, then B.
    Pool final_ba;          ///< B applied first, then A.
    Rational delta_x;       ///< reserve_x(BA) - reserve_x(AB)
    Rational delta_y;       ///< reserve_y(AB) - reserve_y(BA)
    Rational price_impact_pct;
};

struct HeatmapCell {
    Rational alpha;
    Rational swap_amount;   ///< token-X units
    Rational price_impact_pct;
};

/// Left-to-right fold of operations over the pool. The first invalid
/// operation aborts with a SequenceError carrying its index.
Pool apply_sequence(const Pool& pool, std::span<const Operation> ops);

/// Runs [a, b] and [b, a] from the same initial pool.
PathComparison commute_compare(const Pool& pool, const Operation& op_a,
                               const Operation& op_b);

/// Exact reserve-X gap between the two orderings of a liquidity addition
/// and a swap: delta_x_in * alpha.
Rational closed_form_x_diff(const Rational& delta_x_in, const Rational& alpha);

struct YStates {
    Rational y2;        ///< liquidity-then-swap final Y reserve
    Rational y2_prime;  ///< swap-then-liquidity final Y reserve
};

/// Closed forms for the final Y reserves of both orderings:
///   y2  = k0 (1+a)^2 / (x0 (1+a) + dx)
///   y2' = k0 (1+a)   / (x0 + dx)
YStates closed_form_y_states(const Rational& x0, const Rational& y0,
                             const Rational& alpha, const Rational& delta_x);

/// 100 * (spot(final_ba) - spot(final_ab)) / spot(final_ab). Negative
/// whenever the swap-first ordering ends at the lower price.
Rational price_impact_pct(const Pool& final_ab, const Pool& final_ba);

/// commute_compare(pool0, AddLiquidity(alpha), Swap(X, amount)) for every
/// grid pair, row-major in (alpha, swap_amount) order.
std::vector<HeatmapCell> heatmap_grid(const Pool& pool0,
                                      std::span<const Rational> alphas,
                                      std::span<const Rational> swap_amounts);

/// Default sampling of the simulation grid: alpha 0.01..0.50 step 0.01.
std::vector<Rational> default_heatmap_alphas();
/// Default sampling of the simulation grid: swap 1..20 step 1.
std::vector<Rational> default_heatmap_swaps();

/// CSV with header `alpha,swap_amount,price_impact_pct`, values rendered
/// as decimal strings at 10 significant digits.
void write_heatmap_csv(std::ostream& out, std::span<const HeatmapCell> cells);

}  // namespace ammlab
