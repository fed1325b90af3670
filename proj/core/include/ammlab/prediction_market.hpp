#pragma once

#include "ammlab/operation.hpp"
#include "ammlab/pool.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ammlab {

/// Binary-outcome market pool. The YES reserve lives on the X side of the
/// wrapped pool and the NO reserve on the Y side; buying YES means swapping
/// NO tokens in and taking YES tokens out.
class MarketPool {
public:
    MarketPool(Rational yes_reserve, Rational no_reserve)
        : pool_(std::move(yes_reserve), std::move(no_reserve)) {}
    explicit MarketPool(Pool pool) : pool_(std::move(pool)) {}

    const Rational& yes_reserve() const { return pool_.reserve_x(); }
    const Rational& no_reserve() const { return pool_.reserve_y(); }
    const Pool& pool() const { return pool_; }

    MarketPool apply(const Operation& op) const {
        return MarketPool(apply_operation(pool_, op));
    }

    bool operator==(const MarketPool&) const = default;

private:
    Pool pool_;
};

constexpr Token yes_token = Token::X;
constexpr Token no_token = Token::Y;

/// P(YES) = no / (yes + no), strictly inside (0, 1) for a tradable market.
Rational implied_probability(const MarketPool& market);

struct TrajectoryPoint {
    Operation op;
    MarketPool state;        ///< state after the operation
    Rational probability;    ///< implied P(YES) after the operation
};

struct PathRun {
    std::vector<TrajectoryPoint> trajectory;
    Rational final_prob;
};

/// Applies the operations in order, recording state and probability after
/// each step.
PathRun run_scenario_path(const MarketPool& market0, std::span<const Operation> ops);

/// P(YES) after liquidity-then-trade:
///   y2 = y0 (1+a) + dy,  x2 = k0 (1+a)^2 / y2,  P = y2 / (x2 + y2)
Rational closed_form_prob_path1(const Rational& x0, const Rational& y0,
                                const Rational& alpha, const Rational& delta_y);

/// P(YES) after trade-then-liquidity; algebraically independent of alpha:
///   y2' = (y0 + dy)(1+a),  x2' = k0 (1+a) / (y0 + dy),  P = y2' / (x2' + y2')
Rational closed_form_prob_path2(const Rational& x0, const Rational& y0,
                                const Rational& alpha, const Rational& delta_y);

/// Per-alpha probability divergence in percentage points:
/// 100 * (path2 - path1).
std::vector<std::pair<Rational, Rational>> divergence_table(
    const Rational& x0, const Rational& y0, const Rational& delta_y,
    std::span<const Rational> alphas);

/// Divergence, in percentage points, from transposing the liquidity event
/// with the middle fragment when total_no_in is split into `fragments`
/// equal sequential NO swaps. fragments = 1 reduces to the plain
/// two-ordering comparison.
Rational fragmentation_divergence(const MarketPool& market0, const Rational& alpha,
                                  const Rational& total_no_in, int fragments);

struct MonteCarloSummary {
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    std::size_t rejected = 0;          ///< permutations aborted by an invalid op
    std::vector<Rational> final_probs; ///< one per completed permutation
    Rational min_prob;
    Rational max_prob;
    Rational mean_prob;
    Rational spread;                   ///< max - min, probability units
    double stddev = 0.0;               ///< sample stddev (n-1) of final probs
    std::size_t distinct = 0;          ///< number of distinct final probabilities

    bool operator==(const MonteCarloSummary&) const = default;
};

/// Evaluates `n` uniformly random orderings of `ops`.
///
/// Randomness is pinned down so summaries are bit-identical across
/// platforms: a std::mt19937_64 seeded with `seed` drives a back-to-front
/// Fisher-Yates shuffle whose bounded draws come from rejection sampling on
/// raw 64-bit outputs (draw until below 2^64 - 2^64 mod bound, then reduce).
MonteCarloSummary monte_carlo_paths(const MarketPool& market0,
                                    std::vector<Operation> ops, std::size_t n,
                                    std::uint64_t seed);

/// One named information scenario: the same operation multiset in two
/// orders.
struct Scenario {
    std::string name;
    std::vector<Operation> path1;
    std::vector<Operation> path2;
    /// Reference probabilities printed in the source tables, when this is a
    /// built-in scenario; used to flag discrepancies in reports.
    std::optional<double> printed_path1_prob;
    std::optional<double> printed_path2_prob;
};

/// The three built-in scenarios (Gradual, Oscillating, SharpShock) with
/// their printed reference probabilities.
std::vector<Scenario> builtin_scenarios();

/// Per-alpha divergence for a full scenario: every liquidity operation in
/// both paths is re-scaled to the grid alpha, both paths are re-run, and
/// the divergence is 100 * (P(path2) - P(path1)).
std::vector<std::pair<Rational, Rational>> scenario_divergence_by_alpha(
    const MarketPool& market0, const Scenario& scenario,
    std::span<const Rational> alphas);

/// Reference grid printed in the divergence-by-liquidity-size table, in
/// percentage points, keyed by scenario name; see flag logic in reports.
std::vector<std::pair<Rational, double>> printed_divergence_reference(
    const std::string& scenario_name);

}  // namespace ammlab
