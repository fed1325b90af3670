#include "ammlab/prediction_market.hpp"

#include "ammlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace ammlab {

Rational implied_probability(const MarketPool& market) {
    const Rational& yes = market.yes_reserve();
    const Rational& no = market.no_reserve();
    if (yes <= 0 || no <= 0)
        throw DegeneratePoolError("implied probability of a degenerate market");
    return no / (yes + no);
}

PathRun run_scenario_path(const MarketPool& market0, std::span<const Operation> ops) {
    PathRun run;
    run.trajectory.reserve(ops.size());
    MarketPool state = market0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        try {
            state = state.apply(ops[i]);
        } catch (const ValidationError& e) {
            throw SequenceError(i, e.what());
        }
        run.trajectory.push_back({ops[i], state, implied_probability(state)});
    }
    run.final_prob = implied_probability(state);
    return run;
}

Rational closed_form_prob_path1(const Rational& x0, const Rational& y0,
                                const Rational& alpha, const Rational& delta_y) {
    const Rational k0 = x0 * y0;
    const Rational scale = 1 + alpha;
    const Rational y2 = y0 * scale + delta_y;
    const Rational x2 = k0 * scale * scale / y2;
    return y2 / (x2 + y2);
}

Rational closed_form_prob_path2(const Rational& x0, const Rational& y0,
                                const Rational& alpha, const Rational& delta_y) {
    const Rational k0 = x0 * y0;
    const Rational scale = 1 + alpha;
    const Rational y2 = (y0 + delta_y) * scale;
    const Rational x2 = k0 * scale / (y0 + delta_y);
    return y2 / (x2 + y2);
}

std::vector<std::pair<Rational, Rational>> divergence_table(
    const Rational& x0, const Rational& y0, const Rational& delta_y,
    std::span<const Rational> alphas) {
    std::vector<std::pair<Rational, Rational>> rows;
    rows.reserve(alphas.size());
    for (const Rational& alpha : alphas) {
        if (alpha <= 0) throw ValidationError("divergence table alphas must be positive");
        Rational divergence_pp = 100 * (closed_form_prob_path2(x0, y0, alpha, delta_y) -
                                        closed_form_prob_path1(x0, y0, alpha, delta_y));
        rows.emplace_back(alpha, std::move(divergence_pp));
    }
    return rows;
}

Rational fragmentation_divergence(const MarketPool& market0, const Rational& alpha,
                                  const Rational& total_no_in, int fragments) {
    if (fragments < 1) throw ValidationError("fragment count must be >= 1");
    if (total_no_in <= 0) throw ValidationError("total trade size must be positive");
    const Rational piece = total_no_in / fragments;

    // Final probability with the liquidity addition placed after j fragments.
    auto prob_with_add_after = [&](int j) {
        MarketPool state = market0;
        for (int i = 0; i < j; ++i) state = state.apply(Swap{no_token, piece});
        state = state.apply(AddLiquidity{alpha});
        for (int i = j; i < fragments; ++i) state = state.apply(Swap{no_token, piece});
        return implied_probability(state);
    };

    const int mid = fragments / 2;
    Rational diff = prob_with_add_after(mid + 1) - prob_with_add_after(mid);
    if (diff < 0) diff = -diff;
    return 100 * diff;
}

namespace {

// Unbiased draw in [0, bound) from raw 64-bit PRNG output.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw > limit);
    return draw % bound;
}

void fisher_yates(std::vector<Operation>& ops, std::mt19937_64& rng) {
    for (std::size_t i = ops.size(); i > 1; --i) {
        const std::uint64_t j = uniform_below(rng, i);
        std::swap(ops[i - 1], ops[j]);
    }
}

}  // namespace

MonteCarloSummary monte_carlo_paths(const MarketPool& market0,
                                    std::vector<Operation> ops, std::size_t n,
                                    std::uint64_t seed) {
    if (n < 1) throw ValidationError("monte carlo needs at least one path");
    if (ops.empty()) throw ValidationError("monte carlo needs a nonempty operation multiset");

    MonteCarloSummary summary;
    summary.n_paths = n;
    summary.seed = seed;
    summary.final_probs.reserve(n);

    std::mt19937_64 rng(seed);
    std::vector<Operation> order = std::move(ops);
    for (std::size_t run = 0; run < n; ++run) {
        fisher_yates(order, rng);
        try {
            MarketPool state = market0;
            for (const Operation& op : order) state = state.apply(op);
            summary.final_probs.push_back(implied_probability(state));
        } catch (const ValidationError&) {
            ++summary.rejected;
        }
    }

    if (summary.final_probs.empty())
        throw ValidationError("every sampled ordering was invalid");

    const auto [min_it, max_it] =
        std::minmax_element(summary.final_probs.begin(), summary.final_probs.end());
    summary.min_prob = *min_it;
    summary.max_prob = *max_it;
    summary.spread = summary.max_prob - summary.min_prob;

    Rational sum(0);
    for (const Rational& p : summary.final_probs) sum += p;
    summary.mean_prob = sum / static_cast<long>(summary.final_probs.size());

    const double mean = to_double(summary.mean_prob);
    double ss = 0.0;
    for (const Rational& p : summary.final_probs) {
        const double d = to_double(p) - mean;
        ss += d * d;
    }
    summary.stddev = summary.final_probs.size() > 1
                         ? std::sqrt(ss / double(summary.final_probs.size() - 1))
                         : 0.0;

    std::set<Rational> distinct(summary.final_probs.begin(), summary.final_probs.end());
    summary.distinct = distinct.size();
    return summary;
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> out;

    Scenario gradual;
    gradual.name = "Gradual";
    gradual.path1 = {Swap{no_token, Rational(100)}, AddLiquidity{Rational(1, 5)},
                     Swap{no_token, Rational(150)}, Swap{no_token, Rational(200)}};
    gradual.path2 = {Swap{no_token, Rational(100)}, Swap{no_token, Rational(150)},
                     Swap{no_token, Rational(200)}, AddLiquidity{Rational(1, 5)}};
    gradual.printed_path1_prob = 0.613;
    gradual.printed_path2_prob = 0.623;
    out.push_back(std::move(gradual));

    Scenario oscillating;
    oscillating.name = "Oscillating";
    oscillating.path1 = {Swap{no_token, Rational(200)}, Swap{yes_token, Rational(100)},
                         AddLiquidity{Rational(3, 10)}, Swap{no_token, Rational(150)}};
    oscillating.path2 = {Swap{no_token, Rational(200)}, Swap{yes_token, Rational(100)},
                         Swap{no_token, Rational(150)}, AddLiquidity{Rational(3, 10)}};
    oscillating.printed_path1_prob = 0.581;
    oscillating.printed_path2_prob = 0.588;
    out.push_back(std::move(oscillating));

    Scenario shock;
    shock.name = "SharpShock";
    shock.path1 = {AddLiquidity{Rational(1, 2)}, Swap{no_token, Rational(500)}};
    shock.path2 = {Swap{no_token, Rational(500)}, AddLiquidity{Rational(1, 2)}};
    shock.printed_path1_prob = 0.634;
    shock.printed_path2_prob = 0.692;
    out.push_back(std::move(shock));

    return out;
}

std::vector<std::pair<Rational, Rational>> scenario_divergence_by_alpha(
    const MarketPool& market0, const Scenario& scenario,
    std::span<const Rational> alphas) {
    auto rescale = [](std::vector<Operation> path, const Rational& alpha) {
        for (Operation& op : path)
            if (auto* add = std::get_if<AddLiquidity>(&op)) add->alpha = alpha;
        return path;
    };

    std::vector<std::pair<Rational, Rational>> rows;
    rows.reserve(alphas.size());
    for (const Rational& alpha : alphas) {
        const auto p1 = rescale(scenario.path1, alpha);
        const auto p2 = rescale(scenario.path2, alpha);
        Rational divergence_pp =
            100 * (run_scenario_path(market0, p2).final_prob -
                   run_scenario_path(market0, p1).final_prob);
        rows.emplace_back(alpha, std::move(divergence_pp));
    }
    return rows;
}

std::vector<std::pair<Rational, double>> printed_divergence_reference(
    const std::string& scenario_name) {
    const std::vector<Rational> grid = {Rational(1, 10), Rational(1, 5), Rational(1, 2),
                                        Rational(3, 4), Rational(1)};
    std::vector<double> values;
    if (scenario_name == "Gradual")
        values = {0.5, 1.0, 2.2, 3.1, 3.9};
    else if (scenario_name == "Oscillating")
        values = {0.4, 0.7, 1.5, 2.2, 2.8};
    else if (scenario_name == "SharpShock")
        values = {3.2, 5.8, 5.8, 8.3, 10.8};
    else
        return {};

    std::vector<std::pair<Rational, double>> out;
    for (std::size_t i = 0; i < grid.size(); ++i) out.emplace_back(grid[i], values[i]);
    return out;
}

}  // namespace ammlab
