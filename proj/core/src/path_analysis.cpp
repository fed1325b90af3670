#include "ammlab/path_analysis.hpp"

#include "ammlab/errors.hpp"

#include <ostream>

namespace ammlab {

Pool apply_sequence(const Pool& pool, std::span<const Operation> ops) {
    Pool state = pool;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        try {
            state = apply_operation(state, ops[i]);
        } catch (const ValidationError& e) {
            throw SequenceError(i, e.what());
        }
    }
    return state;
}

PathComparison commute_compare(const Pool& pool, const Operation& op_a,
                               const Operation& op_b) {
    const Operation ab[] = {op_a, op_b};
    const Operation ba[] = {op_b, op_a};
    Pool final_ab = apply_sequence(pool, ab);
    Pool final_ba = apply_sequence(pool, ba);

    Rational delta_x = final_ba.reserve_x() - final_ab.reserve_x();
    Rational delta_y = final_ab.reserve_y() - final_ba.reserve_y();
    Rational impact = price_impact_pct(final_ab, final_ba);
    return {std::move(final_ab), std::move(final_ba), std::move(delta_x),
            std::move(delta_y), std::move(impact)};
}

Rational closed_form_x_diff(const Rational& delta_x_in, const Rational& alpha) {
    return delta_x_in * alpha;
}

YStates closed_form_y_states(const Rational& x0, const Rational& y0,
                             const Rational& alpha, const Rational& delta_x) {
    const Rational k0 = x0 * y0;
    const Rational scale = 1 + alpha;
    YStates out;
    out.y2 = k0 * scale * scale / (x0 * scale + delta_x);
    out.y2_prime = k0 * scale / (x0 + delta_x);
    return out;
}

Rational price_impact_pct(const Pool& final_ab, const Pool& final_ba) {
    const Rational price_ab = final_ab.spot_price();
    const Rational price_ba = final_ba.spot_price();
    return 100 * (price_ba - price_ab) / price_ab;
}

std::vector<HeatmapCell> heatmap_grid(const Pool& pool0,
                                      std::span<const Rational> alphas,
                                      std::span<const Rational> swap_amounts) {
    std::vector<HeatmapCell> cells;
    cells.reserve(alphas.size() * swap_amounts.size());
    for (const Rational& alpha : alphas) {
        if (alpha <= 0) throw ValidationError("heatmap alpha grid must be positive");
        for (const Rational& amount : swap_amounts) {
            if (amount <= 0) throw ValidationError("heatmap swap grid must be positive");
            PathComparison cmp = commute_compare(pool0, AddLiquidity{alpha},
                                                 Swap{Token::X, amount});
            cells.push_back({alpha, amount, std::move(cmp.price_impact_pct)});
        }
    }
    return cells;
}

std::vector<Rational> default_heatmap_alphas() {
    std::vector<Rational> alphas;
    for (int i = 1; i <= 50; ++i) alphas.emplace_back(i, 100);
    return alphas;
}

std::vector<Rational> default_heatmap_swaps() {
    std::vector<Rational> swaps;
    for (int i = 1; i <= 20; ++i) swaps.emplace_back(i);
    return swaps;
}

void write_heatmap_csv(std::ostream& out, std::span<const HeatmapCell> cells) {
    out << "alpha,swap_amount,price_impact_pct\n";
    for (const HeatmapCell& cell : cells) {
        out << format_sig(cell.alpha, 10) << ',' << format_sig(cell.swap_amount, 10)
            << ',' << format_sig(cell.price_impact_pct, 10) << '\n';
    }
}

}  // namespace ammlab
