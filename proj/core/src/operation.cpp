#include "ammlab/operation.hpp"

#include <algorithm>
#include <tuple>

namespace ammlab {

namespace {

// Stable ordering key for multiset comparison.
std::tuple<int, int, Rational> sort_key(const Operation& op) {
    if (const auto* s = std::get_if<Swap>(&op))
        return {0, s->token_in == Token::X ? 0 : 1, s->amount_in};
    if (const auto* a = std::get_if<AddLiquidity>(&op)) return {1, 0, a->alpha};
    const auto& r = std::get<RemoveLiquidity>(op);
    return {2, 0, r.alpha};
}

}  // namespace

Pool apply_operation(const Pool& pool, const Operation& op) {
    return std::visit(
        [&](const auto& o) -> Pool {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Swap>)
                return pool.swap_exact_in(o.token_in, o.amount_in).pool;
            else if constexpr (std::is_same_v<T, AddLiquidity>)
                return pool.add_liquidity(o.alpha);
            else
                return pool.remove_liquidity(o.alpha);
        },
        op);
}

std::string describe(const Operation& op) {
    return std::visit(
        [](const auto& o) -> std::string {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Swap>)
                return "swap(" + to_string(o.token_in) + ", " + format_sig(o.amount_in, 12) + ")";
            else if constexpr (std::is_same_v<T, AddLiquidity>)
                return "add_liquidity(" + format_sig(o.alpha, 12) + ")";
            else
                return "remove_liquidity(" + format_sig(o.alpha, 12) + ")";
        },
        op);
}

bool same_multiset(std::span<const Operation> a, std::span<const Operation> b) {
    if (a.size() != b.size()) return false;
    std::vector<Operation> sa(a.begin(), a.end());
    std::vector<Operation> sb(b.begin(), b.end());
    auto less = [](const Operation& l, const Operation& r) {
        return sort_key(l) < sort_key(r);
    };
    std::sort(sa.begin(), sa.end(), less);
    std::sort(sb.begin(), sb.end(), less);
    return sa == sb;
}

}  // namespace ammlab
