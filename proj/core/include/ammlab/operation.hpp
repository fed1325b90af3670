#pragma once

#include "ammlab/pool.hpp"
#include "ammlab/rational.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ammlab {

struct Swap {
    Token token_in;
    Rational amount_in;
    bool operator==(const Swap&) const = default;
};

struct AddLiquidity {
    Rational alpha;
    bool operator==(const AddLiquidity&) const = default;
};

struct RemoveLiquidity {
    Rational alpha;
    bool operator==(const RemoveLiquidity&) const = default;
};

/// One step of a path: the unit whose ordering the whole lab is about.
using Operation = std::variant<Swap, AddLiquidity, RemoveLiquidity>;

/// Applies one operation, validating it against the current state.
Pool apply_operation(const Pool& pool, const Operation& op);

/// "swap(X, 10)", "add_liquidity(1/2)", ...
std::string describe(const Operation& op);

/// True when the two lists contain the same operations with multiplicity,
/// in any order.
bool same_multiset(std::span<const Operation> a, std::span<const Operation> b);

}  // namespace ammlab
