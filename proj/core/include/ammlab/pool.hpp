#pragma once

#include "ammlab/rational.hpp"

#include <string>

namespace ammlab {

/// The two pool assets. In an ETH/USDC pool X is ETH and Y is USDC; in a
/// binary prediction market X holds YES tokens and Y holds NO tokens.
enum class Token { X, Y };

Token other(Token t);
std::string to_string(Token t);

class Pool;
struct SwapOutcome;

/// Constant-product pool state: exact reserves and a fee fraction.
///
/// Immutable value type; every operation returns a new state, so pools can
/// be shared and sent across threads freely. With fee = 0 the invariant
/// k = reserve_x * reserve_y is preserved exactly by swaps.
class Pool {
public:
    /// Requires x0 > 0, y0 > 0 and 0 <= fee < 1.
    Pool(Rational reserve_x, Rational reserve_y, Rational fee = Rational(0));

    const Rational& reserve_x() const { return reserve_x_; }
    const Rational& reserve_y() const { return reserve_y_; }
    const Rational& fee() const { return fee_; }

    Rational invariant_k() const { return reserve_x_ * reserve_y_; }

    /// Marginal y-per-x quote, reserve_y / reserve_x.
    Rational spot_price() const;

    /// Swaps `amount_in` of `token_in` along the curve. The full input
    /// enters the reserves; with fee f only amount_in * (1 - f) moves the
    /// curve, so k grows when f > 0.
    SwapOutcome swap_exact_in(Token token_in, const Rational& amount_in) const;

    /// Scales both reserves by (1 + alpha), alpha > 0. k scales by
    /// (1 + alpha)^2; the spot price is unchanged.
    Pool add_liquidity(const Rational& alpha) const;

    /// Scales both reserves by (1 - alpha), 0 < alpha < 1.
    Pool remove_liquidity(const Rational& alpha) const;

    bool operator==(const Pool& rhs) const = default;

private:
    Rational reserve_x_;
    Rational reserve_y_;
    Rational fee_;
};

struct SwapOutcome {
    Pool pool;
    Rational amount_out;
};

}  // namespace ammlab
