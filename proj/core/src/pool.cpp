#include "ammlab/pool.hpp"

#include "ammlab/errors.hpp"

#include <utility>

namespace ammlab {

Token other(Token t) { return t == Token::X ? Token::Y : Token::X; }

std::string to_string(Token t) { return t == Token::X ? "X" : "Y"; }

Pool::Pool(Rational reserve_x, Rational reserve_y, Rational fee)
    : reserve_x_(std::move(reserve_x)),
      reserve_y_(std::move(reserve_y)),
      fee_(std::move(fee)) {
    if (reserve_x_ <= 0 || reserve_y_ <= 0)
        throw ValidationError("pool reserves must be positive");
    if (fee_ < 0 || fee_ >= 1)
        throw ValidationError("fee must lie in [0, 1)");
}

Rational Pool::spot_price() const {
    if (reserve_x_ == 0) throw DegeneratePoolError("spot price of a pool with zero X reserve");
    return reserve_y_ / reserve_x_;
}

SwapOutcome Pool::swap_exact_in(Token token_in, const Rational& amount_in) const {
    if (amount_in <= 0) throw ValidationError("swap amount must be positive");

    const Rational& in_reserve = token_in == Token::X ? reserve_x_ : reserve_y_;
    const Rational& out_reserve = token_in == Token::X ? reserve_y_ : reserve_x_;

    // Only the fee-reduced input moves along the curve; the full input is
    // added to the reserves.
    const Rational effective_in = amount_in * (1 - fee_);
    const Rational new_out = (in_reserve * out_reserve) / (in_reserve + effective_in);
    const Rational amount_out = out_reserve - new_out;
    const Rational new_in = in_reserve + amount_in;

    Pool next = token_in == Token::X ? Pool(new_in, new_out, fee_)
                                     : Pool(new_out, new_in, fee_);
    return {std::move(next), amount_out};
}

Pool Pool::add_liquidity(const Rational& alpha) const {
    if (alpha <= 0) throw ValidationError("liquidity addition alpha must be positive");
    const Rational scale = 1 + alpha;
    return Pool(reserve_x_ * scale, reserve_y_ * scale, fee_);
}

Pool Pool::remove_liquidity(const Rational& alpha) const {
    if (alpha <= 0 || alpha >= 1)
        throw ValidationError("liquidity removal alpha must lie strictly in (0, 1)");
    const Rational scale = 1 - alpha;
    return Pool(reserve_x_ * scale, reserve_y_ * scale, fee_);
}

}  // namespace ammlab
