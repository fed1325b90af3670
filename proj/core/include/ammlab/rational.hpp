#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ammlab {

/// Exact arbitrary-precision rational. All pool state transitions run on
/// this type; floating point only appears at display and statistics
/// boundaries.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt numerator(const Rational& r) {
    return boost::multiprecision::numerator(r);
}
inline BigInt denominator(const Rational& r) {
    return boost::multiprecision::denominator(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "123", "-4.56", "1e-3", "2.5e2" or "p/q" into an exact rational.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Fixed-point decimal string with exactly `decimals` digits after the
/// point, rounded half to even. The core never rounds; this is display only.
std::string format_decimal(const Rational& value, unsigned decimals);

/// Plain decimal string rounded half-even to `sig_digits` significant
/// digits, trailing zeros stripped ("0.01", "-1.646062427", "120").
std::string format_sig(const Rational& value, unsigned sig_digits);

/// 10^exp for exp >= 0.
BigInt pow10(unsigned exp);

}  // namespace ammlab
