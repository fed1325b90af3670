#include "ammlab/rational.hpp"

#include "ammlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace ammlab {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Rounds num/den (den > 0) to the nearest integer, ties to even.
BigInt round_half_even(const BigInt& num, const BigInt& den) {
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (num < 0 && r != 0) {
        // divide_qr truncates toward zero; shift to floor division.
        q -= 1;
        r += den;
    }
    const BigInt twice = r * 2;
    if (twice > den || (twice == den && (q % 2) != 0)) q += 1;
    return q;
}

Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    std::string_view mantissa = s;
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        mantissa = s.substr(0, epos);
        std::string_view etext = s.substr(epos + 1);
        std::string_view edigits = etext;
        bool eneg = false;
        if (!edigits.empty() && (edigits.front() == '+' || edigits.front() == '-')) {
            eneg = edigits.front() == '-';
            edigits.remove_prefix(1);
        }
        if (!all_digits(edigits) || edigits.size() > 6)
            throw ParseError("invalid exponent in number: '" + std::string(text) + "'");
        exponent = std::strtol(std::string(edigits).c_str(), nullptr, 10);
        if (eneg) exponent = -exponent;
    }

    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty())
        throw ParseError("empty number: '" + std::string(text) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
        throw ParseError("invalid number: '" + std::string(text) + "'");

    BigInt digits{0};
    for (char c : int_part) digits = digits * 10 + (c - '0');
    for (char c : frac_part) digits = digits * 10 + (c - '0');

    const long scale = exponent - static_cast<long>(frac_part.size());
    Rational value(digits);
    if (scale > 0)
        value *= Rational(pow10(static_cast<unsigned>(scale)));
    else if (scale < 0)
        value /= Rational(pow10(static_cast<unsigned>(-scale)));
    return negative ? -value : value;
}

}  // namespace

BigInt pow10(unsigned exp) {
    BigInt result{1};
    BigInt base{10};
    while (exp != 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

Rational parse_rational(std::string_view text) {
    auto begin = text.find_first_not_of(" \t");
    auto end = text.find_last_not_of(" \t\r\n");
    if (begin == std::string_view::npos)
        throw ParseError("empty number");
    std::string_view s = text.substr(begin, end - begin + 1);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view ntext = s.substr(0, slash);
        std::string_view dtext = s.substr(slash + 1);
        bool negative = false;
        if (!ntext.empty() && (ntext.front() == '+' || ntext.front() == '-')) {
            negative = ntext.front() == '-';
            ntext.remove_prefix(1);
        }
        if (!all_digits(ntext) || !all_digits(dtext))
            throw ParseError("invalid fraction: '" + std::string(s) + "'");
        BigInt num{std::string(ntext)};
        BigInt den{std::string(dtext)};
        if (den == 0) throw ParseError("zero denominator: '" + std::string(s) + "'");
        Rational value(num, den);
        return negative ? -value : value;
    }
    return parse_decimal(s);
}

std::string format_decimal(const Rational& value, unsigned decimals) {
    const bool negative = value < 0;
    const Rational mag = negative ? Rational(-value) : value;
    const BigInt scaled =
        round_half_even(numerator(mag) * pow10(decimals), denominator(mag));

    std::string digits = scaled.str();
    if (digits.size() <= decimals)
        digits.insert(0, decimals + 1 - digits.size(), '0');

    std::string out;
    if (negative && scaled != 0) out += '-';
    out.append(digits, 0, digits.size() - decimals);
    if (decimals > 0) {
        out += '.';
        out.append(digits, digits.size() - decimals, decimals);
    }
    return out;
}

std::string format_sig(const Rational& value, unsigned sig_digits) {
    if (sig_digits == 0) sig_digits = 1;
    if (value == 0) return "0";

    const bool negative = value < 0;
    const Rational mag = negative ? Rational(-value) : value;

    // Find e with 10^e <= mag < 10^(e+1) by exact integer comparison.
    const BigInt& num = numerator(mag);
    const BigInt& den = denominator(mag);
    long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
    auto at_least = [&](long exp) {
        // mag >= 10^exp
        return exp >= 0 ? num >= den * pow10(static_cast<unsigned>(exp))
                        : num * pow10(static_cast<unsigned>(-exp)) >= den;
    };
    while (!at_least(e)) --e;
    while (at_least(e + 1)) ++e;

    // Round mag * 10^(sig-1-e) half-even to an integer mantissa.
    const long shift = static_cast<long>(sig_digits) - 1 - e;
    BigInt mant_num = num;
    BigInt mant_den = den;
    if (shift > 0)
        mant_num *= pow10(static_cast<unsigned>(shift));
    else if (shift < 0)
        mant_den *= pow10(static_cast<unsigned>(-shift));
    BigInt mantissa = round_half_even(mant_num, mant_den);
    if (mantissa == pow10(sig_digits)) {  // carry: 999.96 -> 1000.0
        mantissa = pow10(sig_digits - 1);
        ++e;
    }

    std::string digits = mantissa.str();
    std::string out = negative ? "-" : "";
    if (e >= static_cast<long>(sig_digits) - 1) {
        out += digits;
        out.append(static_cast<std::size_t>(e - (static_cast<long>(sig_digits) - 1)), '0');
        return out;
    }
    if (e >= 0) {
        out.append(digits, 0, static_cast<std::size_t>(e + 1));
        out += '.';
        out.append(digits, static_cast<std::size_t>(e + 1), std::string::npos);
    } else {
        out += "0.";
        out.append(static_cast<std::size_t>(-e - 1), '0');
        out += digits;
    }
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return out;
}

}  // namespace ammlab
