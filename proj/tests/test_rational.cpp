#include "ammlab/rational.hpp"

#include "ammlab/errors.hpp"

#include <doctest.h>

using namespace ammlab;

TEST_CASE("parse_rational decimal forms") {
    CHECK(parse_rational("123") == Rational(123));
    CHECK(parse_rational("-4.56") == Rational(-456, 100));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("2.5e2") == Rational(250));
    CHECK(parse_rational("+0.50") == Rational(1, 2));
    CHECK(parse_rational(" 42 ") == Rational(42));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("5.") == Rational(5));
}

TEST_CASE("parse_rational fraction forms") {
    CHECK(parse_rational("1/11") == Rational(1, 11));
    CHECK(parse_rational("-5000/3") == Rational(-5000, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("parse_rational rejects garbage") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e"), ParseError);
    CHECK_THROWS_AS(parse_rational("--1"), ParseError);
    CHECK_THROWS_AS(parse_rational("."), ParseError);
}

TEST_CASE("format_decimal rounds half to even") {
    CHECK(format_decimal(Rational(605000, 3), 2) == "201666.67");
    CHECK(format_decimal(Rational(5000, 3), 2) == "1666.67");
    CHECK(format_decimal(Rational(1, 2), 0) == "0");    // 0.5 -> even 0
    CHECK(format_decimal(Rational(3, 2), 0) == "2");    // 1.5 -> even 2
    CHECK(format_decimal(Rational(25, 1000), 2) == "0.02");  // 0.025 -> 0.02
    CHECK(format_decimal(Rational(35, 1000), 2) == "0.04");  // 0.035 -> 0.04
    CHECK(format_decimal(Rational(-5000, 3), 2) == "-1666.67");
    CHECK(format_decimal(Rational(0), 3) == "0.000");
    CHECK(format_decimal(Rational(7), 0) == "7");
}

TEST_CASE("format_sig significant digits") {
    CHECK(format_sig(Rational(1, 10), 10) == "0.1");
    CHECK(format_sig(Rational(1, 100), 10) == "0.01");
    CHECK(format_sig(Rational(605000, 3), 10) == "201666.6667");
    CHECK(format_sig(Rational(-24100, 14641), 10) == "-1.646062428");
    CHECK(format_sig(Rational(9, 13), 4) == "0.6923");
    CHECK(format_sig(Rational(16, 25), 4) == "0.64");
    CHECK(format_sig(Rational(120), 10) == "120");
    CHECK(format_sig(Rational(0), 10) == "0");
    CHECK(format_sig(Rational(99996, 100), 4) == "1000");  // carry across the point
    CHECK(format_sig(Rational(2, 3), 3) == "0.667");
    CHECK(format_sig(Rational(-1, 3), 2) == "-0.33");
    CHECK(format_sig(Rational(123456), 3) == "123000");
}

TEST_CASE("format round trip through parse") {
    const Rational values[] = {Rational(9, 13), Rational(-24100, 14641),
                               Rational(605000, 3), Rational(1, 1000000)};
    for (const Rational& v : values) {
        // 30 significant digits always exceed these values' exact lengths.
        CHECK(parse_rational(format_sig(v, 30)) == v);
    }
}
