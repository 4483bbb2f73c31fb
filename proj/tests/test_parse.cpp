#include <doctest.h>

#include "bispectral/parse.hpp"
#include "oracles.hpp"

using namespace bispectral;

namespace {

GaussianRational frac(long n, long d) { return GaussianRational(mpq_class(n, d)); }

}  // namespace

TEST_CASE("parse_poly examples") {
    SUBCASE("t^3/3") {
        const auto p = parse_poly("t^3/3");
        CHECK(p == UniPoly({GaussianRational(0), GaussianRational(0), GaussianRational(0), frac(1, 3)}));
    }
    SUBCASE("2t^2 - t + 1/2") {
        const auto p = parse_poly("2t^2 - t + 1/2");
        CHECK(p == UniPoly({frac(1, 2), GaussianRational(-1), GaussianRational(2)}));
    }
    SUBCASE("t^2 + i*t") {
        const auto p = parse_poly("t^2 + i*t");
        CHECK(p == UniPoly({GaussianRational(0), GaussianRational::i(), GaussianRational(1)}));
    }
    SUBCASE("variable auto-detection") {
        CHECK(parse_poly("x^3/3") == parse_poly("t^3/3"));
        CHECK(parse_poly("5 - 2/3") == UniPoly::constant(frac(13, 3)));
    }
}

TEST_CASE("parse_poly errors") {
    CHECK_THROWS_AS(parse_poly("0.5*t"), parse_error);       // non-rational literal
    CHECK_THROWS_AS(parse_poly("t^2 + * 1"), parse_error);
    CHECK_THROWS_AS(parse_poly("t^2 & 1"), parse_error);
    CHECK_THROWS_AS(parse_poly(""), parse_error);
    CHECK_THROWS_AS(parse_poly("t + s"), parse_error);        // two variable letters
    CHECK_THROWS_AS(parse_poly("t/0"), parse_error);

    try {
        parse_poly("t^2 @ 3");
    } catch (const parse_error& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("polynomial round trips") {
    std::mt19937 rng(11);
    SUBCASE("parse(print(p)) == p") {
        for (int n = 0; n < 40; ++n) {
            std::uniform_int_distribution<int> deg(0, 6);
            const auto p = oracle::random_poly(rng, deg(rng));
            CHECK(parse_poly(p.str()) == p);
        }
        // rational and complex coefficients
        const UniPoly p({frac(1, 2), frac(-2, 3), GaussianRational(mpq_class(0), mpq_class(5, 7))});
        CHECK(parse_poly(p.str()) == p);
    }
    SUBCASE("print(parse(s)) == s on canonical strings") {
        for (const char* s : {"t^3 - 2*t + 1/2", "i*t^2 + 1", "t^2 - i*t", "0", "1/3*t^3",
                              "2*t^5 + 1/2*i*t^2 - t - 2/3 - i"}) {
            CHECK(parse_poly(s).str() == s);
        }
    }
}

TEST_CASE("parse_gaussian") {
    CHECK(parse_gaussian("1/2+1/3*i") == GaussianRational(mpq_class(1, 2), mpq_class(1, 3)));
    CHECK(parse_gaussian("-i") == -GaussianRational::i());
    CHECK(parse_gaussian("7") == GaussianRational(7));
    CHECK_THROWS_AS(parse_gaussian("t"), parse_error);
}

TEST_CASE("exact arithmetic helpers") {
    SUBCASE("Gaussian division") {
        const auto a = parse_gaussian("1+2*i"), b = parse_gaussian("3-1*i");
        CHECK(a / b * b == a);
        CHECK_THROWS_AS(a / GaussianRational(0), std::domain_error);
    }
    SUBCASE("exact polynomial evaluation and derivative") {
        const auto p = parse_poly("t^3/3 - 2*t + 1");
        CHECK(p.eval(GaussianRational(3)) == GaussianRational(4));  // 9 - 6 + 1
        CHECK(p.derivative() == parse_poly("t^2 - 2"));
        CHECK(UniPoly::constant(GaussianRational(5)).derivative().is_zero());
    }
}

TEST_CASE("parse_operator") {
    const auto X = WeylElement::x(), Dx = WeylElement::d();

    CHECK(parse_operator("x") == X);
    CHECK(parse_operator("D^2") == Dx.pow(2));
    CHECK(parse_operator("x^2*D - 3") ==
          WeylElement::monomial(2, 1) - WeylElement::scalar(GaussianRational(3)));
    CHECK(parse_operator("(1/2+1/3*i) * x^1") ==
          WeylElement::monomial(1, 0, GaussianRational(mpq_class(1, 2), mpq_class(1, 3))));

    SUBCASE("terms denote normal-ordered monomials: x must precede D") {
        CHECK_THROWS_AS(parse_operator("D*x"), parse_error);
    }
    SUBCASE("round trip through the canonical printer") {
        std::mt19937 rng(12);
        for (int n = 0; n < 30; ++n) {
            const auto P = oracle::random_element(rng);
            CHECK(parse_operator(P.str()) == P);
        }
    }
}

TEST_CASE("parse_complex") {
    CHECK(parse_complex("0.5") == std::complex<double>(0.5, 0.0));
    CHECK(parse_complex("-0.3+0.7i") == std::complex<double>(-0.3, 0.7));
    CHECK(parse_complex("1e-2-3i") == std::complex<double>(0.01, -3.0));
    CHECK(parse_complex("i") == std::complex<double>(0.0, 1.0));
    CHECK(parse_complex("-i") == std::complex<double>(0.0, -1.0));
    CHECK(parse_complex(" 2 + 3i ") == std::complex<double>(2.0, 3.0));
    CHECK_THROWS_AS(parse_complex("1+2"), parse_error);
    CHECK_THROWS_AS(parse_complex("abc"), parse_error);
}
