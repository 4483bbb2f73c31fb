#include <doctest.h>

#include "bispectral/weyl.hpp"
#include "oracles.hpp"

using namespace bispectral;

namespace {

WeylElement mono(unsigned a, unsigned b, long c = 1) {
    return WeylElement::monomial(a, b, GaussianRational(c));
}

}  // namespace

TEST_CASE("multiply: defining relation and reordering") {
    const auto X = WeylElement::x(), Dx = WeylElement::d();

    CHECK(multiply(Dx, X) == mono(1, 1) + mono(0, 0));  // D x = xD + 1
    CHECK(multiply(X, Dx) == mono(1, 1));               // already normal ordered

    // D^2 x^2 = x^2 D^2 + 4 x D + 2
    const auto lhs = multiply(Dx.pow(2), X.pow(2));
    CHECK(lhs == mono(2, 2) + mono(1, 1, 4) + mono(0, 0, 2));
}

TEST_CASE("commutator examples") {
    const auto X = WeylElement::x(), Dx = WeylElement::d();
    CHECK(commutator(Dx, X) == WeylElement::one());
    CHECK(commutator(X, X.pow(2)).is_zero());
    CHECK(commutator(Dx.pow(2), X) == mono(0, 1, 2));  // 2D
}

TEST_CASE("compose_poly") {
    const auto X = WeylElement::x(), Dx = WeylElement::d();
    const auto A = X - Dx.pow(2);

    SUBCASE("square of x - D^2") {
        const auto t2 = UniPoly::monomial(2);
        // x^2 - 2xD^2 - 2D + D^4
        const auto expected = mono(2, 0) + mono(1, 2, -2) + mono(0, 1, -2) + mono(0, 4);
        CHECK(compose_poly(t2, A) == expected);

        // against the action oracle on monomials up to degree 6
        for (unsigned k = 0; k <= 6; ++k) {
            const auto via_product = compose_poly(t2, A).apply_to_monomial(k);
            const auto via_action = oracle::apply_operator(A, A.apply_to_monomial(k));
            CHECK(via_product == via_action);
        }
    }
    SUBCASE("identity and constant polynomials") {
        CHECK(compose_poly(UniPoly::monomial(1), A) == A);
        CHECK(compose_poly(UniPoly::constant(GaussianRational(1)), A) == WeylElement::one());
    }
}

TEST_CASE("apply_to_monomial") {
    const auto X = WeylElement::x(), Dx = WeylElement::d();
    CHECK(Dx.apply_to_monomial(3) == UniPoly::monomial(2, GaussianRational(3)));
    CHECK(multiply(X, Dx).apply_to_monomial(5) == UniPoly::monomial(5, GaussianRational(5)));
    CHECK(multiply(Dx.pow(2), X.pow(2)).apply_to_monomial(0) ==
          UniPoly::constant(GaussianRational(2)));
}

TEST_CASE("order_and_degree") {
    const auto X = WeylElement::x(), Dx = WeylElement::d();
    CHECK((multiply(X.pow(2), Dx.pow(3)) + Dx).order_and_degree() ==
          std::pair<unsigned, unsigned>{3, 2});
    CHECK(WeylElement::one().order_and_degree() == std::pair<unsigned, unsigned>{0, 0});
    CHECK_THROWS_AS(WeylElement::zero().order_and_degree(), std::domain_error);

    // L of the cubic word: D + (x - D^2)^2 has order 4, degree 2
    const auto L = Dx + compose_poly(UniPoly::monomial(2), X - Dx.pow(2));
    CHECK(L.order_and_degree() == std::pair<unsigned, unsigned>{4, 2});
}

TEST_CASE("randomized algebra properties") {
    std::mt19937 rng(12345);

    SUBCASE("associativity") {
        for (int n = 0; n < 30; ++n) {
            const auto P = oracle::random_element(rng), Q = oracle::random_element(rng),
                       R = oracle::random_element(rng);
            CHECK(multiply(multiply(P, Q), R) == multiply(P, multiply(Q, R)));
        }
    }
    SUBCASE("Leibniz consistency of the commutator") {
        for (int n = 0; n < 30; ++n) {
            const auto P = oracle::random_element(rng), Q = oracle::random_element(rng),
                       R = oracle::random_element(rng);
            CHECK(commutator(P, multiply(Q, R)) ==
                  multiply(commutator(P, Q), R) + multiply(Q, commutator(P, R)));
        }
    }
    SUBCASE("action oracle: (PQ).f = P.(Q.f)") {
        for (int n = 0; n < 30; ++n) {
            const auto P = oracle::random_element(rng), Q = oracle::random_element(rng);
            for (unsigned k = 0; k <= 8; k += 2) {
                CHECK(multiply(P, Q).apply_to_monomial(k) ==
                      oracle::apply_operator(P, Q.apply_to_monomial(k)));
            }
        }
    }
    SUBCASE("bilinearity") {
        for (int n = 0; n < 10; ++n) {
            const auto P = oracle::random_element(rng), Q = oracle::random_element(rng),
                       R = oracle::random_element(rng);
            CHECK(multiply(P + Q, R) == multiply(P, R) + multiply(Q, R));
            CHECK(multiply(R, P + Q) == multiply(R, P) + multiply(R, Q));
        }
    }
}

TEST_CASE("canonical form bookkeeping") {
    std::mt19937 rng(777);
    for (int n = 0; n < 20; ++n) {
        const auto P = oracle::random_element(rng);
        CHECK(P - P == WeylElement::zero());
        CHECK(P + WeylElement::zero() == P);
        for (const auto& [key, c] : P.terms()) CHECK(!c.is_zero());
    }
}

TEST_CASE("canonical rendering") {
    const auto X = WeylElement::x(), Dx = WeylElement::d();
    const auto L = Dx + compose_poly(UniPoly::monomial(2), X - Dx.pow(2));
    CHECK(L.str() == "1 * D^4 + -2 * x^1 * D^2 + -1 * D^1 + 1 * x^2");
    CHECK(WeylElement::zero().str() == "0");
    CHECK(WeylElement::scalar(GaussianRational(mpq_class(-5, 3))).str() == "-5/3");
    const auto gi = WeylElement::monomial(1, 0, GaussianRational(mpq_class(1, 2), mpq_class(1, 3)));
    CHECK(gi.str() == "(1/2+1/3*i) * x^1");
}
