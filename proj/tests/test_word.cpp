#include <doctest.h>

#include "bispectral/word.hpp"
#include "oracles.hpp"

using namespace bispectral;

namespace {

WeylElement mono(unsigned a, unsigned b, long c = 1) {
    return WeylElement::monomial(a, b, GaussianRational(c));
}

UniPoly cubic_third() { return UniPoly::monomial(3, GaussianRational(mpq_class(1, 3))); }

}  // namespace

TEST_CASE("apply_factor against the ad-series oracle") {
    std::mt19937 rng(42);
    for (int n = 0; n < 15; ++n) {
        const auto p = oracle::random_poly(rng, 3);
        const auto P = oracle::random_element(rng, 3, 3, 3);

        const ElementaryFactor fx{FactorKind::AdX, p};
        CHECK(apply_factor(fx, P) == oracle::ad_series(WeylElement::poly_in_x(p), P));

        const ElementaryFactor fd{FactorKind::AdD, p};
        CHECK(apply_factor(fd, P) == oracle::ad_series(WeylElement::poly_in_d(p), P));
    }
}

TEST_CASE("apply_factor closed forms") {
    std::mt19937 rng(43);
    const auto p = oracle::random_poly(rng, 4);
    const auto dp = p.derivative();

    // AdX(p): D -> D - p'(x)
    CHECK(apply_factor({FactorKind::AdX, p}, WeylElement::d()) ==
          WeylElement::d() - WeylElement::poly_in_x(dp));
    // AdD(q): x -> x + q'(D)
    CHECK(apply_factor({FactorKind::AdD, p}, WeylElement::x()) ==
          WeylElement::x() + WeylElement::poly_in_d(dp));
    // scalars are fixed
    CHECK(apply_factor({FactorKind::AdX, p}, WeylElement::one()) == WeylElement::one());
}

TEST_CASE("apply_word") {
    std::mt19937 rng(44);

    SUBCASE("empty word is the identity") {
        const auto P = oracle::random_element(rng);
        CHECK(apply_word(AutomorphismWord{}, P) == P);
    }
    SUBCASE("leftmost factor applied outermost") {
        const auto p = oracle::random_poly(rng, 3), q = oracle::random_poly(rng, 3);
        const auto w = AutomorphismWord::from_pairs({{p, q}});
        // sigma(x) = x + q'(D - p'(x))
        const auto expected = WeylElement::x() +
                              compose_poly(q.derivative(),
                                           WeylElement::d() - WeylElement::poly_in_x(p.derivative()));
        CHECK(apply_word(w, WeylElement::x()) == expected);
    }
    SUBCASE("the defining relation is preserved") {
        for (int n = 0; n < 8; ++n) {
            const auto w = oracle::random_admissible_word(rng);
            const auto sx = apply_word(w, WeylElement::x());
            const auto sd = apply_word(w, WeylElement::d());
            CHECK(commutator(sd, sx) == WeylElement::one());
        }
    }
}

TEST_CASE("inverse_word") {
    std::mt19937 rng(45);

    CHECK(inverse_word(AutomorphismWord{}).factors().empty());

    SUBCASE("reversed and negated") {
        const auto p = oracle::random_poly(rng, 3), q = oracle::random_poly(rng, 4);
        const auto inv = inverse_word(AutomorphismWord::from_pairs({{p, q}}));
        REQUIRE(inv.factors().size() == 2);
        CHECK(inv.factors()[0].kind == FactorKind::AdD);
        CHECK(inv.factors()[0].poly == -q);
        CHECK(inv.factors()[1].kind == FactorKind::AdX);
        CHECK(inv.factors()[1].poly == -p);
    }
    SUBCASE("round trip on x^2 D") {
        const auto P = mono(2, 1);
        for (int n = 0; n < 6; ++n) {
            const auto w = oracle::random_admissible_word(rng);
            CHECK(apply_word(inverse_word(w), apply_word(w, P)) == P);
        }
    }
}

TEST_CASE("b0") {
    CHECK(b0(WeylElement::x()) == mono(0, 1));  // x -> Dz
    CHECK(b0(WeylElement::d()) == mono(1, 0));  // Dx -> z
    CHECK(b0(mono(1, 1)) == mono(1, 1));        // xD -> z Dz
    CHECK(b0(WeylElement::one()) == WeylElement::one());

    std::mt19937 rng(46);
    SUBCASE("anti-homomorphism") {
        for (int n = 0; n < 25; ++n) {
            const auto P = oracle::random_element(rng), Q = oracle::random_element(rng);
            CHECK(b0(multiply(P, Q)) == multiply(b0(Q), b0(P)));
        }
    }
    SUBCASE("involution") {
        for (int n = 0; n < 10; ++n) {
            const auto P = oracle::random_element(rng);
            CHECK(b0_inverse(b0(P)) == P);
        }
    }
}

TEST_CASE("bispectral_quadruple") {
    SUBCASE("empty word") {
        const auto quad = bispectral_quadruple(AutomorphismWord{});
        CHECK(quad.L == WeylElement::d());
        CHECK(quad.Lambda == mono(0, 1));
        CHECK(quad.D == WeylElement::x());
        CHECK(quad.Delta == mono(1, 0));
    }
    SUBCASE("m = 1 closed forms") {
        std::mt19937 rng(47);
        for (int n = 0; n < 10; ++n) {
            std::uniform_int_distribution<int> deg(2, 6);
            const auto p = oracle::random_poly(rng, deg(rng)), q = oracle::random_poly(rng, deg(rng));
            const auto quad = bispectral_quadruple(AutomorphismWord::from_pairs({{p, q}}));

            // L = Dx + p'(x - q'(Dx)), Lambda = Dz + q'(z - p'(Dz))
            const auto arg_l = WeylElement::x() - WeylElement::poly_in_d(q.derivative());
            CHECK(quad.L == WeylElement::d() + compose_poly(p.derivative(), arg_l));
            const auto arg_lam = WeylElement::x() - WeylElement::poly_in_d(p.derivative());
            CHECK(quad.Lambda == WeylElement::d() + compose_poly(q.derivative(), arg_lam));
        }
    }
    SUBCASE("cubic word of the built-in scenario") {
        const auto w = AutomorphismWord::from_pairs({{cubic_third(), cubic_third()}});
        const auto quad = bispectral_quadruple(w);
        const auto X = WeylElement::x(), Dx = WeylElement::d();
        CHECK(quad.L == Dx + compose_poly(UniPoly::monomial(2), X - Dx.pow(2)));
        CHECK(quad.Lambda == Dx + compose_poly(UniPoly::monomial(2), X - Dx.pow(2)));
        CHECK(quad.D == X - Dx.pow(2));
        CHECK(quad.Delta == X - Dx.pow(2));
    }
    SUBCASE("canonical pairs") {
        std::mt19937 rng(48);
        for (int n = 0; n < 6; ++n) {
            const auto quad = bispectral_quadruple(oracle::random_admissible_word(rng));
            CHECK(commutator(quad.L, quad.D) == WeylElement::one());
            CHECK(commutator(quad.Lambda, quad.Delta) == WeylElement::one());
        }
    }
}

TEST_CASE("recursion identities across prefixes") {
    std::mt19937 rng(49);
    for (int n = 0; n < 5; ++n) {
        const auto w = oracle::random_admissible_word(rng);
        const auto pairs = w.pairs();
        auto prev = bispectral_quadruple(w.prefix(0));
        for (std::size_t m = 1; m <= pairs.size(); ++m) {
            const auto cur = bispectral_quadruple(w.prefix(m));
            const auto& [pm, qm] = pairs[m - 1];
            // Delta_m = Delta_{m-1} - p_m'(Lambda_{m-1})
            CHECK(cur.Delta == prev.Delta - compose_poly(pm.derivative(), prev.Lambda));
            // Lambda_m = q_m'(Delta_m) + Lambda_{m-1}
            CHECK(cur.Lambda == compose_poly(qm.derivative(), cur.Delta) + prev.Lambda);
            // L_m = sigma_m^{-1}(L_{m-1})
            const auto sigma_m_inv = inverse_word(AutomorphismWord::from_pairs({pairs[m - 1]}));
            CHECK(cur.L == apply_word(sigma_m_inv, prev.L));
            prev = cur;
        }
    }
}

TEST_CASE("classify") {
    std::mt19937 rng(50);

    SUBCASE("all quadratic -> Rank1OrTrivial with unimodular matrix") {
        for (int n = 0; n < 8; ++n) {
            std::vector<std::pair<UniPoly, UniPoly>> ps;
            for (int j = 0; j < 2; ++j)
                ps.emplace_back(oracle::random_poly(rng, 2), oracle::random_poly(rng, 2));
            const auto cls = classify(AutomorphismWord::from_pairs(ps));
            CHECK(cls.verdict == Verdict::Rank1OrTrivial);
            REQUIRE(cls.matrix.has_value());
            const auto& a = *cls.matrix;
            // Anti-automorphisms reverse the symplectic pairing: [Lambda,
            // Delta] = 1 pins det a = -1, in particular non-degenerate.
            const auto det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            CHECK(det == GaussianRational(-1));
        }
    }
    SUBCASE("m = 1, deg p = 2, deg q = 4 -> AiryReducible") {
        const auto cls = classify(AutomorphismWord::from_pairs(
            {{oracle::random_poly(rng, 2), oracle::random_poly(rng, 4)}}));
        CHECK(cls.verdict == Verdict::AiryReducible);
    }
    SUBCASE("m = 1, deg p = deg q = 3 -> NewBispectral") {
        const auto cls = classify(AutomorphismWord::from_pairs(
            {{oracle::random_poly(rng, 3), oracle::random_poly(rng, 3)}}));
        CHECK(cls.verdict == Verdict::NewBispectral);
    }
    SUBCASE("degree <= 1 -> ReducibleWord naming the factor") {
        const auto cls = classify(AutomorphismWord::from_pairs(
            {{oracle::random_poly(rng, 3), oracle::random_poly(rng, 1)}}));
        CHECK(cls.verdict == Verdict::ReducibleWord);
        CHECK(cls.detail.find("q1") != std::string::npos);
    }
    SUBCASE("word starting with an AdD factor gets a placeholder p1") {
        const AutomorphismWord w({{FactorKind::AdD, oracle::random_poly(rng, 3)}});
        const auto ps = w.pairs();
        REQUIRE(ps.size() == 1);
        CHECK(ps[0].first.is_zero());
        CHECK(classify(w).verdict == Verdict::ReducibleWord);
    }
}
