#include "bispectral/word.hpp"

#include <stdexcept>

namespace bispectral {

AutomorphismWord::AutomorphismWord(std::vector<ElementaryFactor> factors) {
    factors_.reserve(factors.size());
    for (auto& f : factors)
        if (!f.poly.is_zero()) factors_.push_back(std::move(f));
}

AutomorphismWord AutomorphismWord::from_pairs(const std::vector<std::pair<UniPoly, UniPoly>>& pairs) {
    std::vector<ElementaryFactor> fs;
    fs.reserve(2 * pairs.size());
    for (const auto& [p, q] : pairs) {
        fs.push_back({FactorKind::AdX, p});
        fs.push_back({FactorKind::AdD, q});
    }
    return AutomorphismWord(std::move(fs));
}

std::vector<std::pair<UniPoly, UniPoly>> AutomorphismWord::pairs() const {
    std::vector<std::pair<UniPoly, UniPoly>> out;
    UniPoly p, q;
    bool have_p = false, have_q = false;
    auto flush = [&] {
        if (have_p || have_q) out.emplace_back(p, q);
        p = q = UniPoly();
        have_p = have_q = false;
    };
    for (const auto& f : factors_) {
        if (f.kind == FactorKind::AdX) {
            if (have_p || have_q) flush();
            p = f.poly;
            have_p = true;
        } else {
            if (have_q) flush();
            q = f.poly;
            have_q = true;
        }
    }
    flush();
    return out;
}

AutomorphismWord AutomorphismWord::prefix(std::size_t m) const {
    auto ps = pairs();
    if (m > ps.size()) m = ps.size();
    ps.resize(m);
    return from_pairs(ps);
}

WeylElement apply_factor(const ElementaryFactor& f, const WeylElement& P) {
    if (f.poly.is_zero()) return P;
    const UniPoly dp = f.poly.derivative();
    if (f.kind == FactorKind::AdX) {
        // exp(ad p(x)): x -> x, D -> D - p'(x)
        return P.substitute(WeylElement::x(), WeylElement::d() - WeylElement::poly_in_x(dp));
    }
    // exp(ad q(D)): x -> x + q'(D), D -> D
    return P.substitute(WeylElement::x() + WeylElement::poly_in_d(dp), WeylElement::d());
}

WeylElement apply_word(const AutomorphismWord& w, const WeylElement& P) {
    WeylElement out = P;
    const auto& fs = w.factors();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) out = apply_factor(*it, out);
    return out;
}

AutomorphismWord inverse_word(const AutomorphismWord& w) {
    std::vector<ElementaryFactor> fs;
    const auto& in = w.factors();
    fs.reserve(in.size());
    for (auto it = in.rbegin(); it != in.rend(); ++it) fs.push_back({it->kind, -it->poly});
    return AutomorphismWord(std::move(fs));
}

WeylElement b0(const WeylElement& P) {
    WeylElement out;
    for (const auto& [k, c] : P.terms()) out += WeylElement::monomial(k.d, k.x, c);
    return out;
}

WeylElement b0_inverse(const WeylElement& P) { return b0(P); }

WeylElement b_map(const AutomorphismWord& w, const WeylElement& P) {
    return b0(apply_word(w, P));
}

BispectralQuadruple bispectral_quadruple(const AutomorphismWord& w) {
    const AutomorphismWord inv = inverse_word(w);
    BispectralQuadruple quad;
    quad.L = apply_word(inv, WeylElement::d());      // b^{-1}(z)
    quad.D = apply_word(inv, WeylElement::x());      // b^{-1}(Dz)
    quad.Lambda = b_map(w, WeylElement::x());        // b(x)
    quad.Delta = b_map(w, WeylElement::d());         // b(Dx)
    return quad;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::NewBispectral: return "NewBispectral";
        case Verdict::AiryReducible: return "AiryReducible";
        case Verdict::Rank1OrTrivial: return "Rank1OrTrivial";
        case Verdict::ReducibleWord: return "ReducibleWord";
    }
    return "?";
}

Classification classify(const AutomorphismWord& w) {
    const auto pairs = w.pairs();
    const std::size_t m = pairs.size();

    auto label = [](std::size_t j, bool is_p) {
        return (is_p ? "p" : "q") + std::to_string(j + 1);
    };

    // Any degree <= 1 entry (including placeholders) makes the word reducible
    // to a shorter one by an affine change of variables.
    for (std::size_t j = 0; j < m; ++j) {
        for (bool is_p : {true, false}) {
            const UniPoly& poly = is_p ? pairs[j].first : pairs[j].second;
            if (poly.degree() <= 1) {
                std::string what = poly.is_zero() ? " is a zero placeholder"
                                                  : " has degree " + std::to_string(poly.degree());
                return {Verdict::ReducibleWord,
                        label(j, is_p) + what +
                            "; an affine change of variables removes it and shortens the word",
                        std::nullopt};
            }
        }
    }

    bool all_quadratic = true;
    for (const auto& [p, q] : pairs)
        if (p.degree() != 2 || q.degree() != 2) all_quadratic = false;

    if (all_quadratic) {
        // b(x) = a11 z + a12 Dz, b(Dx) = a21 z + a22 Dz up to constants.
        const auto quad = bispectral_quadruple(w);
        std::array<std::array<GaussianRational, 2>, 2> a;
        a[0][0] = quad.Lambda.coeff(1, 0);
        a[0][1] = quad.Lambda.coeff(0, 1);
        a[1][0] = quad.Delta.coeff(1, 0);
        a[1][1] = quad.Delta.coeff(0, 1);
        std::string detail = a[0][1].is_zero()
                                 ? "all polynomials quadratic; b maps x-polynomials to z-polynomials (no bispectral pair)"
                                 : "all polynomials quadratic; b is a linear symplectic substitution of rank 1 type";
        return {Verdict::Rank1OrTrivial, std::move(detail), a};
    }

    if (m == 1) {
        const int dp = pairs[0].first.degree(), dq = pairs[0].second.degree();
        if ((dp == 2) != (dq == 2))
            return {Verdict::AiryReducible,
                    "m = 1 with one quadratic polynomial; the pair reduces to generalized Airy operators",
                    std::nullopt};
    }

    return {Verdict::NewBispectral, "degrees >= 3 on both sides of some layer; no known reduction applies",
            std::nullopt};
}

}  // namespace bispectral
