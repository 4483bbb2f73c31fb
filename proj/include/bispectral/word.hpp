#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bispectral/weyl.hpp"

namespace bispectral {

/// One generator of the automorphism group: exp(ad p(x)) or exp(ad q(D)).
enum class FactorKind { AdX, AdD };

struct ElementaryFactor {
    FactorKind kind;
    UniPoly poly;
};

/// A word sigma = exp(ad p1(x)) exp(ad q1(D)) ... exp(ad pm(x)) exp(ad qm(D)).
/// Factors are stored left to right as written; zero-polynomial factors act
/// as placeholders (the identity) and are dropped on construction, so a word
/// starting with an AdD factor is encoded by a leading zero AdX placeholder.
class AutomorphismWord {
public:
    AutomorphismWord() = default;
    explicit AutomorphismWord(std::vector<ElementaryFactor> factors);

    /// Build from pairs (p_j, q_j); zero polynomials allowed as placeholders.
    static AutomorphismWord from_pairs(const std::vector<std::pair<UniPoly, UniPoly>>& pairs);

    const std::vector<ElementaryFactor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    /// The alternating-pair view (p_1,q_1),...,(p_m,q_m), reconstructing zero
    /// placeholders where the stored sequence deviates from strict alternation.
    std::vector<std::pair<UniPoly, UniPoly>> pairs() const;
    std::size_t pair_count() const { return pairs().size(); }

    /// Word consisting of the first m pairs.
    AutomorphismWord prefix(std::size_t m) const;

private:
    std::vector<ElementaryFactor> factors_;
};

/// sigma_f(P) for a single generator: AdX(p) maps x -> x, D -> D - p'(x);
/// AdD(q) maps x -> x + q'(D), D -> D.
WeylElement apply_factor(const ElementaryFactor& f, const WeylElement& P);

/// sigma(P) with the leftmost factor applied outermost.
WeylElement apply_word(const AutomorphismWord& w, const WeylElement& P);

/// Reversed factor sequence with negated polynomials; the group inverse.
AutomorphismWord inverse_word(const AutomorphismWord& w);

/// The base anti-isomorphism b0: x -> Dz, D -> z; on normal-ordered
/// monomials b0(x^a D^b) = z^b Dz^a, extended linearly.
WeylElement b0(const WeylElement& P);
/// Inverse map z^b Dz^a -> x^a D^b (the same exponent swap).
WeylElement b0_inverse(const WeylElement& P);

/// b(P) = b0(sigma(P)) for the anti-isomorphism attached to the word.
WeylElement b_map(const AutomorphismWord& w, const WeylElement& P);

/// The four operators L = b^{-1}(z), Lambda = b(x), D = b^{-1}(Dz),
/// Delta = b(Dx). L, D live in (x,Dx); Lambda, Delta in (z,Dz).
/// They satisfy [L,D] = 1 and [Lambda,Delta] = 1 exactly.
struct BispectralQuadruple {
    WeylElement L, Lambda, D, Delta;
};
BispectralQuadruple bispectral_quadruple(const AutomorphismWord& w);

enum class Verdict { NewBispectral, AiryReducible, Rank1OrTrivial, ReducibleWord };
const char* to_string(Verdict v);

/// Degree-based triviality classification of a word. Advisory only: callers
/// may proceed with any verdict.
///  - ReducibleWord: some polynomial has degree <= 1 (an affine change of
///    variables removes it, shrinking the word).
///  - Rank1OrTrivial: all degrees equal 2; b acts by the linear substitution
///    b(x) = a11 z + a12 Dz, b(Dx) = a21 z + a22 Dz (+ constants) and the
///    non-degenerate matrix a_ij is reported.
///  - AiryReducible: m = 1 with exactly one quadratic polynomial, the other
///    of degree >= 3.
///  - NewBispectral: everything else.
struct Classification {
    Verdict verdict;
    std::string detail;
    std::optional<std::array<std::array<GaussianRational, 2>, 2>> matrix;
};
Classification classify(const AutomorphismWord& w);

}  // namespace bispectral
