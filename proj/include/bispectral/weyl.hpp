#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "bispectral/rational.hpp"
#include "bispectral/unipoly.hpp"

namespace bispectral {

/// Exponent pair of a normal-ordered term x^a D^b (D = d/dx).
struct ExponentPair {
    unsigned x = 0;
    unsigned d = 0;
    friend auto operator<=>(const ExponentPair&, const ExponentPair&) = default;
};

/// Element of the Weyl algebra C<x,D>/(Dx - xD - 1), kept in canonical
/// normal-ordered form: a sparse map (x-power, D-power) -> coefficient
/// with no zero coefficients stored. Equality of elements is equality of
/// term maps. Values are immutable in spirit: every operation returns a
/// fresh element and instances are safe to share across threads.
class WeylElement {
public:
    using TermMap = std::map<ExponentPair, GaussianRational>;

    WeylElement() = default;

    static WeylElement zero() { return {}; }
    static WeylElement one() { return monomial(0, 0); }
    static WeylElement x() { return monomial(1, 0); }
    static WeylElement d() { return monomial(0, 1); }
    static WeylElement monomial(unsigned a, unsigned b, GaussianRational c = GaussianRational(1));
    static WeylElement scalar(GaussianRational c) { return monomial(0, 0, std::move(c)); }
    /// p(x) as a multiplication operator.
    static WeylElement poly_in_x(const UniPoly& p);
    /// q(D) as a constant-coefficient operator.
    static WeylElement poly_in_d(const UniPoly& q);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    GaussianRational coeff(unsigned a, unsigned b) const;

    WeylElement operator-() const;
    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    WeylElement scaled(const GaussianRational& c) const;
    WeylElement pow(unsigned k) const;

    friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.terms_ == b.terms_; }

    /// max D-exponent and max x-exponent over the stored terms.
    /// Throws std::domain_error on the zero element ("undefined order").
    std::pair<unsigned, unsigned> order_and_degree() const;

    /// P(x,D) . x^k as a polynomial in x.
    UniPoly apply_to_monomial(unsigned k) const;

    /// Image under the algebra homomorphism x -> x_image, D -> d_image,
    /// computed termwise as x_image^a * d_image^b.
    WeylElement substitute(const WeylElement& x_image, const WeylElement& d_image) const;

    /// Canonical text: terms sorted by (D-exponent desc, x-exponent desc),
    /// each rendered "coef * x^a * D^b" with zero-exponent factors dropped,
    /// joined by " + ".
    std::string str(const std::string& var = "x", const std::string& dvar = "D") const;

    /// Terms with coefficients converted to complex doubles (numeric layer).
    std::map<std::pair<unsigned, unsigned>, std::complex<double>> complex_terms() const;

private:
    void add_term(unsigned a, unsigned b, const GaussianRational& c);
    TermMap terms_;

    friend WeylElement multiply(const WeylElement&, const WeylElement&);
};

/// Normal-ordered product, via D^b x^c = sum_k C(b,k) C(c,k) k! x^{c-k} D^{b-k}.
WeylElement multiply(const WeylElement& P, const WeylElement& Q);
inline WeylElement operator*(const WeylElement& a, const WeylElement& b) { return multiply(a, b); }

/// PQ - QP.
WeylElement commutator(const WeylElement& P, const WeylElement& Q);

/// p evaluated at the operator A: sum p_k A^k (Horner form).
WeylElement compose_poly(const UniPoly& p, const WeylElement& A);

}  // namespace bispectral
