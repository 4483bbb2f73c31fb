#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bispectral/rational.hpp"

namespace bispectral {

/// Univariate polynomial with exact Gaussian-rational coefficients.
/// coeff(k) is the coefficient of the k-th power; the stored coefficient
/// vector never has trailing zeros, so degree() == coeffs().size() - 1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UniPoly constant(GaussianRational c);
    static UniPoly monomial(int k, GaussianRational c = GaussianRational(1));

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const GaussianRational& coeff(int k) const;
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }

    UniPoly derivative() const;

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly scaled(const GaussianRational& c) const;

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    GaussianRational eval(const GaussianRational& t) const;
    std::complex<double> eval(std::complex<double> t) const;
    std::vector<std::complex<double>> complex_coeffs() const;

    double max_coeff_magnitude() const;

    /// Canonical rendering, e.g. "t^3 - 2*t + 1/2", "i*t^2 + 1".
    std::string str(char var = 't') const;

private:
    void trim();
    std::vector<GaussianRational> coeffs_;
};

}  // namespace bispectral
