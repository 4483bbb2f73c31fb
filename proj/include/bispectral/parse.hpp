#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bispectral/unipoly.hpp"
#include "bispectral/weyl.hpp"

namespace bispectral {

struct parse_error : std::runtime_error {
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

/// Polynomial in one variable with exact Gaussian-rational coefficients.
/// Grammar: a signed sum of terms; each term multiplies integer literals,
/// "i", and var or var^k (the "*" is optional), and may divide by trailing
/// integer literals, e.g. "t^3/3", "2t^2 - t + 1/2", "t^2 + i*t".
/// Decimal literals are rejected. var = 0 auto-detects the variable letter
/// (the first letter other than "i").
UniPoly parse_poly(std::string_view s, char var = 0);

/// Exact Gaussian-rational literal: "a/b", "a/b+c/d*i", "i", "-2/3*i", ...
GaussianRational parse_gaussian(std::string_view s);

/// Operator in normal-ordered term form: a signed sum of "c * x^a * D^b"
/// monomials (each term denotes the normal-ordered monomial; the x factor
/// must precede the D factor). Complex coefficients may be parenthesized,
/// e.g. "(1/2+1/3*i) * x^2". Round-trips WeylElement::str().
WeylElement parse_operator(std::string_view s);

/// Floating complex literal "a+bi": "0.5", "-0.3+0.7i", "1e-2-3i", "i".
std::complex<double> parse_complex(std::string_view s);

}  // namespace bispectral
