#include "bispectral/unipoly.hpp"

#include <cmath>
#include <stdexcept>

namespace bispectral {

namespace {
const GaussianRational kZero{};
}

UniPoly UniPoly::constant(GaussianRational c) {
    if (c.is_zero()) return {};
    return UniPoly({std::move(c)});
}

UniPoly UniPoly::monomial(int k, GaussianRational c) {
    if (k < 0) throw std::invalid_argument("UniPoly::monomial: negative power");
    if (c.is_zero()) return {};
    std::vector<GaussianRational> v(static_cast<std::size_t>(k) + 1);
    v.back() = std::move(c);
    return UniPoly(std::move(v));
}

const GaussianRational& UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<std::size_t>(k)];
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<GaussianRational> v(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        v[k - 1] = coeffs_[k] * GaussianRational(static_cast<long>(k));
    return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
    std::vector<GaussianRational> v(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] = -coeffs_[k];
    return UniPoly(std::move(v));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::scaled(const GaussianRational& c) const {
    if (c.is_zero()) return {};
    std::vector<GaussianRational> v(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] = coeffs_[k] * c;
    return UniPoly(std::move(v));
}

GaussianRational UniPoly::eval(const GaussianRational& t) const {
    GaussianRational acc;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * t + coeffs_[k];
    return acc;
}

std::complex<double> UniPoly::eval(std::complex<double> t) const {
    std::complex<double> acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * t + coeffs_[k].to_complex();
    return acc;
}

std::vector<std::complex<double>> UniPoly::complex_coeffs() const {
    std::vector<std::complex<double>> v(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] = coeffs_[k].to_complex();
    return v;
}

double UniPoly::max_coeff_magnitude() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c.to_complex()));
    return m;
}

std::string UniPoly::str(char var) const {
    if (is_zero()) return "0";

    // Each power contributes up to two summands: the real part and the
    // imaginary part, so the output stays inside the term grammar.
    struct Summand {
        mpq_class mag;
        bool negative;
        bool imaginary;
        int power;
    };
    std::vector<Summand> parts;
    for (int k = degree(); k >= 0; --k) {
        const auto& c = coeff(k);
        if (c.re() != 0) parts.push_back({abs(c.re()), c.re() < 0, false, k});
        if (c.im() != 0) parts.push_back({abs(c.im()), c.im() < 0, true, k});
    }

    std::string out;
    for (std::size_t n = 0; n < parts.size(); ++n) {
        const auto& s = parts[n];
        if (n == 0) {
            if (s.negative) out += "-";
        } else {
            out += s.negative ? " - " : " + ";
        }
        std::string mag = rational_str(s.mag);
        bool unit = (s.mag == 1);
        if (s.power == 0) {
            out += unit && s.imaginary ? "" : mag;
            if (s.imaginary) out += unit ? "i" : "*i";
        } else {
            if (!unit) out += mag + (s.imaginary ? "*i*" : "*");
            else if (s.imaginary) out += "i*";
            out += var;
            if (s.power > 1) out += "^" + std::to_string(s.power);
        }
    }
    return out;
}

}  // namespace bispectral
