#include "bispectral/weyl.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace bispectral {

WeylElement WeylElement::monomial(unsigned a, unsigned b, GaussianRational c) {
    WeylElement e;
    if (!c.is_zero()) e.terms_[{a, b}] = std::move(c);
    return e;
}

WeylElement WeylElement::poly_in_x(const UniPoly& p) {
    WeylElement e;
    for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) e.terms_[{static_cast<unsigned>(k), 0}] = p.coeff(k);
    return e;
}

WeylElement WeylElement::poly_in_d(const UniPoly& q) {
    WeylElement e;
    for (int k = 0; k <= q.degree(); ++k)
        if (!q.coeff(k).is_zero()) e.terms_[{0, static_cast<unsigned>(k)}] = q.coeff(k);
    return e;
}

GaussianRational WeylElement::coeff(unsigned a, unsigned b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? GaussianRational() : it->second;
}

void WeylElement::add_term(unsigned a, unsigned b, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({a, b}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylElement WeylElement::operator-() const {
    WeylElement e;
    for (const auto& [k, c] : terms_) e.terms_[k] = -c;
    return e;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.x, k.d, c);
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.x, k.d, -c);
    return *this;
}

WeylElement WeylElement::scaled(const GaussianRational& c) const {
    WeylElement e;
    if (c.is_zero()) return e;
    for (const auto& [k, t] : terms_) e.terms_[k] = t * c;
    return e;
}

WeylElement multiply(const WeylElement& P, const WeylElement& Q) {
    WeylElement out;
    if (P.is_zero() || Q.is_zero()) return out;
    for (const auto& [kp, cp] : P.terms_) {
        for (const auto& [kq, cq] : Q.terms_) {
            GaussianRational c = cp * cq;
            // D^b x^c = sum_k C(b,k) C(c,k) k! x^{c-k} D^{b-k}
            const unsigned b1 = kp.d, a2 = kq.x;
            const unsigned kmax = std::min(b1, a2);
            mpz_class f(1);
            for (unsigned k = 0; k <= kmax; ++k) {
                if (k > 0) {
                    f *= b1 - (k - 1);
                    f *= a2 - (k - 1);
                    mpz_divexact_ui(f.get_mpz_t(), f.get_mpz_t(), k);
                }
                out.add_term(kp.x + a2 - k, b1 + kq.d - k, c * GaussianRational(mpq_class(f)));
            }
        }
    }
    return out;
}

WeylElement WeylElement::pow(unsigned k) const {
    WeylElement acc = one();
    for (unsigned i = 0; i < k; ++i) acc = multiply(acc, *this);
    return acc;
}

WeylElement commutator(const WeylElement& P, const WeylElement& Q) {
    return multiply(P, Q) - multiply(Q, P);
}

WeylElement compose_poly(const UniPoly& p, const WeylElement& A) {
    WeylElement acc;
    for (int k = p.degree(); k >= 0; --k) {
        acc = multiply(acc, A);
        acc += WeylElement::scalar(p.coeff(k));
    }
    return acc;
}

std::pair<unsigned, unsigned> WeylElement::order_and_degree() const {
    if (terms_.empty()) throw std::domain_error("order_and_degree: undefined order of the zero element");
    unsigned order = 0, degree = 0;
    for (const auto& [k, c] : terms_) {
        order = std::max(order, k.d);
        degree = std::max(degree, k.x);
    }
    return {order, degree};
}

UniPoly WeylElement::apply_to_monomial(unsigned k) const {
    // x^a D^b . x^k = k(k-1)...(k-b+1) x^{k-b+a}
    UniPoly out;
    for (const auto& [key, c] : terms_) {
        if (key.d > k) continue;
        mpz_class fall(1);
        for (unsigned j = 0; j < key.d; ++j) fall *= k - j;
        out += UniPoly::monomial(static_cast<int>(k - key.d + key.x),
                                 c * GaussianRational(mpq_class(fall)));
    }
    return out;
}

WeylElement WeylElement::substitute(const WeylElement& x_image, const WeylElement& d_image) const {
    // Group terms by x-exponent; walk x-powers incrementally and cache the
    // d_image powers, so each needed power is formed exactly once.
    if (terms_.empty()) return {};
    unsigned max_d = 0;
    for (const auto& [k, c] : terms_) max_d = std::max(max_d, k.d);
    std::vector<WeylElement> dpow;
    dpow.reserve(max_d + 1);
    dpow.push_back(one());
    for (unsigned b = 1; b <= max_d; ++b) dpow.push_back(multiply(dpow.back(), d_image));

    WeylElement out;
    WeylElement xpow = one();
    unsigned cur_a = 0;
    auto it = terms_.begin();  // map order: ascending x-exponent
    while (it != terms_.end()) {
        const unsigned a = it->first.x;
        while (cur_a < a) {
            xpow = multiply(xpow, x_image);
            ++cur_a;
        }
        WeylElement inner;
        while (it != terms_.end() && it->first.x == a) {
            inner += dpow[it->first.d].scaled(it->second);
            ++it;
        }
        out += multiply(xpow, inner);
    }
    return out;
}

std::string WeylElement::str(const std::string& var, const std::string& dvar) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<ExponentPair, GaussianRational>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.first.d != b.first.d) return a.first.d > b.first.d;
        return a.first.x > b.first.x;
    });
    std::string out;
    for (std::size_t n = 0; n < sorted.size(); ++n) {
        const auto& [k, c] = sorted[n];
        if (n > 0) out += " + ";
        std::string cs = c.str();
        if (!c.is_real()) cs = "(" + cs + ")";
        out += cs;
        if (k.x > 0) out += " * " + var + "^" + std::to_string(k.x);
        if (k.d > 0) out += " * " + dvar + "^" + std::to_string(k.d);
    }
    return out;
}

std::map<std::pair<unsigned, unsigned>, std::complex<double>> WeylElement::complex_terms() const {
    std::map<std::pair<unsigned, unsigned>, std::complex<double>> out;
    for (const auto& [k, c] : terms_) out[{k.x, k.d}] = c.to_complex();
    return out;
}

}  // namespace bispectral
