#include "bispectral/contour.hpp"

#include <cmath>
#include <numbers>

namespace bispectral {

ContourPair contour_for(const UniPoly& poly, int k1, int k2) {
    const int n = poly.degree();
    if (n < 2)
        throw std::invalid_argument(
            "unsupported degree: contour construction requires a polynomial of degree >= 2, got degree " +
            std::to_string(n));
    if (((k1 - k2) % n + n) % n == 0)
        throw std::invalid_argument(
            "degenerate contour: k1 and k2 coincide mod " + std::to_string(n) +
            ", the two rays are equal and the chained integral vanishes identically");

    // Principal n-th root of the leading coefficient (argument in (-pi/n, pi/n]).
    const std::complex<double> lead = poly.coeff(n).to_complex();
    const std::complex<double> alpha = std::pow(lead, 1.0 / n);

    auto direction = [&](int k) {
        const double ang = 2.0 * std::numbers::pi * k / n;
        std::complex<double> d = std::polar(1.0, ang) / alpha;
        return d / std::abs(d);
    };

    ContourPair cp;
    cp.incoming = {direction(k1), true};
    cp.outgoing = {direction(k2), false};
    cp.n = n;
    cp.k1 = k1;
    cp.k2 = k2;
    cp.alpha = alpha;
    return cp;
}

ContourPlan plan_for_word(const AutomorphismWord& w,
                          const std::vector<std::pair<int, int>>& overrides) {
    ContourPlan plan;
    const auto pairs = w.pairs();
    plan.pairs.reserve(2 * pairs.size());
    std::size_t idx = 0;
    for (const auto& [p, q] : pairs) {
        for (const UniPoly* poly : {&p, &q}) {
            int k1 = 1, k2 = 0;
            if (idx < overrides.size()) {
                k1 = overrides[idx].first;
                k2 = overrides[idx].second;
            }
            plan.pairs.push_back(contour_for(*poly, k1, k2));
            ++idx;
        }
    }
    return plan;
}

ConvergenceReport convergence_check(const AutomorphismWord& w) {
    const auto pairs = w.pairs();
    std::vector<int> degs;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        degs.push_back(pairs[j].first.degree());
        names.push_back("p" + std::to_string(j + 1));
        degs.push_back(pairs[j].second.degree());
        names.push_back("q" + std::to_string(j + 1));
    }

    ConvergenceReport rep;
    for (std::size_t i = 0; i < degs.size(); ++i) {
        if (degs[i] < 2) {
            rep.ok = false;
            rep.first_violation = names[i];
            rep.position = i;
            rep.reason = names[i] + " has degree " + std::to_string(degs[i]) +
                         " (< 2); exp(-" + names[i] + ") does not decay along any ray";
            return rep;
        }
    }
    for (std::size_t i = 0; i + 1 < degs.size(); ++i) {
        if (degs[i] == 2 && degs[i + 1] == 2) {
            rep.ok = false;
            rep.first_violation = "(" + names[i] + "," + names[i + 1] + ")";
            rep.position = i;
            rep.reason = names[i] + " and " + names[i + 1] +
                         " are consecutive polynomials of degree 2; the quadratic part may be "
                         "degenerate and the integral of delta type";
            return rep;
        }
    }
    return rep;
}

}  // namespace bispectral
