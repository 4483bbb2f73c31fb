#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bispectral/unipoly.hpp"
#include "bispectral/word.hpp"

namespace bispectral {

/// A ray from infinity to 0 (incoming) or 0 to infinity (outgoing) with a
/// unit-modulus direction.
struct Ray {
    std::complex<double> direction;
    bool incoming = false;
};

/// The integration contour for one variable: incoming ray, then outgoing
/// ray, chained through 0. Directions are alpha^{-1} * (n-th roots of unity)
/// normalized to unit modulus, with alpha the principal n-th root of the
/// governing polynomial's leading coefficient. Along either ray the leading
/// term of the polynomial has positive real part, so exp(-poly) decays.
struct ContourPair {
    Ray incoming;
    Ray outgoing;
    int n = 0;       // degree of the governing polynomial
    int k1 = 0, k2 = 0;
    std::complex<double> alpha{1.0, 0.0};
};

/// Builds the two-ray contour for a polynomial of degree >= 2. The incoming
/// ray uses the root-of-unity index k1, the outgoing ray k2.
/// Throws std::invalid_argument when deg < 2 ("unsupported degree") or when
/// k1 == k2 mod n ("degenerate contour": the rays coincide and the chained
/// integral vanishes identically).
ContourPair contour_for(const UniPoly& poly, int k1 = 1, int k2 = 0);

/// One ContourPair per integration variable u1,v1,...,um,vm.
struct ContourPlan {
    std::vector<ContourPair> pairs;
};

/// Plan for a word's polynomial layers; overrides[i] = (k1,k2) for variable i
/// (u1,v1,... order). Missing entries default to (1,0).
ContourPlan plan_for_word(const AutomorphismWord& w,
                          const std::vector<std::pair<int, int>>& overrides = {});

/// Convergence screen: every polynomial in the sequence p1,q1,...,pm,qm must
/// have degree >= 2 and no two consecutive entries may both have degree 2.
/// Violations are data, not exceptions.
struct ConvergenceReport {
    bool ok = true;
    std::string first_violation;    // e.g. "p1" or "(p1,q1)"
    std::size_t position = 0;       // index into the flat sequence p1,q1,...
    std::string reason;
};
ConvergenceReport convergence_check(const AutomorphismWord& w);

/// Thrown when a divergent configuration reaches the numeric layer.
struct convergence_error : std::runtime_error {
    explicit convergence_error(ConvergenceReport r)
        : std::runtime_error("divergent configuration: " + r.reason), report(std::move(r)) {}
    ConvergenceReport report;
};

}  // namespace bispectral
