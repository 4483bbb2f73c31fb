#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "bispectral/quadrature.hpp"
#include "bispectral/word.hpp"

namespace bispectral {

using GridPoint = std::pair<std::complex<double>, std::complex<double>>;

/// {-1,-0.5,0,0.5,1}^2.
std::vector<GridPoint> default_verification_grid();

struct VerificationTask {
    AutomorphismWord word;
    std::vector<GridPoint> grid = default_verification_grid();
    QuadratureSpec quadrature;
    std::vector<WeylElement> probes;  // extra P's in (x,Dx)
    double tolerance = 0.0;           // 0 -> default for the word's m
    std::vector<std::pair<int, int>> contour_overrides;

    /// 1e-6 for m <= 1, 1e-4 for m = 2, 1e-3 beyond (quadrature budgets).
    static double default_tolerance(std::size_t m);
};

struct ResidualRow {
    std::complex<double> x, z;
    std::string identity;  // "L", "Lambda", "D", "Delta", "probe1", ...
    double residual = 0.0;
    double scale = 0.0;        // |psi| at the point
    double noise_floor = 0.0;  // numeric noise of the comparison, same normalization
    bool inconclusive = false;
};

struct VerificationReport {
    Classification classification;
    BispectralQuadruple operators;
    std::vector<ResidualRow> residuals;
    double tolerance = 0.0;
    double max_residual = 0.0;
    std::size_t inconclusive_count = 0;
    bool pass = false;
};

/// Checks, at every grid point: L psi = z psi, Lambda psi = x psi,
/// D psi = dz psi, Delta psi = dx psi, and P psi = b(P) psi for each probe.
/// Residuals are |LHS - RHS| / (|psi| + max(|LHS|, |RHS|)). A point is
/// marked inconclusive rather than failed when the truncation ladder fails
/// or when the comparison's noise floor exceeds the tolerance (operators
/// whose normal-ordered coefficients reach ~1e16 cancel across more digits
/// than a double carries, so the true residual is unknowable there).
VerificationReport verify_bispectral(const VerificationTask& task);

/// Thresholds pinned for the built-in cubic symmetry scenario.
inline constexpr double kSymmetryDefectTol = 1e-8;
inline constexpr double kAsymmetryWitnessMin = 1e-3;
inline constexpr double kRankCutoff = 1e-6;
inline constexpr double kRankGapMin = 1e3;

/// The cubic scenario: p1 = q1 = t^3/3 with contours Gamma_k (outgoing real
/// ray, incoming ray at angle 2 pi k / 3), k,l in {1,2}. psi_11 and psi_22
/// are symmetric in (x,z), psi_12 and psi_21 are not but their sum is, and
/// the symmetrized span has numerical rank 3.
struct SymmetryReport {
    double defect11 = 0.0, defect22 = 0.0, defect_sum = 0.0;  // max over grid
    double defect12 = 0.0;                                    // asymmetry of psi_12 (info)
    double transpose_defect = 0.0;  // psi_kl(x,z) vs psi_lk(z,x), max over grid/pairs
    double witness = 0.0;  // normalized |psi_12(0.7,-0.3) - psi_12(-0.3,0.7)|
    std::array<double, 4> singular_values{};
    int numerical_rank = 0;
    double sv_gap = 0.0;  // sigma3 / sigma4
    bool pass = false;
};
SymmetryReport symmetry_report(const QuadratureSpec& spec,
                               const std::vector<GridPoint>& grid);
SymmetryReport symmetry_report();  // defaults

/// Max normalized deviation between moment-inserted first derivatives and
/// Richardson-extrapolated central differences over the grid.
struct DerivativeCheck {
    double max_dev_x = 0.0;
    double max_dev_z = 0.0;
};
DerivativeCheck cross_check_derivatives(const IntegralRep& rep, const std::vector<GridPoint>& grid,
                                        const QuadratureSpec& spec);

}  // namespace bispectral
