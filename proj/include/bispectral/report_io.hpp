#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bispectral/verify.hpp"

namespace bispectral {

/// A CLI job: word, optional contour/grid/quadrature/probe overrides.
/// Polynomial coefficients are exact-rational strings; grid values are
/// floating complex literals.
struct JobSpec {
    AutomorphismWord word;
    std::vector<std::pair<int, int>> contours;
    std::vector<GridPoint> grid;  // empty -> default verification grid
    QuadratureSpec quadrature;
    std::vector<WeylElement> probes;
    double tolerance = 0.0;  // 0 -> default for m
    bool allow_high_m = false;
};

JobSpec load_job(const std::string& path);
JobSpec job_from_json(const nlohmann::json& j);

nlohmann::json complex_json(std::complex<double> v);
nlohmann::json classification_json(const Classification& c);
nlohmann::json operators_json(const BispectralQuadruple& q);
nlohmann::json report_json(const VerificationReport& r);
nlohmann::json symmetry_json(const SymmetryReport& r);

/// Columns: x_re,x_im,z_re,z_im,identity,residual,scale.
void write_residual_csv(const VerificationReport& r, std::ostream& os);

}  // namespace bispectral
