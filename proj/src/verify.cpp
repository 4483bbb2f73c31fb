#include "bispectral/verify.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace bispectral {

std::vector<GridPoint> default_verification_grid() {
    static const double vals[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    std::vector<GridPoint> grid;
    for (double xr : vals)
        for (double zr : vals) grid.emplace_back(std::complex<double>(xr, 0.0), std::complex<double>(zr, 0.0));
    return grid;
}

double VerificationTask::default_tolerance(std::size_t m) {
    if (m <= 1) return 1e-6;
    if (m == 2) return 1e-4;
    return 1e-3;
}

namespace {

double residual_of(std::complex<double> lhs, std::complex<double> rhs, double psi_scale) {
    return std::abs(lhs - rhs) / (psi_scale + std::max(std::abs(lhs), std::abs(rhs)));
}

// Noise floor of the comparison, same normalization as the residual. When it
// exceeds the tolerance the identity cannot be certified at this precision
// (operator coefficients can cancel across more digits than a double has)
// and the point is inconclusive rather than failed.
double noise_floor_of(const EvalResult& lhs, const EvalResult& rhs, double psi_scale) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double lhs_noise = std::abs(lhs.value) * std::max(lhs.est_error, eps);
    const double rhs_noise = std::abs(rhs.value) * std::max(rhs.est_error, eps);
    return (lhs_noise + rhs_noise) /
           (psi_scale + std::max(std::abs(lhs.value), std::abs(rhs.value)));
}

}  // namespace

VerificationReport verify_bispectral(const VerificationTask& task) {
    if (task.grid.empty()) throw std::invalid_argument("verification grid must be nonempty");

    VerificationReport report;
    report.classification = classify(task.word);
    report.operators = bispectral_quadruple(task.word);

    const std::size_t m = task.word.pair_count();
    report.tolerance = task.tolerance > 0 ? task.tolerance : VerificationTask::default_tolerance(m);

    QuadratureSpec spec = task.quadrature;
    IntegralRep rep = integral_rep(task.word, task.contour_overrides);
    PsiEvaluator ev(rep, spec);

    std::vector<WeylElement> probe_images;
    probe_images.reserve(task.probes.size());
    for (const auto& P : task.probes) probe_images.push_back(b_map(task.word, P));

    bool pass = true;
    for (const auto& [x, z] : task.grid) {
        struct Check {
            std::string name;
            std::function<EvalResult()> lhs;
            std::function<EvalResult()> rhs;
        };

        EvalResult psi;
        bool psi_ok = true;
        try {
            psi = ev.eval(x, z, rep.moment);
        } catch (const truncation_error&) {
            psi_ok = false;
        }
        const double scale = psi_ok ? std::abs(psi.value) : 0.0;

        auto scaled_psi = [&](std::complex<double> c) {
            return EvalResult{c * psi.value, psi.est_error};
        };

        std::vector<Check> checks;
        checks.push_back({"L", [&] { return ev.apply_x(report.operators.L, x, z); },
                          [&] { return scaled_psi(z); }});
        checks.push_back({"Lambda", [&] { return ev.apply_z(report.operators.Lambda, x, z); },
                          [&] { return scaled_psi(x); }});
        checks.push_back({"D", [&] { return ev.apply_x(report.operators.D, x, z); },
                          [&] { return ev.eval(x, z, Moment{rep.moment.j + 1, rep.moment.k}); }});
        checks.push_back({"Delta", [&] { return ev.apply_z(report.operators.Delta, x, z); },
                          [&] { return ev.eval(x, z, Moment{rep.moment.j, rep.moment.k + 1}); }});
        for (std::size_t i = 0; i < task.probes.size(); ++i) {
            checks.push_back({"probe" + std::to_string(i + 1),
                              [&, i] { return ev.apply_x(task.probes[i], x, z); },
                              [&, i] { return ev.apply_z(probe_images[i], x, z); }});
        }

        for (auto& check : checks) {
            ResidualRow row;
            row.x = x;
            row.z = z;
            row.identity = check.name;
            row.scale = scale;
            if (!psi_ok) {
                row.inconclusive = true;
            } else {
                try {
                    const EvalResult lhs = check.lhs();
                    const EvalResult rhs = check.rhs();
                    row.residual = residual_of(lhs.value, rhs.value, scale);
                    row.noise_floor = noise_floor_of(lhs, rhs, scale);
                    if (row.residual > report.tolerance && row.noise_floor > report.tolerance)
                        row.inconclusive = true;  // cannot certify at this precision
                } catch (const truncation_error&) {
                    row.inconclusive = true;
                }
            }
            if (row.inconclusive) {
                ++report.inconclusive_count;
            } else {
                report.max_residual = std::max(report.max_residual, row.residual);
                if (row.residual > report.tolerance) pass = false;
            }
            report.residuals.push_back(std::move(row));
        }
    }
    report.pass = pass;
    return report;
}

namespace {

/// Fixed generic sample for the rank probe; no point lies on the diagonal
/// x = z, where symmetrization is trivial.
const std::vector<GridPoint>& rank_sample_grid() {
    static const std::vector<GridPoint> pts = [] {
        const double data[12][2] = {{0.3, -0.2},  {0.7, -0.3}, {-0.5, 0.4}, {0.9, 0.6},
                                    {-0.8, -0.4}, {0.2, 0.8},  {-0.3, 0.7}, {0.6, 0.1},
                                    {-0.6, -0.9}, {0.4, -0.7}, {-0.2, -0.5}, {0.8, -0.6}};
        std::vector<GridPoint> g;
        for (const auto& d : data)
            g.emplace_back(std::complex<double>(d[0], 0.0), std::complex<double>(d[1], 0.0));
        return g;
    }();
    return pts;
}

}  // namespace

SymmetryReport symmetry_report(const QuadratureSpec& spec, const std::vector<GridPoint>& grid) {
    const GaussianRational third(mpq_class(1, 3));
    const UniPoly cubic = UniPoly::monomial(3, third);

    // Evaluators for psi_kl, k = contour index of u, l = of v.
    // Gamma_k: incoming ray at angle 2 pi k / 3, outgoing along R_+.
    auto make_eval = [&](int k, int l) {
        IntegralRep rep;
        rep.m = 1;
        rep.p = {cubic};
        rep.q = {cubic};
        rep.plan.pairs = {contour_for(cubic, k, 0), contour_for(cubic, l, 0)};
        return PsiEvaluator(std::move(rep), spec);
    };
    PsiEvaluator ev11 = make_eval(1, 1), ev12 = make_eval(1, 2), ev21 = make_eval(2, 1),
                 ev22 = make_eval(2, 2);

    SymmetryReport rep;
    auto norm_defect = [](std::complex<double> a, std::complex<double> b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    };

    for (const auto& [x, z] : grid) {
        const auto a11 = ev11.eval(x, z).value, b11 = ev11.eval(z, x).value;
        const auto a12 = ev12.eval(x, z).value, b12 = ev12.eval(z, x).value;
        const auto a21 = ev21.eval(x, z).value, b21 = ev21.eval(z, x).value;
        const auto a22 = ev22.eval(x, z).value, b22 = ev22.eval(z, x).value;

        rep.defect11 = std::max(rep.defect11, norm_defect(a11, b11));
        rep.defect22 = std::max(rep.defect22, norm_defect(a22, b22));
        rep.defect12 = std::max(rep.defect12, norm_defect(a12, b12));
        rep.defect_sum = std::max(rep.defect_sum, norm_defect(a12 + a21, b12 + b21));
        rep.transpose_defect = std::max({rep.transpose_defect, norm_defect(a12, b21),
                                         norm_defect(a21, b12), norm_defect(a11, b11),
                                         norm_defect(a22, b22)});
    }

    const std::complex<double> wx(0.7, 0.0), wz(-0.3, 0.0);
    rep.witness = norm_defect(ev12.eval(wx, wz).value, ev12.eval(wz, wx).value);

    // Numerical rank of the symmetrized span on the fixed sample grid.
    const auto& sample = rank_sample_grid();
    Eigen::MatrixXcd M(sample.size(), 4);
    for (std::size_t r = 0; r < sample.size(); ++r) {
        const auto [x, z] = sample[r];
        PsiEvaluator* evs[4] = {&ev11, &ev12, &ev21, &ev22};
        for (int c = 0; c < 4; ++c)
            M(static_cast<Eigen::Index>(r), c) =
                0.5 * (evs[c]->eval(x, z).value + evs[c]->eval(z, x).value);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < 4; ++i) rep.singular_values[static_cast<std::size_t>(i)] = sv(i);
    rep.numerical_rank = 0;
    for (int i = 0; i < 4; ++i)
        if (sv(i) >= kRankCutoff * sv(0)) ++rep.numerical_rank;
    rep.sv_gap = sv(3) > 0 ? sv(2) / sv(3) : std::numeric_limits<double>::infinity();

    rep.pass = rep.defect11 <= kSymmetryDefectTol && rep.defect22 <= kSymmetryDefectTol &&
               rep.defect_sum <= kSymmetryDefectTol && rep.transpose_defect <= kSymmetryDefectTol &&
               rep.witness > kAsymmetryWitnessMin && rep.numerical_rank == 3 &&
               rep.sv_gap >= kRankGapMin;
    return rep;
}

SymmetryReport symmetry_report() {
    return symmetry_report(QuadratureSpec::defaults_for(1), rank_sample_grid());
}

DerivativeCheck cross_check_derivatives(const IntegralRep& rep, const std::vector<GridPoint>& grid,
                                        const QuadratureSpec& spec) {
    if (rep.m < 1) throw std::invalid_argument("cross_check_derivatives: m >= 1 required");
    PsiEvaluator ev(rep, spec);
    const double h = 1e-3;

    auto richardson = [&](auto f) {
        const auto dh = (f(h) - f(-h)) / (2.0 * h);
        const auto dh2 = (f(h / 2) - f(-h / 2)) / h;
        return (4.0 * dh2 - dh) / 3.0;
    };

    DerivativeCheck out;
    for (const auto& [x, z] : grid) {
        const double scale = std::abs(ev.eval(x, z, rep.moment).value);
        const auto mx = ev.eval(x, z, Moment{rep.moment.j, rep.moment.k + 1}).value;
        const auto fx = richardson(
            [&](double d) { return ev.eval(x + d, z, rep.moment).value; });
        out.max_dev_x = std::max(out.max_dev_x,
                                 std::abs(mx - fx) / (scale + std::max(std::abs(mx), std::abs(fx))));

        const auto mz = ev.eval(x, z, Moment{rep.moment.j + 1, rep.moment.k}).value;
        const auto fz = richardson(
            [&](double d) { return ev.eval(x, z + d, rep.moment).value; });
        out.max_dev_z = std::max(out.max_dev_z,
                                 std::abs(mz - fz) / (scale + std::max(std::abs(mz), std::abs(fz))));
    }
    return out;
}

}  // namespace bispectral
