#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "bispectral/parse.hpp"
#include "bispectral/report_io.hpp"
#include "bispectral/verify.hpp"

namespace {

using namespace bispectral;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDivergent = 2;
constexpr int kExitTruncation = 3;

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

void print_classification(const Classification& c) {
    std::cout << "classification: " << to_string(c.verdict) << '\n';
    std::cout << "  " << c.detail << '\n';
    if (c.matrix) {
        std::cout << "  matrix a_ij = [[" << (*c.matrix)[0][0].str() << ", "
                  << (*c.matrix)[0][1].str() << "], [" << (*c.matrix)[1][0].str() << ", "
                  << (*c.matrix)[1][1].str() << "]]\n";
    }
}

int run_operators(const JobSpec& job, const std::string& report_out) {
    const auto quad = bispectral_quadruple(job.word);
    const auto cls = classify(job.word);
    std::cout << "L      = " << quad.L.str("x", "D") << '\n';
    std::cout << "Lambda = " << quad.Lambda.str("z", "D") << '\n';
    std::cout << "D      = " << quad.D.str("x", "D") << '\n';
    std::cout << "Delta  = " << quad.Delta.str("z", "D") << '\n';
    print_classification(cls);
    if (!report_out.empty())
        write_json(report_out, {{"classification", classification_json(cls)},
                                {"operators", operators_json(quad)}});
    return kExitOk;
}

int run_classify(const JobSpec& job, const std::string& report_out) {
    const auto cls = classify(job.word);
    print_classification(cls);
    const auto conv = convergence_check(job.word);
    if (!conv.ok) std::cout << "convergence: violation, " << conv.reason << '\n';
    if (!report_out.empty()) {
        nlohmann::json j{{"classification", classification_json(cls)},
                         {"convergence_ok", conv.ok}};
        if (!conv.ok) j["convergence_violation"] = conv.reason;
        write_json(report_out, j);
    }
    return kExitOk;
}

int run_eval(const JobSpec& job, const std::string& xs, const std::string& zs,
             const std::string& report_out) {
    const auto x = parse_complex(xs), z = parse_complex(zs);
    const auto rep = integral_rep(job.word, job.contours);
    const auto res = eval_psi(rep, x, z, job.quadrature);
    std::cout.precision(15);
    std::cout << "psi(" << xs << ", " << zs << ") = " << res.value.real();
    if (res.value.imag() >= 0) std::cout << "+";
    std::cout << res.value.imag() << "i\n";
    std::cout << "est_error = " << res.est_error << '\n';
    if (!report_out.empty())
        write_json(report_out, {{"x", complex_json(x)},
                                {"z", complex_json(z)},
                                {"value", complex_json(res.value)},
                                {"est_error", res.est_error}});
    return kExitOk;
}

int run_verify(const JobSpec& job, double tol_override, const std::string& report_out,
               const std::string& grid_out) {
    VerificationTask task;
    task.word = job.word;
    if (!job.grid.empty()) task.grid = job.grid;
    task.quadrature = job.quadrature;
    task.probes = job.probes;
    task.tolerance = tol_override > 0 ? tol_override : job.tolerance;
    task.contour_overrides = job.contours;

    const auto report = verify_bispectral(task);

    std::cout << "identities checked at " << task.grid.size() << " grid points, tolerance "
              << report.tolerance << '\n';
    std::cout << "max residual      = " << report.max_residual << '\n';
    std::cout << "inconclusive pts  = " << report.inconclusive_count << '\n';
    print_classification(report.classification);
    std::cout << (report.pass ? "PASS" : "FAIL") << '\n';

    write_json(report_out.empty() ? "verify_report.json" : report_out, report_json(report));
    {
        const std::string path = grid_out.empty() ? "residuals.csv" : grid_out;
        std::ofstream csv(path);
        if (!csv) throw std::runtime_error("cannot write " + path);
        write_residual_csv(report, csv);
    }
    return report.pass ? kExitOk : kExitError;
}

int run_symmetry(const std::string& report_out) {
    const auto rep = symmetry_report();
    std::cout.precision(6);
    std::cout << "psi_11 symmetry defect   = " << rep.defect11 << '\n';
    std::cout << "psi_22 symmetry defect   = " << rep.defect22 << '\n';
    std::cout << "psi_12 asymmetry         = " << rep.defect12 << '\n';
    std::cout << "psi_12+psi_21 defect     = " << rep.defect_sum << '\n';
    std::cout << "transpose defect         = " << rep.transpose_defect << '\n';
    std::cout << "asymmetry witness        = " << rep.witness << '\n';
    std::cout << "singular values          = ";
    for (double s : rep.singular_values) std::cout << s << ' ';
    std::cout << '\n';
    std::cout << "numerical rank           = " << rep.numerical_rank << " (gap " << rep.sv_gap
              << ")\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << '\n';
    if (!report_out.empty()) write_json(report_out, symmetry_json(rep));
    return rep.pass ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bispectral: constructs bispectral operator pairs from Weyl algebra "
                 "automorphism words and certifies them numerically"};
    app.require_subcommand(1);

    std::string job_path, x_str, z_str, report_out, grid_out;
    double tol = 0.0;
    bool allow_high_m = false;

    auto* op_cmd = app.add_subcommand("operators", "print L, Lambda, D, Delta for a word");
    op_cmd->add_option("--job", job_path, "job file (JSON)")->required();
    op_cmd->add_option("--report-out", report_out, "write operators JSON here");

    auto* cls_cmd = app.add_subcommand("classify", "degree-based triviality classification");
    cls_cmd->add_option("--job", job_path)->required();
    cls_cmd->add_option("--report-out", report_out);

    auto* eval_cmd = app.add_subcommand("eval", "evaluate psi(x,z)");
    eval_cmd->add_option("--job", job_path)->required();
    eval_cmd->add_option("--x", x_str, "complex literal \"a+bi\"")->required();
    eval_cmd->add_option("--z", z_str, "complex literal \"a+bi\"")->required();
    eval_cmd->add_option("--report-out", report_out);

    auto* ver_cmd = app.add_subcommand("verify", "check the eigenfunction identities on a grid");
    ver_cmd->add_option("--job", job_path)->required();
    ver_cmd->add_option("--tol", tol, "pass tolerance override");
    ver_cmd->add_option("--report-out", report_out, "JSON report path (default verify_report.json)");
    ver_cmd->add_option("--grid-out", grid_out, "CSV residual table path (default residuals.csv)");

    auto* sym_cmd = app.add_subcommand("symmetry", "built-in cubic symmetry scenario");
    sym_cmd->add_option("--report-out", report_out);

    app.add_flag("--allow-m-gt-2", allow_high_m, "lift the m <= 2 cost cap");

    CLI11_PARSE(app, argc, argv);

    try {
        JobSpec job;
        if (!job_path.empty()) {
            job = load_job(job_path);
            if (allow_high_m) {
                job.allow_high_m = true;
                job.quadrature.allow_high_m = true;
            }
            if (job.quadrature.allow_high_m && job.word.pair_count() > 2)
                std::cerr << "warning: m = " << job.word.pair_count()
                          << " layers; tensor quadrature cost grows steeply with m, expect long runtimes\n";
        }
        if (op_cmd->parsed()) return run_operators(job, report_out);
        if (cls_cmd->parsed()) return run_classify(job, report_out);
        if (eval_cmd->parsed()) return run_eval(job, x_str, z_str, report_out);
        if (ver_cmd->parsed()) return run_verify(job, tol, report_out, grid_out);
        if (sym_cmd->parsed()) return run_symmetry(report_out);
    } catch (const convergence_error& e) {
        std::cerr << "convergence violation: " << e.report.reason << '\n';
        return kExitDivergent;
    } catch (const truncation_error& e) {
        std::cerr << e.what() << '\n';
        return kExitTruncation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
