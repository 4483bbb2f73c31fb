#include "bispectral/report_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "bispectral/parse.hpp"

namespace bispectral {

namespace {

UniPoly poly_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_poly(j.get<std::string>());
    if (j.is_array()) {
        std::vector<GaussianRational> coeffs;
        for (const auto& c : j) coeffs.push_back(parse_gaussian(c.get<std::string>()));
        return UniPoly(std::move(coeffs));
    }
    throw std::invalid_argument("job: poly must be a string or a list of coefficient strings");
}

std::complex<double> complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
    throw std::invalid_argument("job: complex values must be numbers, strings or {re,im}");
}

}  // namespace

JobSpec job_from_json(const nlohmann::json& j) {
    JobSpec job;

    std::vector<ElementaryFactor> factors;
    for (const auto& f : j.at("word")) {
        const std::string kind = f.at("kind").get<std::string>();
        if (kind != "p" && kind != "q")
            throw std::invalid_argument("job: factor kind must be \"p\" (ad p(x)) or \"q\" (ad q(D))");
        factors.push_back({kind == "p" ? FactorKind::AdX : FactorKind::AdD,
                           poly_from_json(f.at("poly"))});
    }
    job.word = AutomorphismWord(std::move(factors));

    if (j.contains("contours"))
        for (const auto& c : j["contours"]) {
            if (c.is_array())
                job.contours.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
            else
                job.contours.emplace_back(c.at("k1").get<int>(), c.at("k2").get<int>());
        }

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (g.contains("points")) {
            for (const auto& pt : g["points"]) {
                if (pt.is_array())
                    job.grid.emplace_back(complex_from_json(pt.at(0)), complex_from_json(pt.at(1)));
                else
                    job.grid.emplace_back(complex_from_json(pt.at("x")), complex_from_json(pt.at("z")));
            }
        } else {
            for (const auto& xv : g.at("x_values"))
                for (const auto& zv : g.at("z_values"))
                    job.grid.emplace_back(complex_from_json(xv), complex_from_json(zv));
        }
    }

    job.quadrature = QuadratureSpec::defaults_for(job.word.pair_count());
    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        job.quadrature.nodes_per_panel = q.value("nodes_per_panel", job.quadrature.nodes_per_panel);
        job.quadrature.panels = q.value("panels", job.quadrature.panels);
        job.quadrature.rel_tol = q.value("rel_tol", job.quadrature.rel_tol);
        job.quadrature.max_doublings = q.value("max_doublings", job.quadrature.max_doublings);
        job.quadrature.allow_large_arguments =
            q.value("allow_large_arguments", job.quadrature.allow_large_arguments);
        if (q.contains("truncation")) job.quadrature.truncation = q["truncation"].get<double>();
    }

    if (j.contains("probes"))
        for (const auto& p : j["probes"]) job.probes.push_back(parse_operator(p.get<std::string>()));

    job.tolerance = j.value("tolerance", 0.0);
    job.allow_high_m = j.value("allow_m_gt_2", false);
    job.quadrature.allow_high_m = job.allow_high_m;
    return job;
}

JobSpec load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open job file: " + path);
    nlohmann::json j;
    in >> j;
    return job_from_json(j);
}

nlohmann::json complex_json(std::complex<double> v) {
    return {{"re", v.real()}, {"im", v.imag()}};
}

nlohmann::json classification_json(const Classification& c) {
    nlohmann::json j{{"verdict", to_string(c.verdict)}, {"detail", c.detail}};
    if (c.matrix) {
        j["matrix"] = {{(*c.matrix)[0][0].str(), (*c.matrix)[0][1].str()},
                       {(*c.matrix)[1][0].str(), (*c.matrix)[1][1].str()}};
    }
    return j;
}

nlohmann::json operators_json(const BispectralQuadruple& q) {
    return {{"L", q.L.str("x", "D")},
            {"Lambda", q.Lambda.str("z", "D")},
            {"D", q.D.str("x", "D")},
            {"Delta", q.Delta.str("z", "D")}};
}

nlohmann::json report_json(const VerificationReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.residuals) {
        rows.push_back({{"x", complex_json(row.x)},
                        {"z", complex_json(row.z)},
                        {"identity", row.identity},
                        {"residual", row.residual},
                        {"scale", row.scale},
                        {"noise_floor", row.noise_floor},
                        {"inconclusive", row.inconclusive}});
    }
    return {{"classification", classification_json(r.classification)},
            {"operators", operators_json(r.operators)},
            {"residuals", std::move(rows)},
            {"tolerance", r.tolerance},
            {"max_residual", r.max_residual},
            {"inconclusive_count", r.inconclusive_count},
            {"pass", r.pass}};
}

nlohmann::json symmetry_json(const SymmetryReport& r) {
    return {{"defect11", r.defect11},
            {"defect22", r.defect22},
            {"defect12", r.defect12},
            {"defect_sum", r.defect_sum},
            {"transpose_defect", r.transpose_defect},
            {"witness", r.witness},
            {"singular_values", r.singular_values},
            {"numerical_rank", r.numerical_rank},
            {"sv_gap", r.sv_gap},
            {"pass", r.pass}};
}

void write_residual_csv(const VerificationReport& r, std::ostream& os) {
    os << "x_re,x_im,z_re,z_im,identity,residual,scale\n";
    std::ostringstream line;
    line.precision(17);
    for (const auto& row : r.residuals) {
        line.str("");
        line << row.x.real() << ',' << row.x.imag() << ',' << row.z.real() << ',' << row.z.imag()
             << ',' << row.identity << ',';
        if (row.inconclusive)
            line << "nan";
        else
            line << row.residual;
        line << ',' << row.scale << '\n';
        os << line.str();
    }
}

}  // namespace bispectral
