#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bispectral/parse.hpp"
#include "bispectral/quadrature.hpp"
#include "bispectral/verify.hpp"
#include "bispectral/word.hpp"

namespace py = pybind11;
using namespace bispectral;

namespace {

AutomorphismWord word_from_factors(const std::vector<std::pair<std::string, std::string>>& factors) {
    std::vector<ElementaryFactor> fs;
    fs.reserve(factors.size());
    for (const auto& [kind, poly] : factors) {
        if (kind != "p" && kind != "q")
            throw std::invalid_argument("factor kind must be 'p' (ad p(x)) or 'q' (ad q(D))");
        fs.push_back({kind == "p" ? FactorKind::AdX : FactorKind::AdD, parse_poly(poly)});
    }
    return AutomorphismWord(std::move(fs));
}

QuadratureSpec spec_for(const AutomorphismWord& w, const py::dict& opts) {
    QuadratureSpec spec = QuadratureSpec::defaults_for(w.pair_count());
    for (auto item : opts) {
        const std::string key = py::cast<std::string>(item.first);
        if (key == "nodes_per_panel")
            spec.nodes_per_panel = py::cast<int>(item.second);
        else if (key == "panels")
            spec.panels = py::cast<int>(item.second);
        else if (key == "rel_tol")
            spec.rel_tol = py::cast<double>(item.second);
        else if (key == "truncation")
            spec.truncation = py::cast<double>(item.second);
        else if (key == "max_doublings")
            spec.max_doublings = py::cast<int>(item.second);
        else if (key == "allow_m_gt_2")
            spec.allow_high_m = py::cast<bool>(item.second);
        else if (key == "allow_large_arguments")
            spec.allow_large_arguments = py::cast<bool>(item.second);
        else
            throw std::invalid_argument("unknown quadrature option: " + key);
    }
    return spec;
}

std::vector<GridPoint> grid_from(const py::object& grid) {
    if (grid.is_none()) return default_verification_grid();
    std::vector<GridPoint> out;
    for (auto item : py::cast<py::iterable>(grid)) {
        auto tup = py::cast<py::tuple>(item);
        out.emplace_back(py::cast<std::complex<double>>(tup[0]),
                         py::cast<std::complex<double>>(tup[1]));
    }
    return out;
}

py::dict classification_dict(const Classification& c) {
    py::dict d;
    d["verdict"] = to_string(c.verdict);
    d["detail"] = c.detail;
    if (c.matrix) {
        py::list rows;
        for (const auto& row : *c.matrix) {
            py::list r;
            for (const auto& e : row) r.append(e.str());
            rows.append(r);
        }
        d["matrix"] = rows;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_bispectral, m) {
    m.doc() = "Bispectral operator pairs from Weyl algebra automorphisms: exact operator "
              "algebra, contour quadrature of the joint eigenfunction, and verification.";

    py::register_exception<convergence_error>(m, "ConvergenceError");
    py::register_exception<truncation_error>(m, "TruncationError");
    py::register_exception<parse_error>(m, "ParseError");

    py::class_<AutomorphismWord>(m, "Word")
        .def(py::init(&word_from_factors), py::arg("factors"),
             "Build from a list of (kind, poly) with kind 'p' for ad p(x) factors and 'q' "
             "for ad q(D) factors, e.g. [('p', 't^3/3'), ('q', 't^3/3')].")
        .def_property_readonly("m", &AutomorphismWord::pair_count)
        .def("pairs",
             [](const AutomorphismWord& w) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (const auto& [p, q] : w.pairs()) out.emplace_back(p.str(), q.str());
                 return out;
             })
        .def("inverse", &inverse_word)
        .def("__repr__", [](const AutomorphismWord& w) {
            std::string s = "Word([";
            bool first = true;
            for (const auto& f : w.factors()) {
                if (!first) s += ", ";
                first = false;
                s += std::string("('") + (f.kind == FactorKind::AdX ? "p" : "q") + "', '" +
                     f.poly.str() + "')";
            }
            return s + "])";
        });

    m.def("parse_poly", [](const std::string& s) { return parse_poly(s).str(); },
          "Parse a polynomial and return its canonical rendering.");
    m.def("poly_coeffs", [](const std::string& s) {
        const UniPoly p = parse_poly(s);
        std::vector<std::string> out;
        for (const auto& c : p.coeffs()) out.push_back(c.str());
        return out;
    });
    m.def("normalize_operator",
          [](const std::string& s) { return parse_operator(s).str(); },
          "Parse an operator in x/D term form and return its canonical normal-ordered text.");
    m.def("multiply", [](const std::string& a, const std::string& b) {
        return multiply(parse_operator(a), parse_operator(b)).str();
    });
    m.def("commutator", [](const std::string& a, const std::string& b) {
        return commutator(parse_operator(a), parse_operator(b)).str();
    });
    m.def("apply_to_monomial", [](const std::string& op, unsigned k) {
        return parse_operator(op).apply_to_monomial(k).str('x');
    });
    m.def("order_and_degree",
          [](const std::string& op) { return parse_operator(op).order_and_degree(); });
    m.def("compose_poly", [](const std::string& p, const std::string& a) {
        return compose_poly(parse_poly(p), parse_operator(a)).str();
    });
    m.def("b0", [](const std::string& op) { return b0(parse_operator(op)).str("z", "D"); });
    m.def("apply_word", [](const AutomorphismWord& w, const std::string& op) {
        return apply_word(w, parse_operator(op)).str();
    });

    m.def("operators", [](const AutomorphismWord& w) {
        const auto quad = bispectral_quadruple(w);
        py::dict d;
        d["L"] = quad.L.str("x", "D");
        d["Lambda"] = quad.Lambda.str("z", "D");
        d["D"] = quad.D.str("x", "D");
        d["Delta"] = quad.Delta.str("z", "D");
        return d;
    });

    m.def("classify", [](const AutomorphismWord& w) { return classification_dict(classify(w)); });

    m.def("convergence_check", [](const AutomorphismWord& w) {
        const auto rep = convergence_check(w);
        py::dict d;
        d["ok"] = rep.ok;
        if (!rep.ok) {
            d["first_violation"] = rep.first_violation;
            d["position"] = rep.position;
            d["reason"] = rep.reason;
        }
        return d;
    });

    m.def(
        "eval_psi",
        [](const AutomorphismWord& w, std::complex<double> x, std::complex<double> z,
           const py::dict& quadrature) {
            const auto rep = integral_rep(w);
            const auto res = eval_psi(rep, x, z, spec_for(w, quadrature));
            return py::make_tuple(res.value, res.est_error);
        },
        py::arg("word"), py::arg("x"), py::arg("z"), py::arg("quadrature") = py::dict(),
        "Evaluate psi(x,z); returns (value, est_error). The normalization is "
        "contour-dependent, so only ratios and residuals are meaningful.");

    m.def(
        "verify",
        [](const AutomorphismWord& w, const py::object& grid, double tolerance,
           const std::vector<std::string>& probes, const py::dict& quadrature) {
            VerificationTask task;
            task.word = w;
            task.grid = grid_from(grid);
            task.quadrature = spec_for(w, quadrature);
            task.tolerance = tolerance;
            for (const auto& p : probes) task.probes.push_back(parse_operator(p));
            const auto rep = verify_bispectral(task);

            py::dict d;
            d["classification"] = classification_dict(rep.classification);
            py::dict ops;
            ops["L"] = rep.operators.L.str("x", "D");
            ops["Lambda"] = rep.operators.Lambda.str("z", "D");
            ops["D"] = rep.operators.D.str("x", "D");
            ops["Delta"] = rep.operators.Delta.str("z", "D");
            d["operators"] = ops;
            py::list rows;
            for (const auto& row : rep.residuals) {
                py::dict r;
                r["x"] = row.x;
                r["z"] = row.z;
                r["identity"] = row.identity;
                r["residual"] = row.residual;
                r["scale"] = row.scale;
                r["noise_floor"] = row.noise_floor;
                r["inconclusive"] = row.inconclusive;
                rows.append(r);
            }
            d["residuals"] = rows;
            d["tolerance"] = rep.tolerance;
            d["max_residual"] = rep.max_residual;
            d["inconclusive_count"] = rep.inconclusive_count;
            d["pass"] = rep.pass;
            return d;
        },
        py::arg("word"), py::arg("grid") = py::none(), py::arg("tolerance") = 0.0,
        py::arg("probes") = std::vector<std::string>{}, py::arg("quadrature") = py::dict());

    m.def("symmetry_report", [] {
        const auto rep = symmetry_report();
        py::dict d;
        d["defect11"] = rep.defect11;
        d["defect22"] = rep.defect22;
        d["defect12"] = rep.defect12;
        d["defect_sum"] = rep.defect_sum;
        d["transpose_defect"] = rep.transpose_defect;
        d["witness"] = rep.witness;
        d["singular_values"] = rep.singular_values;
        d["numerical_rank"] = rep.numerical_rank;
        d["sv_gap"] = rep.sv_gap;
        d["pass"] = rep.pass;
        return d;
    });

    m.def(
        "cross_check_derivatives",
        [](const AutomorphismWord& w, const py::object& grid, const py::dict& quadrature) {
            const auto rep = integral_rep(w);
            const auto check = cross_check_derivatives(rep, grid_from(grid), spec_for(w, quadrature));
            return py::make_tuple(check.max_dev_x, check.max_dev_z);
        },
        py::arg("word"), py::arg("grid") = py::none(), py::arg("quadrature") = py::dict());
}
