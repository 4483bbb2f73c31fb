#include "bispectral/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bispectral {

namespace {

std::complex<double> ipow(std::complex<double> b, unsigned e) {
    std::complex<double> r = 1.0;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::complex<double> horner(std::span<const std::complex<double>> coeffs, std::complex<double> t) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        nodes[i] = -t;
        nodes[n - 1 - i] = t;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

QuadratureSpec QuadratureSpec::defaults_for(std::size_t m) {
    QuadratureSpec s;
    if (m <= 1) {
        s.nodes_per_panel = 24;
        s.panels = 12;
        s.rel_tol = 1e-10;
    } else if (m == 2) {
        s.nodes_per_panel = 16;
        s.panels = 8;
        s.rel_tol = 1e-8;
    } else {
        s.nodes_per_panel = 12;
        s.panels = 6;
        s.rel_tol = 1e-7;
    }
    return s;
}

IntegralRep integral_rep(const AutomorphismWord& w,
                         const std::vector<std::pair<int, int>>& contour_overrides) {
    auto report = convergence_check(w);
    if (!report.ok) throw convergence_error(std::move(report));
    IntegralRep rep;
    const auto pairs = w.pairs();
    rep.m = pairs.size();
    for (const auto& [p, q] : pairs) {
        rep.p.push_back(p);
        rep.q.push_back(q);
    }
    if (rep.m > 0) rep.plan = plan_for_word(w, contour_overrides);
    return rep;
}

IntegralRep with_x_derivative(IntegralRep rep) {
    if (rep.m < 1) throw std::invalid_argument("with_x_derivative: m >= 1 required");
    rep.moment.k += 1;
    return rep;
}

IntegralRep with_z_derivative(IntegralRep rep) {
    if (rep.m < 1) throw std::invalid_argument("with_z_derivative: m >= 1 required");
    rep.moment.j += 1;
    return rep;
}

PsiEvaluator::PsiEvaluator(IntegralRep rep, QuadratureSpec spec)
    : rep_(std::move(rep)), spec_(std::move(spec)) {
    if (spec_.nodes_per_panel < 1 || spec_.panels < 1 || !(spec_.rel_tol > 0.0) ||
        spec_.max_doublings < 0)
        throw std::invalid_argument("QuadratureSpec fields must be positive");
    if (spec_.truncation && !(std::isfinite(*spec_.truncation) && *spec_.truncation > 0.0))
        throw std::invalid_argument("QuadratureSpec truncation must be positive and finite");
    if (rep_.m > 2 && !spec_.allow_high_m)
        throw std::invalid_argument(
            "m = " + std::to_string(rep_.m) +
            " exceeds the default cap of 2 (cost grows as N^(2m) per point); "
            "set allow_high_m to proceed");
    if (rep_.m > 0 && rep_.plan.pairs.size() != 2 * rep_.m)
        throw std::invalid_argument("contour plan length must be 2m");
    poly_coeffs_.resize(2 * rep_.m);
    for (std::size_t s = 0; s < rep_.m; ++s) {
        poly_coeffs_[2 * s] = rep_.p[s].complex_coeffs();
        poly_coeffs_[2 * s + 1] = rep_.q[s].complex_coeffs();
    }
    gauss_legendre(spec_.nodes_per_panel, gl_nodes_, gl_weights_);
}

double PsiEvaluator::base_truncation(std::size_t var, std::complex<double> x,
                                     std::complex<double> z) const {
    if (spec_.truncation) return *spec_.truncation;
    const UniPoly& poly = (var % 2 == 0) ? rep_.p[var / 2] : rep_.q[var / 2];
    const int n = poly.degree();
    double mag = std::max({1.0, std::abs(x), std::abs(z), poly.max_coeff_magnitude()});
    double t_raw = 4.0 * std::pow(mag, 1.0 / (n - 1));
    // Round up to the 4*2^k grid so kernel matrices are shared across points.
    double T = 4.0;
    while (T < t_raw * (1.0 - 1e-12)) T *= 2.0;
    return T;
}

const PsiEvaluator::VarNodes& PsiEvaluator::nodes_for(std::size_t var, double T) {
    auto key = std::make_pair(var, T);
    auto it = node_cache_.find(key);
    if (it != node_cache_.end()) return it->second;

    const ContourPair& cp = rep_.plan.pairs[var];
    VarNodes vn;
    const int P = spec_.panels, G = spec_.nodes_per_panel;
    vn.pos.reserve(2 * P * G);
    vn.wgt.reserve(2 * P * G);

    std::vector<double> edges(P + 1);
    edges[0] = 0.0;
    for (int i = 1; i <= P; ++i) edges[i] = T * std::pow(0.5, P - i);

    for (const Ray* ray : {&cp.incoming, &cp.outgoing}) {
        const double sign = ray->incoming ? -1.0 : 1.0;
        for (int panel = 0; panel < P; ++panel) {
            const double half = 0.5 * (edges[panel + 1] - edges[panel]);
            const double mid = 0.5 * (edges[panel + 1] + edges[panel]);
            for (int g = 0; g < G; ++g) {
                const double t = mid + half * gl_nodes_[g];
                vn.pos.push_back(ray->direction * t);
                vn.wgt.push_back(sign * ray->direction * (half * gl_weights_[g]));
            }
        }
    }
    return node_cache_.emplace(key, std::move(vn)).first->second;
}

const std::vector<std::complex<double>>& PsiEvaluator::kernel_for(std::size_t slot, double t_left,
                                                                  double t_right) {
    KernelKey key{slot, t_left, t_right};
    auto it = kernel_cache_.find(key);
    if (it != kernel_cache_.end()) return it->second;

    const auto& ln = nodes_for(slot, t_left);
    const auto& rn = nodes_for(slot + 1, t_right);
    const double sign = (slot % 2 == 0) ? -1.0 : 1.0;

    // Half of each variable's polynomial decay is attached to every adjacent
    // kernel, which keeps all entries bounded for admissible degree patterns.
    const std::size_t nl = ln.pos.size(), nr = rn.pos.size();
    std::vector<std::complex<double>> half_l(nl), half_r(nr);
    for (std::size_t i = 0; i < nl; ++i) half_l[i] = 0.5 * horner(poly_coeffs_[slot], ln.pos[i]);
    for (std::size_t j = 0; j < nr; ++j) half_r[j] = 0.5 * horner(poly_coeffs_[slot + 1], rn.pos[j]);

    std::vector<std::complex<double>> K(nl * nr);
    for (std::size_t i = 0; i < nl; ++i) {
        const std::complex<double> ui = sign * ln.pos[i];
        const std::complex<double> hi = half_l[i];
        for (std::size_t j = 0; j < nr; ++j)
            K[i * nr + j] = std::exp(ui * rn.pos[j] - hi - half_r[j]);
    }
    return kernel_cache_.emplace(std::move(key), std::move(K)).first->second;
}

std::complex<double> PsiEvaluator::contract(std::complex<double> x, std::complex<double> z,
                                            Moment moment,
                                            std::span<const VarInsertion> insertions,
                                            const std::vector<double>& truncations) {
    const std::size_t nvars = 2 * rep_.m;
    auto insert_factor = [&](std::size_t var, std::complex<double> pos) {
        std::complex<double> f = 1.0;
        for (const auto& ins : insertions)
            if (ins.var == var) f *= horner(ins.coeffs, pos);
        return f;
    };

    // Left end: u1 carries exp(u z - p1(u)/2) and the u1^j moment.
    const auto& first = nodes_for(0, truncations[0]);
    std::vector<std::complex<double>> vec(first.pos.size());
    for (std::size_t i = 0; i < vec.size(); ++i) {
        const auto u = first.pos[i];
        vec[i] = first.wgt[i] * std::exp(u * z - 0.5 * horner(poly_coeffs_[0], u)) *
                 ipow(u, moment.j) * insert_factor(0, u);
    }

    for (std::size_t slot = 0; slot + 1 < nvars; ++slot) {
        const auto& K = kernel_for(slot, truncations[slot], truncations[slot + 1]);
        const auto& rn = nodes_for(slot + 1, truncations[slot + 1]);
        const std::size_t nr = rn.pos.size();
        std::vector<std::complex<double>> next(nr, 0.0);
        for (std::size_t i = 0; i < vec.size(); ++i) {
            const std::complex<double> vi = vec[i];
            if (vi == std::complex<double>(0.0, 0.0)) continue;
            const std::complex<double>* row = K.data() + i * nr;
            for (std::size_t j = 0; j < nr; ++j) next[j] += vi * row[j];
        }
        const bool last = (slot + 2 == nvars);
        for (std::size_t j = 0; j < nr; ++j) {
            const auto v = rn.pos[j];
            std::complex<double> w = rn.wgt[j] * insert_factor(slot + 1, v);
            if (last)
                w *= std::exp(x * v - 0.5 * horner(poly_coeffs_[slot + 1], v)) * ipow(v, moment.k);
            next[j] *= w;
        }
        vec = std::move(next);
    }

    std::complex<double> total = 0.0;
    for (const auto& v : vec) total += v;
    return total;
}

std::complex<double> PsiEvaluator::eval_fixed(std::complex<double> x, std::complex<double> z,
                                              Moment moment, double t_scale,
                                              std::span<const VarInsertion> insertions) {
    if (rep_.m == 0) return ipow(x, moment.j) * ipow(z, moment.k) * std::exp(x * z);
    std::vector<double> truncations(2 * rep_.m);
    for (std::size_t var = 0; var < truncations.size(); ++var)
        truncations[var] = t_scale * base_truncation(var, x, z);
    return contract(x, z, moment, insertions, truncations);
}

EvalResult PsiEvaluator::eval(std::complex<double> x, std::complex<double> z) {
    return eval(x, z, rep_.moment);
}

EvalResult PsiEvaluator::eval(std::complex<double> x, std::complex<double> z, Moment moment,
                              std::span<const VarInsertion> insertions) {
    if (rep_.m == 0) return {eval_fixed(x, z, moment, 1.0), 0.0};

    // Small slack so finite-difference probes at the boundary stay legal.
    if (!spec_.allow_large_arguments && std::max(std::abs(x), std::abs(z)) > 1.51)
        throw std::invalid_argument(
            "evaluation point outside the default compact |x|,|z| <= 1.5; "
            "set allow_large_arguments to override");

    const bool cacheable = insertions.empty();
    const std::array<double, 6> cache_key{x.real(), x.imag(), z.real(),
                                          z.imag(), double(moment.j), double(moment.k)};
    if (cacheable) {
        auto it = value_cache_.find(cache_key);
        if (it != value_cache_.end()) return it->second;
    }

    std::complex<double> prev = eval_fixed(x, z, moment, 1.0, insertions);
    double scale = 1.0;
    for (int r = 1; r <= spec_.max_doublings; ++r) {
        scale *= 2.0;
        const std::complex<double> cur = eval_fixed(x, z, moment, scale, insertions);
        if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
            throw truncation_error("truncation failure: integrand grows along the contour (divergent configuration)");
        const double denom = std::max(std::abs(prev), std::abs(cur));
        EvalResult out;
        bool done = false;
        if (denom < 1e-280) {
            out = {cur, 0.0};
            done = true;
        } else {
            const double est = std::abs(cur - prev) / denom;
            if (est <= spec_.rel_tol) {
                out = {cur, est};
                done = true;
            }
        }
        if (done) {
            if (cacheable) value_cache_.emplace(cache_key, out);
            return out;
        }
        prev = cur;
    }
    throw truncation_error("truncation failure: value did not stabilize to rel_tol within " +
                           std::to_string(spec_.max_doublings) + " truncation doublings");
}

namespace {

// Summing c_ab x^a M_b can cancel across many orders of magnitude when the
// operator's coefficients are large (normal ordering grows them
// factorially), so each term contributes at least machine epsilon times its
// magnitude to the error budget. The resulting est_error is the identity's
// numeric noise floor relative to the value.
double term_noise(const EvalResult& moment_eval, double factor_mag) {
    const double eps = std::numeric_limits<double>::epsilon();
    return factor_mag * std::abs(moment_eval.value) * std::max(moment_eval.est_error, eps);
}

}  // namespace

EvalResult PsiEvaluator::apply_x(const WeylElement& P, std::complex<double> x,
                                 std::complex<double> z) {
    std::map<unsigned, EvalResult> by_order;
    std::complex<double> value = 0.0;
    double abs_err = 0.0;
    for (const auto& [key, c] : P.complex_terms()) {
        const auto [a, b] = key;
        auto it = by_order.find(b);
        if (it == by_order.end())
            it = by_order.emplace(b, eval(x, z, Moment{rep_.moment.j, rep_.moment.k + b})).first;
        const std::complex<double> factor = c * ipow(x, a);
        value += factor * it->second.value;
        abs_err += term_noise(it->second, std::abs(factor));
    }
    return {value, abs_err / std::max(std::abs(value), 1e-300)};
}

EvalResult PsiEvaluator::apply_z(const WeylElement& Q, std::complex<double> x,
                                 std::complex<double> z) {
    std::map<unsigned, EvalResult> by_order;
    std::complex<double> value = 0.0;
    double abs_err = 0.0;
    for (const auto& [key, c] : Q.complex_terms()) {
        const auto [a, b] = key;
        auto it = by_order.find(b);
        if (it == by_order.end())
            it = by_order.emplace(b, eval(x, z, Moment{rep_.moment.j + b, rep_.moment.k})).first;
        const std::complex<double> factor = c * ipow(z, a);
        value += factor * it->second.value;
        abs_err += term_noise(it->second, std::abs(factor));
    }
    return {value, abs_err / std::max(std::abs(value), 1e-300)};
}

EvalResult eval_psi(const IntegralRep& rep, std::complex<double> x, std::complex<double> z,
                    const QuadratureSpec& spec) {
    PsiEvaluator ev(rep, spec);
    return ev.eval(x, z);
}

EvalResult apply_operator_x(const WeylElement& P, const IntegralRep& rep, std::complex<double> x,
                            std::complex<double> z, const QuadratureSpec& spec) {
    PsiEvaluator ev(rep, spec);
    return ev.apply_x(P, x, z);
}

EvalResult apply_operator_z(const WeylElement& Q, const IntegralRep& rep, std::complex<double> x,
                            std::complex<double> z, const QuadratureSpec& spec) {
    PsiEvaluator ev(rep, spec);
    return ev.apply_z(Q, x, z);
}

IbpResiduals ibp_residuals(const IntegralRep& rep, std::complex<double> x, std::complex<double> z,
                           const QuadratureSpec& spec) {
    if (rep.m < 1) throw std::invalid_argument("ibp_residuals: m >= 1 required");
    PsiEvaluator ev(rep, spec);
    const std::size_t m = rep.m;
    const std::size_t um = 2 * m - 2, vm = 2 * m - 1;
    const Moment mom = rep.moment;

    const auto psi = ev.eval(x, z, mom);
    const double psi_scale = std::abs(psi.value);
    const std::vector<std::complex<double>> t_lin{0.0, 1.0};

    auto with_ins = [&](std::size_t var, std::vector<std::complex<double>> coeffs) {
        VarInsertion ins{var, std::move(coeffs)};
        return ev.eval(x, z, mom, std::span<const VarInsertion>(&ins, 1)).value;
    };

    // d/d(u_m) of the integrand: (v_{m-1} - v_m - p_m'(u_m)) * integrand,
    // with v_0 = z.
    const std::complex<double> t1 =
        (m == 1) ? z * psi.value : with_ins(2 * m - 3, t_lin);
    const std::complex<double> t2 = with_ins(vm, t_lin);
    const std::complex<double> t3 = with_ins(um, rep.p[m - 1].derivative().complex_coeffs());

    // d/d(v_m): (x - u_m - q_m'(v_m)) * integrand.
    const std::complex<double> s1 = x * psi.value;
    const std::complex<double> s2 = with_ins(um, t_lin);
    const std::complex<double> s3 = with_ins(vm, rep.q[m - 1].derivative().complex_coeffs());

    IbpResiduals res;
    res.du = std::abs(t1 - t2 - t3) /
             (psi_scale + std::max({std::abs(t1), std::abs(t2), std::abs(t3)}));
    res.dv = std::abs(s1 - s2 - s3) /
             (psi_scale + std::max({std::abs(s1), std::abs(s2), std::abs(s3)}));
    return res;
}

}  // namespace bispectral
