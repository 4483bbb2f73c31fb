#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bispectral/contour.hpp"
#include "bispectral/weyl.hpp"
#include "bispectral/word.hpp"

namespace bispectral {

/// Monomial factor u1^j * vm^k inserted into the integrand. Differentiation
/// under the integral: d/dz inserts u1 (j), d/dx inserts vm (k).
/// j = k = 0 is the plain eigenfunction.
struct Moment {
    unsigned j = 0;
    unsigned k = 0;
};

/// The data of the nested Laplace integral for psi_m(x,z): m polynomial
/// layers (p_s, q_s), one contour pair per integration variable
/// u1,v1,...,um,vm, and a moment monomial. m = 0 denotes the closed-form
/// eigenfunction exp(xz).
struct IntegralRep {
    std::size_t m = 0;
    std::vector<UniPoly> p, q;
    ContourPlan plan;
    Moment moment;
};

/// Builds the representation for a word. Throws convergence_error when
/// convergence_check fails.
IntegralRep integral_rep(const AutomorphismWord& w,
                         const std::vector<std::pair<int, int>>& contour_overrides = {});

IntegralRep with_x_derivative(IntegralRep rep);  // moment.k += 1
IntegralRep with_z_derivative(IntegralRep rep);  // moment.j += 1

/// Numerical scheme: composite Gauss-Legendre panels on each truncated ray
/// [0,T], panel edges geometrically graded toward 0 with ratio 1/2. The base
/// truncation is chosen automatically per variable unless `truncation` is
/// set, and the evaluation ladder doubles it until the value stabilizes to
/// rel_tol (at most max_doublings times).
struct QuadratureSpec {
    int nodes_per_panel = 24;
    int panels = 12;
    double rel_tol = 1e-10;
    std::optional<double> truncation;
    int max_doublings = 6;
    bool allow_high_m = false;
    /// Evaluation is restricted to the compact |x|,|z| <= 1.5 by default
    /// (oscillation and truncation cost grow with the arguments).
    bool allow_large_arguments = false;

    static QuadratureSpec defaults_for(std::size_t m);
};

/// est_error is the relative change across the last truncation doubling: it
/// certifies ray-truncation stability, not node-resolution adequacy.
/// Polynomials with large lower-order (especially imaginary) coefficients
/// oscillate along the rays and may need more nodes/panels than the
/// defaults; the identity residuals in the verify module are the
/// end-to-end accuracy certificate.
struct EvalResult {
    std::complex<double> value{0.0, 0.0};
    double est_error = 0.0;
};

struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Extra polynomial factor in a single integration variable (0-based index
/// into u1,v1,...,um,vm), used for the integration-by-parts checks.
struct VarInsertion {
    std::size_t var;
    std::vector<std::complex<double>> coeffs;
};

/// Evaluates psi and its moment insertions at points (x,z). The integrand
/// couples each variable only to its neighbours in the order
/// u1,v1,...,um,vm, so the tensor-product sum over both rays of every
/// variable is contracted as a chain of matrix-vector products. Kernel
/// matrices depend only on (polynomials, contours, truncation) and are
/// cached across points, moments and ladder rungs.
///
/// Evaluation is deterministic; instances are not safe for concurrent use
/// (the kernel cache mutates), but distinct instances may run in parallel.
class PsiEvaluator {
public:
    PsiEvaluator(IntegralRep rep, QuadratureSpec spec);

    const IntegralRep& rep() const { return rep_; }

    EvalResult eval(std::complex<double> x, std::complex<double> z);
    EvalResult eval(std::complex<double> x, std::complex<double> z, Moment moment,
                    std::span<const VarInsertion> insertions = {});

    /// Single evaluation at a fixed truncation (no ladder): every variable's
    /// ray is cut at t_scale times its base length, or at `truncation` when
    /// the spec pins one.
    std::complex<double> eval_fixed(std::complex<double> x, std::complex<double> z, Moment moment,
                                    double t_scale,
                                    std::span<const VarInsertion> insertions = {});

    /// P(x,Dx) applied to psi: sum of c_ab x^a times the (moment.k + b)
    /// evaluation. apply_z is the analogue with z^a and moment.j + b.
    EvalResult apply_x(const WeylElement& P, std::complex<double> x, std::complex<double> z);
    EvalResult apply_z(const WeylElement& Q, std::complex<double> x, std::complex<double> z);

private:
    struct VarNodes {
        std::vector<std::complex<double>> pos;
        std::vector<std::complex<double>> wgt;  // ray sign * direction * GL weight
    };
    struct KernelKey {
        std::size_t slot;
        double t_left, t_right;
        friend auto operator<=>(const KernelKey&, const KernelKey&) = default;
    };

    double base_truncation(std::size_t var, std::complex<double> x, std::complex<double> z) const;
    const VarNodes& nodes_for(std::size_t var, double T);
    const std::vector<std::complex<double>>& kernel_for(std::size_t slot, double t_left, double t_right);
    std::complex<double> contract(std::complex<double> x, std::complex<double> z, Moment moment,
                                  std::span<const VarInsertion> insertions,
                                  const std::vector<double>& truncations);

    IntegralRep rep_;
    QuadratureSpec spec_;
    std::vector<std::vector<std::complex<double>>> poly_coeffs_;  // per variable
    std::vector<double> gl_nodes_, gl_weights_;
    std::map<std::pair<std::size_t, double>, VarNodes> node_cache_;
    std::map<KernelKey, std::vector<std::complex<double>>> kernel_cache_;
    std::map<std::array<double, 6>, EvalResult> value_cache_;  // moment evals per point
};

/// One-shot wrappers.
EvalResult eval_psi(const IntegralRep& rep, std::complex<double> x, std::complex<double> z,
                    const QuadratureSpec& spec);
EvalResult apply_operator_x(const WeylElement& P, const IntegralRep& rep, std::complex<double> x,
                            std::complex<double> z, const QuadratureSpec& spec);
EvalResult apply_operator_z(const WeylElement& Q, const IntegralRep& rep, std::complex<double> x,
                            std::complex<double> z, const QuadratureSpec& spec);

/// Quadrature estimates of the integrals of d/d(u_m) and d/d(v_m) applied to
/// the integrand, normalized by the local psi scale. Both vanish for the
/// exact integral because the chained ray orientation (infinity -> 0 ->
/// infinity) cancels the boundary terms at 0; the residuals certify that
/// orientation convention.
struct IbpResiduals {
    double du = 0.0;
    double dv = 0.0;
};
IbpResiduals ibp_residuals(const IntegralRep& rep, std::complex<double> x, std::complex<double> z,
                           const QuadratureSpec& spec);

/// Gauss-Legendre rule on [-1,1] (Newton on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace bispectral
