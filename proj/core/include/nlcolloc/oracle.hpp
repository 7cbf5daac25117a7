#pragma once

#include <functional>
#include <vector>

namespace nlcolloc {

/// Dense polynomial in the monomial basis. Degrees up to 12 are handled
/// exactly by the closed-form operator evaluation below.
class PolynomialFn {
public:
    PolynomialFn() : c_{0.0} {}
    explicit PolynomialFn(std::vector<double> coeffs);

    double operator()(double x) const;
    PolynomialFn derivative() const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }

    /// u(x) = x^2 (1 - x^2), the workhorse manufactured solution.
    static PolynomialFn quartic_well() { return PolynomialFn({0.0, 0.0, 1.0, 0.0, -1.0}); }

private:
    std::vector<double> c_;
};

/// Constant interaction kernel: 3/delta^3 in 1D, 3/(2 delta^4) in 2D. The 1D
/// value is normalized so the second moment over [0, delta] is exactly 1.
struct KernelSpec {
    int dimension = 1;
    double delta = 0.0;
    double value = 0.0;
};

KernelSpec make_kernel(int dimension, double delta);

/// L_delta u(x) for polynomial u via the finite even-derivative series
///   L_delta u(x) = 6 * sum_{k>=1} u^(2k)(x) * delta^(2k-2) / ((2k)! (2k+1)).
double apply_exact_1d(const PolynomialFn& u, double delta, double x);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int panels = 0;
};

/// Independent oracle for arbitrary smooth u: composite 8-point Gauss-Legendre
/// over [0, delta] of u(x+z) - 2u(x) + u(x-z), panels doubled until the
/// Richardson estimate drops below 1e-12 relative (panel cap 2^16). Never
/// throws on non-convergence; the achieved estimate is reported.
QuadratureResult apply_quadrature_1d(const std::function<double(double)>& u, double delta,
                                     double x, int panels = 4);

/// 2D operator over the square neighborhood [-delta,delta]^2 with kernel
/// 3/(2 delta^4), evaluated exactly for additive u(x,y) = p(x) + q(y): the
/// transverse integral contributes the factor 2*delta, collapsing each part
/// to the 1D closed form.
double apply_exact_2d_additive(const PolynomialFn& p, const PolynomialFn& q, double delta,
                               double x, double y);

/// Right-hand sides for a manufactured polynomial solution:
///   f_delta(x) = -L_delta u(x)      (nonlocal problem)
///   f_local(x) = -u''(x)            (local limit, C_0 = 1)
struct RhsFunctions {
    std::function<double(double)> f_delta;
    std::function<double(double)> f_local;
};

RhsFunctions rhs_builder(const PolynomialFn& u_exact, const KernelSpec& kernel);

}  // namespace nlcolloc
