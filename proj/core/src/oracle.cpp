#include "nlcolloc/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace nlcolloc {

PolynomialFn::PolynomialFn(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double PolynomialFn::operator()(double x) const {
    double v = 0.0;
    for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

PolynomialFn PolynomialFn::derivative() const {
    if (c_.size() <= 1) return PolynomialFn({0.0});
    std::vector<double> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return PolynomialFn(std::move(d));
}

KernelSpec make_kernel(int dimension, double delta) {
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("make_kernel: dimension must be 1 or 2");
    if (!(delta > 0.0)) throw std::invalid_argument("make_kernel: delta must be positive");
    KernelSpec k;
    k.dimension = dimension;
    k.delta = delta;
    const double d3 = delta * delta * delta;
    k.value = (dimension == 1) ? 3.0 / d3 : 3.0 / (2.0 * d3 * delta);
    return k;
}

double apply_exact_1d(const PolynomialFn& u, double delta, double x) {
    if (u.degree() > 12)
        throw std::invalid_argument("apply_exact_1d: polynomial degree above 12 not supported");
    double sum = 0.0;
    PolynomialFn d = u.derivative().derivative();  // u''
    double delta_pow = 1.0;                        // delta^(2k-2)
    double factorial = 2.0;                        // (2k)!
    for (int k = 1; 2 * k <= 12; ++k) {
        if (k > 1) {
            d = d.derivative().derivative();
            delta_pow *= delta * delta;
            factorial *= (2.0 * k - 1.0) * (2.0 * k);
        }
        if (d.degree() == 0 && d.coeffs()[0] == 0.0) break;
        sum += d(x) * delta_pow / (factorial * (2.0 * k + 1.0));
    }
    return 6.0 * sum;
}

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGL8Nodes[8] = {
    -0.9602898564975362316835609, -0.7966664774136267395915539,
    -0.5255324099163289858177390, -0.1834346424956498049394761,
    0.1834346424956498049394761,  0.5255324099163289858177390,
    0.7966664774136267395915539,  0.9602898564975362316835609};
constexpr double kGL8Weights[8] = {
    0.1012285362903762591525314, 0.2223810344533744705443560,
    0.3137066458778872873379622, 0.3626837833783619829651504,
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

double composite_gl8(const std::function<double(double)>& phi, double a, double b, int panels) {
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * w;
        double s = 0.0;
        for (int i = 0; i < 8; ++i) s += kGL8Weights[i] * phi(mid + 0.5 * w * kGL8Nodes[i]);
        total += 0.5 * w * s;
    }
    return total;
}

}  // namespace

QuadratureResult apply_quadrature_1d(const std::function<double(double)>& u, double delta,
                                     double x, int panels) {
    if (!(delta > 0.0)) throw std::invalid_argument("apply_quadrature_1d: delta must be positive");
    if (panels < 4) panels = 4;
    const double u_center = u(x);
    auto phi = [&](double z) { return u(x + z) - 2.0 * u_center + u(x - z); };
    const double scale = 3.0 / (delta * delta * delta);

    QuadratureResult res;
    double prev = scale * composite_gl8(phi, 0.0, delta, panels);
    for (int p = 2 * panels; p <= (1 << 16); p *= 2) {
        const double cur = scale * composite_gl8(phi, 0.0, delta, p);
        res.error_estimate = std::abs(cur - prev);
        res.value = cur;
        res.panels = p;
        if (res.error_estimate <= 1e-12 * std::max(std::abs(cur), 1e-30)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    res.converged = false;
    return res;
}

double apply_exact_2d_additive(const PolynomialFn& p, const PolynomialFn& q, double delta,
                               double x, double y) {
    return apply_exact_1d(p, delta, x) + apply_exact_1d(q, delta, y);
}

RhsFunctions rhs_builder(const PolynomialFn& u_exact, const KernelSpec& kernel) {
    RhsFunctions fns;
    const double delta = kernel.delta;
    fns.f_delta = [u_exact, delta](double x) { return -apply_exact_1d(u_exact, delta, x); };
    PolynomialFn upp = u_exact.derivative().derivative();
    fns.f_local = [upp](double x) { return -upp(x); };
    return fns;
}

}  // namespace nlcolloc
