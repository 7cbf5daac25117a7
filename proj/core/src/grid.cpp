#include "nlcolloc/grid.hpp"

#include <cmath>
#include <string>

namespace nlcolloc {

HorizonSpec horizon_decompose(double delta, double h) {
    if (!(delta > 0.0))
        throw std::invalid_argument("horizon_decompose: delta must be positive, got " +
                                    std::to_string(delta));
    if (!(h > 0.0))
        throw std::invalid_argument("horizon_decompose: h must be positive, got " +
                                    std::to_string(h));

    HorizonSpec s;
    s.delta = delta;
    s.h = h;

    const double ratio = delta / h;
    if (ratio >= 1.0) {
        int r = static_cast<int>(std::floor(ratio));
        double r0 = ratio - r;
        const double tol = 1e-12 * std::max(1.0, static_cast<double>(r));
        if (r0 < tol) {
            r0 = 0.0;
        } else if (1.0 - r0 < tol) {
            // ratio sits just below the next integer: snap up
            r += 1;
            r0 = 0.0;
        }
        s.r = r;
        s.r0 = r0;
        s.delta_tilde = r * h;
        s.aligned = (r0 == 0.0);
    } else {
        // delta < h: radius 1, delta = delta_tilde - r0*h
        s.r = 1;
        s.delta_tilde = h;
        double r0 = 1.0 - ratio;
        if (r0 < 1e-12) r0 = 0.0;
        s.r0 = r0;
        s.aligned = (r0 == 0.0);
    }
    return s;
}

Mesh1D::Mesh1D(int N, const HorizonSpec& spec) : N_(N), r_(spec.r), h_(1.0 / (N + 1)) {
    if (N < 1) throw std::invalid_argument("Mesh1D: N must be positive, got " + std::to_string(N));
    if (r_ < 1) throw std::invalid_argument("Mesh1D: stencil radius must be positive");
    if (N < 2 * r_ - 1)
        throw std::invalid_argument("Mesh1D: N = " + std::to_string(N) +
                                    " too small for stencil radius r = " + std::to_string(r_) +
                                    " (need N >= 2r-1)");
    out_.reserve(2 * (2 * r_ + 1));
    for (int idx2 = lo2(); idx2 <= 0; ++idx2) out_.push_back(idx2);
    for (int idx2 = 2 * (N_ + 1); idx2 <= hi2(); ++idx2) out_.push_back(idx2);
}

Mesh1D build_mesh(int N, const HorizonSpec& spec) { return Mesh1D(N, spec); }

ExtendedField1D ExtendedField1D::sample(const Mesh1D& mesh, const std::function<double(double)>& u) {
    ExtendedField1D f(mesh.lo2(), mesh.hi2());
    for (int idx2 = mesh.lo2(); idx2 <= mesh.hi2(); ++idx2) f.at(idx2) = u(mesh.point(idx2));
    return f;
}

}  // namespace nlcolloc
