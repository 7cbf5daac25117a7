#include "nlcolloc/stencil.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlcolloc {

namespace {
void require_radius(int r, const char* where) {
    if (r < 1)
        throw std::invalid_argument(std::string(where) + ": radius must be >= 1, got " +
                                    std::to_string(r));
}
}  // namespace

double SymmetricWeights::zero_sum() const {
    double s = a_whole[0];
    for (int m = 1; m <= r; ++m) s += 2.0 * a_whole[static_cast<size_t>(m)];
    for (int m = 0; m < r; ++m) s += 2.0 * a_half[static_cast<size_t>(m)];
    return s;
}

SymmetricWeights symmetric_weights(int r, double h) {
    require_radius(r, "symmetric_weights");
    if (!(h > 0.0)) throw std::invalid_argument("symmetric_weights: h must be positive");
    SymmetricWeights w;
    w.r = r;
    const double dt = r * h;
    w.eta = h / (2.0 * dt * dt * dt);
    w.a_whole.assign(static_cast<size_t>(r) + 1, 2.0);
    w.a_whole[0] = 2.0 - 12.0 * r;
    w.a_whole[static_cast<size_t>(r)] = 1.0;
    w.a_half.assign(static_cast<size_t>(r), 4.0);
    return w;
}

double HalfPointWeights::zero_sum() const {
    double s = d[0];
    for (int m = 0; m <= r; ++m) s += 2.0 * c[static_cast<size_t>(m)];
    for (int m = 1; m <= r; ++m) s += 2.0 * d[static_cast<size_t>(m)];
    return s;
}

HalfPointWeights halfpoint_weights(int r) {
    require_radius(r, "halfpoint_weights");
    HalfPointWeights w;
    w.r = r;
    w.c.assign(static_cast<size_t>(r) + 1, 2.0);
    w.c[static_cast<size_t>(r - 1)] = 2.25;   // 9/4; for r=1 this is c_0
    w.c[static_cast<size_t>(r)] = -0.25;      // -1/4
    w.d.assign(static_cast<size_t>(r) + 1, 4.0);
    w.d[0] = 4.0 - 12.0 * r;
    w.d[static_cast<size_t>(r)] = 2.0;
    return w;
}

PerturbationWeights perturbation_weights(int r) {
    require_radius(r, "perturbation_weights");
    PerturbationWeights w;
    w.r = r;
    w.p.assign(static_cast<size_t>(r) + 1, 1.0 / 3.0);
    w.p[static_cast<size_t>(r)] = 1.0 / 6.0;
    w.q.assign(static_cast<size_t>(r) + 1, -1.0 / 3.0);
    w.q[static_cast<size_t>(r - 1)] = -7.0 / 24.0;
    w.q[static_cast<size_t>(r)] = -1.0 / 24.0;
    const double r2 = static_cast<double>(r) * r;
    w.bound_const = (2.0 / 15.0) * r2 * r2 + (2.0 / 9.0) * r2 + 29.0 / 720.0;
    return w;
}

SimpsonWeights simpson_weights(int r) {
    require_radius(r, "simpson_weights");
    SimpsonWeights w;
    w.r = r;
    w.b_whole.assign(static_cast<size_t>(r) + 1, 2.0);
    w.b_whole[static_cast<size_t>(r)] = 1.0;
    w.b_half = 4.0;
    return w;
}

namespace {
double accumulate_shifted(const SymmetricWeights& w, const ExtendedField1D& field, int center2) {
    double s = 0.0;
    visit_shifted(w, center2, [&](int idx2, double wt) { s += wt * field.at(idx2); });
    return w.eta * s;
}
}  // namespace

double apply_stencil_whole(const SymmetricWeights& w, const ExtendedField1D& field, int center2) {
    if (center2 % 2 != 0)
        throw std::invalid_argument("apply_stencil_whole: center must be a whole point");
    return accumulate_shifted(w, field, center2);
}

double apply_stencil_half_shifted(const SymmetricWeights& w, const ExtendedField1D& field,
                                  int center2) {
    if (center2 % 2 == 0)
        throw std::invalid_argument("apply_stencil_half_shifted: center must be a half point");
    return accumulate_shifted(w, field, center2);
}

double apply_stencil_half_standard(const HalfPointWeights& w, double eta,
                                   const ExtendedField1D& field, int center2) {
    if (center2 % 2 == 0)
        throw std::invalid_argument("apply_stencil_half_standard: center must be a half point");
    double s = 0.0;
    visit_standard_half(w, center2, [&](int idx2, double wt) { s += wt * field.at(idx2); });
    return eta * s;
}

double perturbation_expansion(const PerturbationWeights& pw, double h, double delta_tilde,
                              const ExtendedField1D& field, int center2) {
    if (center2 % 2 == 0)
        throw std::invalid_argument("perturbation_expansion: center must be a half point");
    const int r = pw.r;
    double s = pw.p[0] * field.at(center2);
    for (int m = 1; m <= r; ++m)
        s += pw.p[static_cast<size_t>(m)] * (field.at(center2 + 2 * m) + field.at(center2 - 2 * m));
    // q_{m-1} weighs the whole-point pair at distance (m-1/2)h, m = 1..r+1
    for (int m = 1; m <= r + 1; ++m)
        s += pw.q[static_cast<size_t>(m - 1)] *
             (field.at(center2 + 2 * m - 1) + field.at(center2 - 2 * m + 1));
    const double dt3 = delta_tilde * delta_tilde * delta_tilde;
    return 3.0 * h / dt3 * s;
}

}  // namespace nlcolloc
