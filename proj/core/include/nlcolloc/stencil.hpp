#pragma once

#include <vector>

#include "nlcolloc/grid.hpp"

namespace nlcolloc {

/// Weights of the symmetric (shifted) quadrature stencil of radius r:
///   a_0 = 2 - 12r,  a_m = 2 (1 <= m <= r-1),  a_r = 1,  a_{m+1/2} = 4.
/// The same pattern is applied at whole and at half centers; eta = h/(2*dt^3)
/// with dt = r*h scales the raw weight sum into the operator value.
struct SymmetricWeights {
    int r = 0;
    double eta = 0.0;
    std::vector<double> a_whole;  // a_0 .. a_r
    std::vector<double> a_half;   // a_{1/2} .. a_{r-1/2}; slot m holds offset m+1/2

    /// a_0 + 2*sum(a_m) + 2*sum(a_{m+1/2}); identically zero.
    double zero_sum() const;
};

SymmetricWeights symmetric_weights(int r, double h);

/// Weights of the standard half-point stencil:
///   c_m = 2 (0 <= m <= r-2),  c_{r-1} = 9/4,  c_r = -1/4,
///   d_0 = 4 - 12r,  d_m = 4 (1 <= m <= r-1),  d_r = 2.
/// c_k weighs the whole points at distance (k+1/2)h from the half center,
/// d_k the half points at distance k*h. For r = 1 the interior c-range is
/// empty and c = (9/4, -1/4).
struct HalfPointWeights {
    int r = 0;
    std::vector<double> c;  // c_0 .. c_r
    std::vector<double> d;  // d_0 .. d_r

    /// 2*sum(c_m) + d_0 + 2*sum_{m>=1}(d_m); identically zero.
    double zero_sum() const;
};

HalfPointWeights halfpoint_weights(int r);

/// Weight difference between the standard and the shifted half-point stencil,
/// normalized so that  standard - shifted = (3h/dt^3) * [p,q expansion]:
///   p_m = 1/3 (0 <= m <= r-1),  p_r = 1/6,
///   q_m = -1/3 (0 <= m <= r-2), q_{r-1} = -7/24,  q_r = -1/24.
/// bound_const is C_r = (2/15)r^4 + (2/9)r^2 + 29/720, the constant of the
/// bound  |standard - shifted| <= C_r * (M/4) * h^4 / dt^2.
struct PerturbationWeights {
    int r = 0;
    std::vector<double> p;  // p_0 .. p_r
    std::vector<double> q;  // q_0 .. q_r
    double bound_const = 0.0;
};

PerturbationWeights perturbation_weights(int r);

/// Composite-Simpson panel weights over the stencil window: b_m = 2 for
/// 0 <= m <= r-1, b_r = 1, half-point weight 4. The a-weights are exactly
/// these with the centered mass -12r folded into offset 0.
struct SimpsonWeights {
    int r = 0;
    std::vector<double> b_whole;  // b_0 .. b_r
    double b_half = 4.0;
};

SimpsonWeights simpson_weights(int r);

/// Enumerates the (doubled index, raw weight) pairs of the shifted stencil
/// centered at center2 (whole or half site alike; the pattern only depends on
/// offsets). Weights are unscaled; multiply the sum by w.eta.
template <class Fn>
void visit_shifted(const SymmetricWeights& w, int center2, Fn&& fn) {
    fn(center2, w.a_whole[0]);
    for (int m = 1; m <= w.r; ++m) {
        fn(center2 + 2 * m, w.a_whole[static_cast<size_t>(m)]);
        fn(center2 - 2 * m, w.a_whole[static_cast<size_t>(m)]);
    }
    for (int m = 0; m < w.r; ++m) {
        fn(center2 + 2 * m + 1, w.a_half[static_cast<size_t>(m)]);
        fn(center2 - 2 * m - 1, w.a_half[static_cast<size_t>(m)]);
    }
}

/// Same enumeration for the standard stencil at a half center (center2 odd).
template <class Fn>
void visit_standard_half(const HalfPointWeights& w, int center2, Fn&& fn) {
    for (int k = 0; k <= w.r; ++k) {
        fn(center2 + 2 * k + 1, w.c[static_cast<size_t>(k)]);
        fn(center2 - 2 * k - 1, w.c[static_cast<size_t>(k)]);
    }
    fn(center2, w.d[0]);
    for (int k = 1; k <= w.r; ++k) {
        fn(center2 + 2 * k, w.d[static_cast<size_t>(k)]);
        fn(center2 - 2 * k, w.d[static_cast<size_t>(k)]);
    }
}

/// Discrete operator value at a whole point (center2 even).
double apply_stencil_whole(const SymmetricWeights& w, const ExtendedField1D& field, int center2);

/// Discrete operator value at a half point via the shifted stencil (center2 odd).
double apply_stencil_half_shifted(const SymmetricWeights& w, const ExtendedField1D& field,
                                  int center2);

/// Discrete operator value at a half point via the standard stencil
/// (center2 odd). eta = h/(2*dt^3), same scale as the shifted stencil.
double apply_stencil_half_standard(const HalfPointWeights& w, double eta,
                                   const ExtendedField1D& field, int center2);

/// The (3h/dt^3)-scaled p,q expansion at a half center; by construction equal
/// to apply_stencil_half_standard - apply_stencil_half_shifted.
double perturbation_expansion(const PerturbationWeights& pw, double h, double delta_tilde,
                              const ExtendedField1D& field, int center2);

}  // namespace nlcolloc
