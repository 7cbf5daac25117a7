#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nlcolloc {

/// Decomposition of a horizon delta against a mesh width h:
///   delta >= h:  delta = delta_tilde + r0*h,  r = floor(delta/h)
///   delta <  h:  delta = delta_tilde - r0*h,  r = 1, delta_tilde = h
/// with delta_tilde = r*h and r0 in [0,1). The discrete operator always acts
/// with radius r (i.e. with delta_tilde); the physical delta only enters the
/// right-hand side.
struct HorizonSpec {
    double delta = 0.0;
    double h = 0.0;
    int r = 0;
    double r0 = 0.0;
    double delta_tilde = 0.0;
    bool aligned = false;
    std::optional<double> beta_hint;  // delta = O(h^beta), metadata only
};

/// Splits delta into (r, r0, delta_tilde). Throws std::invalid_argument on
/// nonpositive inputs. r0 below 1e-12*max(1,r) (relative) snaps to 0 so that
/// floating-point multiples of h take the aligned code path.
HorizonSpec horizon_decompose(double delta, double h);

/// Collar data: g evaluated on [-delta_tilde, 0] u [1, 1 + delta_tilde].
/// Note the domain is the *numerical* collar (width delta_tilde), which for
/// delta < h strictly contains the physical constraint region.
struct VolumeConstraint {
    std::function<double(double)> g;

    double operator()(double x) const { return g(x); }
    static VolumeConstraint zero() {
        return {[](double) { return 0.0; }};
    }
    static VolumeConstraint constant(double c) {
        return {[c](double) { return c; }};
    }
};

/// Uniform collocation mesh on [0,1] with N interior whole points, h=1/(N+1),
/// plus a collar of width r*h on each side. Collocation sites live at whole
/// and half grid points; indices are stored doubled (site j/2 has key j) so
/// that all index arithmetic stays integral.
///
/// Index domain: doubled indices -2r .. 2(N+r+1).
/// Interior set (the unknowns): doubled 1 .. 2N+1, i.e. x_{1/2} .. x_{N+1/2}.
/// Unknown ordering: whole points x_1..x_N first, then halves x_{1/2}..x_{N+1/2}.
class Mesh1D {
public:
    Mesh1D(int N, const HorizonSpec& spec);

    int N() const { return N_; }
    int r() const { return r_; }
    double h() const { return h_; }
    int unknowns() const { return 2 * N_ + 1; }

    int lo2() const { return -2 * r_; }
    int hi2() const { return 2 * (N_ + r_ + 1); }

    double point(int idx2) const { return 0.5 * idx2 * h_; }

    bool is_interior(int idx2) const { return idx2 >= 1 && idx2 <= 2 * N_ + 1; }

    /// Position of an interior site in the unknown vector, -1 otherwise.
    int unknown_of(int idx2) const {
        if (!is_interior(idx2)) return -1;
        return (idx2 % 2 == 0) ? idx2 / 2 - 1 : N_ + (idx2 - 1) / 2;
    }

    int idx2_of_unknown(int k) const {
        return (k < N_) ? 2 * (k + 1) : 2 * (k - N_) + 1;
    }

    /// Constraint (collar) doubled indices, ascending.
    const std::vector<int>& constraint_indices() const { return out_; }

private:
    int N_;
    int r_;
    double h_;
    std::vector<int> out_;
};

/// Builds the mesh, checking that N is large enough for radius r.
Mesh1D build_mesh(int N, const HorizonSpec& spec);

/// Values at every site of the extended doubled-index domain. Used to apply
/// stencils to known functions (truncation probes, 2D sweeps) and to carry
/// interior unknowns together with collar data.
class ExtendedField1D {
public:
    ExtendedField1D(int lo2, int hi2)
        : lo2_(lo2), hi2_(hi2), v_(static_cast<size_t>(hi2 - lo2 + 1), 0.0) {}

    static ExtendedField1D sample(const Mesh1D& mesh, const std::function<double(double)>& u);

    double at(int idx2) const {
        check(idx2);
        return v_[static_cast<size_t>(idx2 - lo2_)];
    }
    double& at(int idx2) {
        check(idx2);
        return v_[static_cast<size_t>(idx2 - lo2_)];
    }

    int lo2() const { return lo2_; }
    int hi2() const { return hi2_; }

private:
    void check(int idx2) const {
        if (idx2 < lo2_ || idx2 > hi2_)
            throw std::out_of_range("ExtendedField1D: doubled index " + std::to_string(idx2) +
                                    " outside [" + std::to_string(lo2_) + ", " +
                                    std::to_string(hi2_) + "]");
    }

    int lo2_, hi2_;
    std::vector<double> v_;
};

}  // namespace nlcolloc
