#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <vector>

#include "nlcolloc/grid.hpp"
#include "nlcolloc/stencil.hpp"

namespace nlcolloc {

enum class Scheme { shifted_symmetric, standard };

const char* scheme_name(Scheme s);

/// One stencil reference moved off the matrix: rhs[row] += coeff * g(point).
struct ScatterEntry {
    int row;
    int idx2;
    double coeff;  // eta-scaled weight
};

/// Assembled 1D collocation system  A u = rhs  of size 2N+1. Row k encodes
/// -L u = f at the k-th unknown's site; references to constraint sites are
/// folded into rhs and logged in scatter. f and g samples are retained for
/// the maximum-principle and scatter checks.
struct CollocationSystem {
    Scheme scheme = Scheme::shifted_symmetric;
    int N = 0;
    int r = 0;
    double h = 0.0;
    double eta = 0.0;
    double delta = 0.0;  // physical horizon (metadata; operator uses r*h)
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    std::vector<ScatterEntry> scatter;
    Eigen::VectorXd f_values;        // f at interior sites, unknown order
    std::vector<double> g_values;    // g at constraint sites, ascending idx2

    int size() const { return 2 * N + 1; }
    double delta_tilde() const { return r * h; }

    /// Coordinate text dump "row col value" (0-based), one entry per line.
    void dump_coordinate(std::ostream& os) const;
};

CollocationSystem assemble_1d(Scheme scheme, const Mesh1D& mesh, const HorizonSpec& spec,
                              const std::function<double(double)>& f, const VolumeConstraint& g);

inline CollocationSystem assemble_standard_1d(const Mesh1D& mesh, const HorizonSpec& spec,
                                              const std::function<double(double)>& f,
                                              const VolumeConstraint& g) {
    return assemble_1d(Scheme::standard, mesh, spec, f, g);
}

struct ScatterCheckReport {
    bool equal = false;
    double max_diff = 0.0;
};

/// Rebuilds the constraint contribution of the shifted scheme from the
/// closed-form boundary vectors (upper-triangular Toeplitz matrices of collar
/// values times weight vectors) and compares against the generic per-row
/// scatter. Needs N >= 2r so the left/right interface blocks do not overlap.
ScatterCheckReport scatter_equivalence_check(const Mesh1D& mesh, const HorizonSpec& spec,
                                             const VolumeConstraint& g);

/// Matrix-free 2D operator on the tensor collocation grid,
///   A = (K (x) I) + (I (x) K) - (dt^2/6) (K (x) K),
/// where K is the 1D shifted-symmetric operator along one axis. Derived by
/// factorizing the square-neighborhood integral through tensor-product
/// composite-Simpson weights; consistent with the local Laplacian limit and
/// exact on additive fields.
class Kron2DOperator {
public:
    Kron2DOperator(const Mesh1D& mesh, const HorizonSpec& spec);

    int unknowns() const { return n1_ * n1_; }
    const Mesh1D& mesh() const { return mesh_; }
    double delta_tilde() const { return weights_.r * mesh_.h(); }

    /// A * v with zero collar (the linear part acting on interior unknowns).
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

    /// rhs = f at interior sites minus the operator applied to the
    /// zero-interior / collar-valued field.
    Eigen::VectorXd build_rhs(const std::function<double(double, double)>& f2d,
                              const std::function<double(double, double)>& g2d) const;

    /// Full operator applied to a sampled field (interior and collar alike);
    /// used by truncation and consistency probes.
    Eigen::VectorXd apply_to_field(const std::function<double(double, double)>& u) const;

    /// The (K (x) K) part alone on a sampled field.
    Eigen::VectorXd cross_term_of_field(const std::function<double(double, double)>& u) const;

    int interior_ordinal(int ix2, int iy2) const {
        return (ix2 - 1) * n1_ + (iy2 - 1);
    }
    double point(int idx2) const { return mesh_.point(idx2); }
    int n1() const { return n1_; }

private:
    using Buffer = std::vector<double>;

    int at(int ix2, int iy2) const {  // flat index into extended buffers
        return (ix2 - lo2_) * dim_ + (iy2 - lo2_);
    }
    void apply_raw(const Buffer& extended, Eigen::VectorXd& out) const;

    Mesh1D mesh_;
    SymmetricWeights weights_;
    int n1_;   // 2N+1 interior sites per axis
    int lo2_, hi2_, dim_;
};

struct System2D {
    Kron2DOperator op;
    Eigen::VectorXd rhs;
};

System2D assemble_2d(const Mesh1D& mesh, const HorizonSpec& spec,
                     const std::function<double(double, double)>& f2d,
                     const std::function<double(double, double)>& g2d);

}  // namespace nlcolloc
