#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "nlcolloc/assembly.hpp"

namespace nlcolloc {

enum class SolveMethod { direct, cg };

struct SolveReport {
    Eigen::VectorXd solution;
    SolveMethod method = SolveMethod::direct;
    int iterations = 0;
    double rel_residual = 0.0;
    double seconds = 0.0;
};

/// Factorization solve of a dense 1D system: Cholesky for the shifted scheme,
/// partially pivoted LU for the standard (nonsymmetric, indefinite) one.
/// Throws if the factorization breaks down or the residual exceeds 1e-8.
SolveReport solve_direct(const CollocationSystem& sys);

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Conjugate gradients on a symmetric positive definite operator. Converges
/// to ||r|| <= tol * ||rhs||; throws "operator not positive definite" on
/// detected nonpositive curvature, and reports nonconvergence via the
/// residual in the returned report (iterations == max_iter).
SolveReport solve_cg(const LinearOperator& op, const Eigen::VectorXd& rhs, double tol = 1e-11,
                     int max_iter = 100000);

/// O(N log N) matvec of the 1D block-Toeplitz collocation matrix via
/// circulant embedding and real FFTs. Built from the scheme weights, so it is
/// independent of the dense storage it is checked against.
class ToeplitzOperator {
public:
    explicit ToeplitzOperator(const CollocationSystem& sys);
    ~ToeplitzOperator();
    ToeplitzOperator(const ToeplitzOperator&) = delete;
    ToeplitzOperator& operator=(const ToeplitzOperator&) = delete;

    /// Not safe for concurrent calls on the same instance (shared FFT buffers).
    Eigen::VectorXd multiply(const Eigen::VectorXd& v);

    int size() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Numerical certificate of the matrix-analysis claims: symmetry, weak
/// diagonal dominance, positive definiteness (Cholesky + smallest Ritz value
/// of a short Lanczos run), inverse positivity (explicit inverse, small N),
/// and the inverse infinity-norm against the barrier bound
/// (1 + 4 delta (1 + delta)) / 8.
struct MatrixCertificate {
    bool symmetric = false;
    double max_asymmetry = 0.0;
    bool diagonally_dominant = false;
    bool positive_definite = false;
    double smallest_ritz = 0.0;
    bool inverse_checked = false;   // explicit inverse computed (n small enough)
    bool inverse_positive = false;
    double min_inverse_entry = 0.0;
    double inv_inf_norm = 0.0;
    double lemma_bound = 0.0;
    int negative_eigen_count = -1;  // standard scheme, small n only; -1 if not measured
};

MatrixCertificate certify_matrix(const CollocationSystem& sys);

struct MaxPrincipleReport {
    bool holds = false;
    double slack = 0.0;  // distance to the binding bound
};

/// Discrete maximum principle of the shifted scheme: f <= 0 forces the
/// interior max below the constraint max, f >= 0 the interior min above the
/// constraint min. Throws if the stored f samples are not sign-definite.
MaxPrincipleReport max_principle_check(const CollocationSystem& sys,
                                       const Eigen::VectorXd& solution);

}  // namespace nlcolloc
