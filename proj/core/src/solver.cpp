#include "nlcolloc/solver.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace nlcolloc {

namespace {
double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

SolveReport solve_direct(const CollocationSystem& sys) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.method = SolveMethod::direct;

    if (sys.scheme == Scheme::shifted_symmetric) {
        Eigen::LLT<Eigen::MatrixXd> llt(sys.matrix);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("solve_direct: Cholesky failed on shifted system");
        rep.solution = llt.solve(sys.rhs);
    } else {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
        rep.solution = lu.solve(sys.rhs);
    }

    const double rhs_norm = sys.rhs.norm();
    const double res = (sys.matrix * rep.solution - sys.rhs).norm();
    rep.rel_residual = rhs_norm > 0.0 ? res / rhs_norm : res;
    if (!std::isfinite(rep.rel_residual) || rep.rel_residual > 1e-8)
        throw std::runtime_error("solve_direct: system singular to working precision (residual " +
                                 std::to_string(rep.rel_residual) + ")");
    rep.seconds = elapsed_since(t0);
    return rep;
}

SolveReport solve_cg(const LinearOperator& op, const Eigen::VectorXd& rhs, double tol,
                     int max_iter) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.method = SolveMethod::cg;

    const double rhs_norm = rhs.norm();
    rep.solution = Eigen::VectorXd::Zero(rhs.size());
    if (rhs_norm == 0.0) {
        rep.rel_residual = 0.0;
        rep.seconds = elapsed_since(t0);
        return rep;
    }

    Eigen::VectorXd residual = rhs;
    Eigen::VectorXd p = residual;
    double rr = residual.squaredNorm();
    const double stop = tol * rhs_norm;

    int it = 0;
    while (std::sqrt(rr) > stop && it < max_iter) {
        const Eigen::VectorXd ap = op(p);
        const double pap = p.dot(ap);
        if (!(pap > 0.0))
            throw std::runtime_error("solve_cg: operator not positive definite (p'Ap = " +
                                     std::to_string(pap) + ")");
        const double alpha = rr / pap;
        rep.solution += alpha * p;
        residual -= alpha * ap;
        const double rr_next = residual.squaredNorm();
        p = residual + (rr_next / rr) * p;
        rr = rr_next;
        ++it;
    }
    rep.iterations = it;
    rep.rel_residual = std::sqrt(rr) / rhs_norm;
    rep.seconds = elapsed_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// FFT block-Toeplitz matvec

namespace {

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

/// One circulant-embedded Toeplitz block: spectrum of the generator is
/// precomputed; multiply adds T*x into an accumulator spectrum.
struct ToeplitzBlock {
    int rows = 0, cols = 0;
    std::vector<std::complex<double>> spectrum;  // FFT of the circulant generator
};

}  // namespace

struct ToeplitzOperator::Impl {
    int N = 0;
    int L = 0;       // common embedding length (power of two >= 2N+2)
    int spec_len = 0;
    ToeplitzBlock A, B, C, D;  // [A B; C D] with A NxN, D (N+1)x(N+1)

    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    fftw_plan fwd = nullptr, bwd = nullptr;

    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (real_buf) fftw_free(real_buf);
        if (cplx_buf) fftw_free(cplx_buf);
    }

    std::vector<std::complex<double>> fft_of(const std::vector<double>& v) {
        std::fill(real_buf, real_buf + L, 0.0);
        std::copy(v.begin(), v.end(), real_buf);
        fftw_execute(fwd);
        std::vector<std::complex<double>> out(static_cast<size_t>(spec_len));
        for (int i = 0; i < spec_len; ++i) out[static_cast<size_t>(i)] = {cplx_buf[i][0], cplx_buf[i][1]};
        return out;
    }

    void make_block(ToeplitzBlock& blk, int rows, int cols, const std::vector<double>& first_col,
                    const std::vector<double>& first_row) {
        blk.rows = rows;
        blk.cols = cols;
        std::vector<double> gen(static_cast<size_t>(L), 0.0);
        for (int i = 0; i < rows; ++i) gen[static_cast<size_t>(i)] = first_col[static_cast<size_t>(i)];
        for (int j = 1; j < cols; ++j) gen[static_cast<size_t>(L - j)] = first_row[static_cast<size_t>(j)];
        blk.spectrum = fft_of(gen);
    }
};

ToeplitzOperator::ToeplitzOperator(const CollocationSystem& sys) : impl_(new Impl) {
    const int N = sys.N;
    const int r = sys.r;
    const double eta = sys.eta;
    impl_->N = N;
    impl_->L = next_pow2(2 * (N + 1));
    impl_->spec_len = impl_->L / 2 + 1;
    impl_->real_buf = fftw_alloc_real(static_cast<size_t>(impl_->L));
    impl_->cplx_buf = fftw_alloc_complex(static_cast<size_t>(impl_->spec_len));
    impl_->fwd = fftw_plan_dft_r2c_1d(impl_->L, impl_->real_buf, impl_->cplx_buf, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_c2r_1d(impl_->L, impl_->cplx_buf, impl_->real_buf, FFTW_ESTIMATE);

    const SymmetricWeights aw = symmetric_weights(r, sys.h);
    auto a_at = [&](int m) { return m <= r ? -eta * aw.a_whole[static_cast<size_t>(m)] : 0.0; };
    // half-offset value at distance (k + 1/2) from a whole center
    auto b_at = [&](int k) { return k < r ? -eta * aw.a_half[static_cast<size_t>(k)] : 0.0; };

    std::vector<double> colA(static_cast<size_t>(N)), rowA(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) colA[static_cast<size_t>(i)] = rowA[static_cast<size_t>(i)] = a_at(i);
    impl_->make_block(impl_->A, N, N, colA, rowA);

    std::vector<double> colAt(static_cast<size_t>(N + 1)), rowAt(static_cast<size_t>(N + 1));
    for (int i = 0; i <= N; ++i) colAt[static_cast<size_t>(i)] = rowAt[static_cast<size_t>(i)] = a_at(i);

    // B(i,j): coefficient of half unknown x_{j+1/2} in the whole-point row at
    // x_{i+1}; depends on i-j with value b(|i-j|) above and b(|i-j+1|-1)...
    // concretely col = (b_0, b_1, ...), row = (b_0, b_0, b_1, ...).
    std::vector<double> colB(static_cast<size_t>(N)), rowB(static_cast<size_t>(N + 1));
    for (int i = 0; i < N; ++i) colB[static_cast<size_t>(i)] = b_at(i);
    rowB[0] = b_at(0);
    for (int j = 1; j <= N; ++j) rowB[static_cast<size_t>(j)] = b_at(j - 1);
    impl_->make_block(impl_->B, N, N + 1, colB, rowB);

    if (sys.scheme == Scheme::shifted_symmetric) {
        impl_->make_block(impl_->D, N + 1, N + 1, colAt, rowAt);
        // C = B^T
        std::vector<double> colC(static_cast<size_t>(N + 1)), rowC(static_cast<size_t>(N));
        colC[0] = b_at(0);
        for (int i = 1; i <= N; ++i) colC[static_cast<size_t>(i)] = b_at(i - 1);
        for (int j = 0; j < N; ++j) rowC[static_cast<size_t>(j)] = b_at(j);
        impl_->make_block(impl_->C, N + 1, N, colC, rowC);
    } else {
        const HalfPointWeights cdw = halfpoint_weights(r);
        auto d_at = [&](int m) { return m <= r ? -eta * cdw.d[static_cast<size_t>(m)] : 0.0; };
        auto c_at = [&](int k) { return k <= r ? -eta * cdw.c[static_cast<size_t>(k)] : 0.0; };
        std::vector<double> colD(static_cast<size_t>(N + 1)), rowD(static_cast<size_t>(N + 1));
        for (int i = 0; i <= N; ++i) colD[static_cast<size_t>(i)] = rowD[static_cast<size_t>(i)] = d_at(i);
        impl_->make_block(impl_->D, N + 1, N + 1, colD, rowD);
        std::vector<double> colC(static_cast<size_t>(N + 1)), rowC(static_cast<size_t>(N));
        colC[0] = c_at(0);
        for (int i = 1; i <= N; ++i) colC[static_cast<size_t>(i)] = c_at(i - 1);
        for (int j = 0; j < N; ++j) rowC[static_cast<size_t>(j)] = c_at(j);
        impl_->make_block(impl_->C, N + 1, N, colC, rowC);
    }
}

ToeplitzOperator::~ToeplitzOperator() = default;

int ToeplitzOperator::size() const { return 2 * impl_->N + 1; }

Eigen::VectorXd ToeplitzOperator::multiply(const Eigen::VectorXd& v) {
    Impl& im = *impl_;
    const int N = im.N;
    if (v.size() != 2 * N + 1)
        throw std::invalid_argument("ToeplitzOperator::multiply: size mismatch");

    std::vector<double> xw(static_cast<size_t>(N)), xh(static_cast<size_t>(N + 1));
    for (int i = 0; i < N; ++i) xw[static_cast<size_t>(i)] = v[i];
    for (int i = 0; i <= N; ++i) xh[static_cast<size_t>(i)] = v[N + i];

    const auto Xw = im.fft_of(xw);
    const auto Xh = im.fft_of(xh);

    Eigen::VectorXd out(2 * N + 1);
    auto inverse_into = [&](const std::vector<std::complex<double>>& spec, int count, int offset) {
        for (int i = 0; i < im.spec_len; ++i) {
            im.cplx_buf[i][0] = spec[static_cast<size_t>(i)].real();
            im.cplx_buf[i][1] = spec[static_cast<size_t>(i)].imag();
        }
        fftw_execute(im.bwd);
        const double scale = 1.0 / im.L;
        for (int i = 0; i < count; ++i) out[offset + i] = im.real_buf[i] * scale;
    };

    std::vector<std::complex<double>> acc(static_cast<size_t>(im.spec_len));
    for (int i = 0; i < im.spec_len; ++i)
        acc[static_cast<size_t>(i)] = im.A.spectrum[static_cast<size_t>(i)] * Xw[static_cast<size_t>(i)] +
                                      im.B.spectrum[static_cast<size_t>(i)] * Xh[static_cast<size_t>(i)];
    inverse_into(acc, N, 0);
    for (int i = 0; i < im.spec_len; ++i)
        acc[static_cast<size_t>(i)] = im.C.spectrum[static_cast<size_t>(i)] * Xw[static_cast<size_t>(i)] +
                                      im.D.spectrum[static_cast<size_t>(i)] * Xh[static_cast<size_t>(i)];
    inverse_into(acc, N + 1, N);
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

/// Smallest Ritz value from a short Lanczos run with full reorthogonalization.
double smallest_ritz_value(const Eigen::MatrixXd& A, int steps, unsigned seed) {
    const int n = static_cast<int>(A.rows());
    steps = std::min(steps, n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    v.normalize();

    Eigen::MatrixXd V(n, steps);
    Eigen::VectorXd alpha(steps), beta(steps);
    Eigen::VectorXd w;
    double b_prev = 0.0;
    Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(n);
    int k = 0;
    for (; k < steps; ++k) {
        V.col(k) = v;
        w = A * v;
        alpha[k] = v.dot(w);
        w -= alpha[k] * v + b_prev * v_prev;
        w -= V.leftCols(k + 1) * (V.leftCols(k + 1).transpose() * w);  // reorthogonalize
        const double b = w.norm();
        beta[k] = b;
        if (b < 1e-13) {
            ++k;
            break;
        }
        v_prev = v;
        v = w / b;
        b_prev = b;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    return es.eigenvalues().minCoeff();
}

}  // namespace

MatrixCertificate certify_matrix(const CollocationSystem& sys) {
    MatrixCertificate cert;
    const Eigen::MatrixXd& A = sys.matrix;
    const int n = static_cast<int>(A.rows());

    cert.max_asymmetry = (A - A.transpose()).cwiseAbs().maxCoeff();
    cert.symmetric = cert.max_asymmetry == 0.0;

    cert.diagonally_dominant = true;
    const double dd_tol = 1e-12 * A.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
        const double off = A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
        if (A(i, i) <= 0.0 || off > A(i, i) + dd_tol) {
            cert.diagonally_dominant = false;
            break;
        }
    }

    const double delta = sys.delta;
    cert.lemma_bound = (1.0 + 4.0 * delta * (1.0 + delta)) / 8.0;

    if (cert.symmetric) {
        Eigen::LLT<Eigen::MatrixXd> llt(A);
        const bool chol_ok = llt.info() == Eigen::Success;
        cert.smallest_ritz = smallest_ritz_value(A, 40, 0x5eed);
        cert.positive_definite = chol_ok && cert.smallest_ritz > 0.0;

        if (cert.positive_definite) {
            if (sys.N <= 400) {
                const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
                cert.inverse_checked = true;
                cert.min_inverse_entry = inv.minCoeff();
                cert.inverse_positive = cert.min_inverse_entry > 0.0;
                cert.inv_inf_norm = inv.cwiseAbs().rowwise().sum().maxCoeff();
            } else {
                // rely on inverse positivity: ||A^-1||_inf = max of A^-1 * ones
                const Eigen::VectorXd y = llt.solve(Eigen::VectorXd::Ones(n));
                cert.inv_inf_norm = y.cwiseAbs().maxCoeff();
            }
        }
    } else if (n <= 401) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(A);
        int neg = 0;
        for (int i = 0; i < n; ++i)
            if (es.eigenvalues()[i].real() < 0.0) ++neg;
        cert.negative_eigen_count = neg;
        const Eigen::MatrixXd inv = A.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
        cert.inverse_checked = true;
        cert.min_inverse_entry = inv.minCoeff();
        cert.inverse_positive = cert.min_inverse_entry > 0.0;
        cert.inv_inf_norm = inv.cwiseAbs().rowwise().sum().maxCoeff();
    }
    return cert;
}

MaxPrincipleReport max_principle_check(const CollocationSystem& sys,
                                       const Eigen::VectorXd& solution) {
    const bool nonpos = (sys.f_values.array() <= 0.0).all();
    const bool nonneg = (sys.f_values.array() >= 0.0).all();
    if (!nonpos && !nonneg)
        throw std::invalid_argument("max_principle_check: f is not sign-definite on the interior");

    MaxPrincipleReport rep;
    if (sys.g_values.empty()) throw std::logic_error("max_principle_check: no constraint values");
    double gmin = sys.g_values.front(), gmax = sys.g_values.front();
    for (double v : sys.g_values) {
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
    }
    if (nonpos) {
        const double umax = solution.maxCoeff();
        rep.holds = umax <= gmax;
        rep.slack = gmax - umax;
    } else {
        const double umin = solution.minCoeff();
        rep.holds = umin >= gmin;
        rep.slack = umin - gmin;
    }
    return rep;
}

}  // namespace nlcolloc
