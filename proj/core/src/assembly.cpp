#include "nlcolloc/assembly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nlcolloc {

const char* scheme_name(Scheme s) {
    return s == Scheme::shifted_symmetric ? "shifted" : "standard";
}

namespace {

void check_consistency(const Mesh1D& mesh, const HorizonSpec& spec, const char* where) {
    if (mesh.r() != spec.r)
        throw std::invalid_argument(std::string(where) + ": mesh radius " +
                                    std::to_string(mesh.r()) + " does not match horizon radius " +
                                    std::to_string(spec.r));
    if (std::abs(mesh.h() - spec.h) > 1e-14 * spec.h)
        throw std::invalid_argument(std::string(where) + ": mesh width does not match horizon h");
}

double eval_constraint(const VolumeConstraint& g, double x) {
    double v;
    try {
        v = g(x);
    } catch (const std::exception& e) {
        throw std::runtime_error("assemble: constraint not evaluable at x = " + std::to_string(x) +
                                 " (" + e.what() + ")");
    }
    if (!std::isfinite(v))
        throw std::runtime_error("assemble: constraint value at x = " + std::to_string(x) +
                                 " is not finite");
    return v;
}

}  // namespace

void CollocationSystem::dump_coordinate(std::ostream& os) const {
    const int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (matrix(i, j) != 0.0) {
                char line[64];
                std::snprintf(line, sizeof(line), "%d %d %.17g\n", i, j, matrix(i, j));
                os << line;
            }
}

CollocationSystem assemble_1d(Scheme scheme, const Mesh1D& mesh, const HorizonSpec& spec,
                              const std::function<double(double)>& f, const VolumeConstraint& g) {
    check_consistency(mesh, spec, "assemble_1d");
    const SymmetricWeights aw = symmetric_weights(spec.r, mesh.h());
    const HalfPointWeights cdw = halfpoint_weights(spec.r);

    CollocationSystem sys;
    sys.scheme = scheme;
    sys.N = mesh.N();
    sys.r = spec.r;
    sys.h = mesh.h();
    sys.eta = aw.eta;
    sys.delta = spec.delta;

    const int n = mesh.unknowns();
    sys.matrix = Eigen::MatrixXd::Zero(n, n);
    sys.rhs = Eigen::VectorXd::Zero(n);
    sys.f_values = Eigen::VectorXd::Zero(n);
    sys.g_values.reserve(mesh.constraint_indices().size());
    for (int idx2 : mesh.constraint_indices())
        sys.g_values.push_back(eval_constraint(g, mesh.point(idx2)));

    for (int row = 0; row < n; ++row) {
        const int center2 = mesh.idx2_of_unknown(row);
        auto emit = [&](int idx2, double w) {
            const double coeff = aw.eta * w;
            const int col = mesh.unknown_of(idx2);
            if (col >= 0) {
                sys.matrix(row, col) -= coeff;
            } else {
                sys.rhs[row] += coeff * eval_constraint(g, mesh.point(idx2));
                sys.scatter.push_back({row, idx2, coeff});
            }
        };
        if (scheme == Scheme::standard && center2 % 2 != 0)
            visit_standard_half(cdw, center2, emit);
        else
            visit_shifted(aw, center2, emit);

        const double fv = f(mesh.point(center2));
        sys.f_values[row] = fv;
        sys.rhs[row] += fv;
    }
    return sys;
}

namespace {

/// y[i] = sum_t gvals[t] * wvec[i+t]  (upper-triangular Toeplitz of collar
/// values applied to a weight vector; both of length wvec.size()).
std::vector<double> triu_toeplitz_apply(const std::vector<double>& gvals,
                                        const std::vector<double>& wvec) {
    const size_t L = wvec.size();
    std::vector<double> y(L, 0.0);
    for (size_t i = 0; i < L; ++i)
        for (size_t t = 0; i + t < L; ++t) y[i] += gvals[t] * wvec[i + t];
    return y;
}

}  // namespace

ScatterCheckReport scatter_equivalence_check(const Mesh1D& mesh, const HorizonSpec& spec,
                                             const VolumeConstraint& g) {
    check_consistency(mesh, spec, "scatter_equivalence_check");
    const int N = mesh.N();
    const int r = spec.r;
    if (N < 2 * r)
        throw std::invalid_argument(
            "scatter_equivalence_check: closed forms need N >= 2r (interface blocks overlap)");

    const SymmetricWeights aw = symmetric_weights(r, mesh.h());
    auto gp = [&](int idx2) { return eval_constraint(g, mesh.point(idx2)); };

    // weight vectors
    std::vector<double> w1(aw.a_whole.begin() + 1, aw.a_whole.end());      // a_1..a_r
    std::vector<double> w2(aw.a_half.begin(), aw.a_half.end());            // a_{1/2}..a_{r-1/2}
    std::vector<double> w3(r > 1 ? std::vector<double>(aw.a_half.begin() + 1, aw.a_half.end())
                                 : std::vector<double>{});                 // a_{3/2}..a_{r-1/2}

    // collar value vectors
    std::vector<double> gL_whole(r), gR_whole(r);          // g_0, g_-1, ... / g_{N+1}, g_{N+2}, ...
    std::vector<double> gL_half(r), gR_half(r);             // g_{-1/2-t} / g_{N+3/2+t}
    for (int t = 0; t < r; ++t) {
        gL_whole[t] = gp(-2 * t);
        gR_whole[t] = gp(2 * (N + 1 + t));
        gL_half[t] = gp(-(2 * t + 1));
        gR_half[t] = gp(2 * N + 3 + 2 * t);
    }
    Eigen::VectorXd closed = Eigen::VectorXd::Zero(mesh.unknowns());

    // whole-point equations at x_1..x_r and x_{N-r+1}..x_N
    auto left_whole = triu_toeplitz_apply(gL_whole, w1);
    auto right_whole = triu_toeplitz_apply(gR_whole, w1);
    if (r > 1) {
        auto half_part_l = triu_toeplitz_apply(std::vector<double>(gL_half.begin(), gL_half.end() - 1), w3);
        auto half_part_r = triu_toeplitz_apply(std::vector<double>(gR_half.begin(), gR_half.end() - 1), w3);
        for (int i = 0; i < r - 1; ++i) {
            left_whole[static_cast<size_t>(i)] += half_part_l[static_cast<size_t>(i)];
            right_whole[static_cast<size_t>(i)] += half_part_r[static_cast<size_t>(i)];
        }
    }
    for (int i = 0; i < r; ++i) {
        closed[i] += aw.eta * left_whole[static_cast<size_t>(i)];           // row of x_{i+1}
        closed[N - 1 - i] += aw.eta * right_whole[static_cast<size_t>(i)];  // row of x_{N-i}
    }

    // half-point equations at x_{1/2}..x_{r-1/2} and x_{N+3/2-r}..x_{N+1/2}
    auto left_half = triu_toeplitz_apply(gL_whole, w2);
    auto right_half = triu_toeplitz_apply(gR_whole, w2);
    auto left_half2 = triu_toeplitz_apply(gL_half, w1);
    auto right_half2 = triu_toeplitz_apply(gR_half, w1);
    for (int i = 0; i < r; ++i) {
        closed[N + i] += aw.eta * (left_half[static_cast<size_t>(i)] + left_half2[static_cast<size_t>(i)]);
        closed[2 * N - i] += aw.eta * (right_half[static_cast<size_t>(i)] + right_half2[static_cast<size_t>(i)]);
    }

    // generic scatter with f == 0 isolates the constraint contribution
    CollocationSystem sys = assemble_1d(Scheme::shifted_symmetric, mesh, spec,
                                        [](double) { return 0.0; }, g);

    ScatterCheckReport rep;
    rep.max_diff = (sys.rhs - closed).lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, closed.lpNorm<Eigen::Infinity>());
    rep.equal = rep.max_diff <= 1e-14 * scale;
    return rep;
}

Kron2DOperator::Kron2DOperator(const Mesh1D& mesh, const HorizonSpec& spec)
    : mesh_(mesh),
      weights_(symmetric_weights(spec.r, mesh.h())),
      n1_(2 * mesh.N() + 1),
      lo2_(mesh.lo2()),
      hi2_(mesh.hi2()),
      dim_(mesh.hi2() - mesh.lo2() + 1) {
    check_consistency(mesh, spec, "Kron2DOperator");
}

void Kron2DOperator::apply_raw(const Buffer& extended, Eigen::VectorXd& out) const {
    const double eta = weights_.eta;
    const double dt = delta_tilde();
    const double cross_scale = dt * dt / 6.0;

    // K along y at every x-column (collar columns included: the rhs path
    // needs them), interior y only.
    Buffer ky(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int ix2 = lo2_; ix2 <= hi2_; ++ix2) {
        for (int iy2 = 1; iy2 <= n1_; ++iy2) {
            double s = 0.0;
            visit_shifted(weights_, iy2,
                          [&](int j2, double w) { s += w * extended[static_cast<size_t>(at(ix2, j2))]; });
            ky[static_cast<size_t>(at(ix2, iy2))] = -eta * s;
        }
    }

    out.resize(unknowns());
    for (int ix2 = 1; ix2 <= n1_; ++ix2) {
        for (int iy2 = 1; iy2 <= n1_; ++iy2) {
            double sx = 0.0, sxc = 0.0;
            visit_shifted(weights_, ix2, [&](int j2, double w) {
                sx += w * extended[static_cast<size_t>(at(j2, iy2))];
                sxc += w * ky[static_cast<size_t>(at(j2, iy2))];
            });
            const double kx = -eta * sx;
            const double kyv = ky[static_cast<size_t>(at(ix2, iy2))];
            const double kxky = -eta * sxc;
            out[interior_ordinal(ix2, iy2)] = kx + kyv - cross_scale * kxky;
        }
    }
}

Eigen::VectorXd Kron2DOperator::apply(const Eigen::VectorXd& v) const {
    Buffer e(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int ix2 = 1; ix2 <= n1_; ++ix2)
        for (int iy2 = 1; iy2 <= n1_; ++iy2)
            e[static_cast<size_t>(at(ix2, iy2))] = v[interior_ordinal(ix2, iy2)];
    Eigen::VectorXd out;
    apply_raw(e, out);
    return out;
}

Eigen::VectorXd Kron2DOperator::build_rhs(const std::function<double(double, double)>& f2d,
                                          const std::function<double(double, double)>& g2d) const {
    Buffer e(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int ix2 = lo2_; ix2 <= hi2_; ++ix2)
        for (int iy2 = lo2_; iy2 <= hi2_; ++iy2) {
            const bool interior = mesh_.is_interior(ix2) && mesh_.is_interior(iy2);
            if (!interior) {
                const double v = g2d(point(ix2), point(iy2));
                if (!std::isfinite(v))
                    throw std::runtime_error("assemble_2d: constraint not finite at (" +
                                             std::to_string(point(ix2)) + ", " +
                                             std::to_string(point(iy2)) + ")");
                e[static_cast<size_t>(at(ix2, iy2))] = v;
            }
        }
    Eigen::VectorXd collar_part;
    apply_raw(e, collar_part);

    Eigen::VectorXd rhs(unknowns());
    for (int ix2 = 1; ix2 <= n1_; ++ix2)
        for (int iy2 = 1; iy2 <= n1_; ++iy2) {
            const int o = interior_ordinal(ix2, iy2);
            rhs[o] = f2d(point(ix2), point(iy2)) - collar_part[o];
        }
    return rhs;
}

Eigen::VectorXd Kron2DOperator::apply_to_field(const std::function<double(double, double)>& u) const {
    Buffer e(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int ix2 = lo2_; ix2 <= hi2_; ++ix2)
        for (int iy2 = lo2_; iy2 <= hi2_; ++iy2)
            e[static_cast<size_t>(at(ix2, iy2))] = u(point(ix2), point(iy2));
    Eigen::VectorXd out;
    apply_raw(e, out);
    return out;
}

Eigen::VectorXd Kron2DOperator::cross_term_of_field(
    const std::function<double(double, double)>& u) const {
    Buffer e(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int ix2 = lo2_; ix2 <= hi2_; ++ix2)
        for (int iy2 = lo2_; iy2 <= hi2_; ++iy2)
            e[static_cast<size_t>(at(ix2, iy2))] = u(point(ix2), point(iy2));

    const double eta = weights_.eta;
    Buffer ky(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int ix2 = lo2_; ix2 <= hi2_; ++ix2)
        for (int iy2 = 1; iy2 <= n1_; ++iy2) {
            double s = 0.0;
            visit_shifted(weights_, iy2,
                          [&](int j2, double w) { s += w * e[static_cast<size_t>(at(ix2, j2))]; });
            ky[static_cast<size_t>(at(ix2, iy2))] = -eta * s;
        }

    Eigen::VectorXd out(unknowns());
    for (int ix2 = 1; ix2 <= n1_; ++ix2)
        for (int iy2 = 1; iy2 <= n1_; ++iy2) {
            double s = 0.0;
            visit_shifted(weights_, ix2,
                          [&](int j2, double w) { s += w * ky[static_cast<size_t>(at(j2, iy2))]; });
            out[interior_ordinal(ix2, iy2)] = -eta * s;
        }
    return out;
}

System2D assemble_2d(const Mesh1D& mesh, const HorizonSpec& spec,
                     const std::function<double(double, double)>& f2d,
                     const std::function<double(double, double)>& g2d) {
    Kron2DOperator op(mesh, spec);
    Eigen::VectorXd rhs = op.build_rhs(f2d, g2d);
    return {std::move(op), std::move(rhs)};
}

}  // namespace nlcolloc
