#include "nlcolloc/analysis.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace nlcolloc {

double HorizonRule::delta_at(double h) const {
    return kind == Kind::fixed ? c : c * std::pow(h, beta);
}

HorizonRule HorizonRule::fixed(double delta) {
    HorizonRule r;
    r.kind = Kind::fixed;
    r.c = delta;
    r.text = std::to_string(delta);
    return r;
}

HorizonRule HorizonRule::power(double c, double beta) {
    HorizonRule r;
    r.kind = Kind::power;
    r.c = c;
    r.beta = beta;
    r.text = std::to_string(c) + "*h^" + std::to_string(beta);
    return r;
}

namespace {

double parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        const double p = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument(s);
        const double q = std::stod(den, &used);
        if (used != den.size() || q == 0.0) throw std::invalid_argument(s);
        return p / q;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse number '" + s + "'");
    }
}

}  // namespace

HorizonRule parse_horizon_rule(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty horizon expression");

    HorizonRule rule;
    rule.text = s;
    if (s == "sqrt(h)") {
        rule.kind = HorizonRule::Kind::power;
        rule.c = 1.0;
        rule.beta = 0.5;
        return rule;
    }
    if (s == "h") {
        rule.kind = HorizonRule::Kind::power;
        rule.c = 1.0;
        rule.beta = 1.0;
        return rule;
    }
    if (s.rfind("h^", 0) == 0) {
        rule.kind = HorizonRule::Kind::power;
        rule.c = 1.0;
        rule.beta = parse_rational(s.substr(2));
        return rule;
    }
    const auto star = s.find("*h");
    if (star != std::string::npos) {
        rule.kind = HorizonRule::Kind::power;
        rule.c = parse_rational(s.substr(0, star));
        const std::string rest = s.substr(star + 2);
        if (rest.empty())
            rule.beta = 1.0;
        else if (rest.rfind('^', 0) == 0)
            rule.beta = parse_rational(rest.substr(1));
        else
            throw std::invalid_argument("cannot parse horizon expression '" + raw + "'");
        return rule;
    }
    rule.kind = HorizonRule::Kind::fixed;
    rule.c = parse_rational(s);
    rule.beta = 0.0;
    if (!(rule.c > 0.0)) throw std::invalid_argument("horizon must be positive: '" + raw + "'");
    return rule;
}

double pairwise_rate(double coarse_error, double fine_error) {
    return std::log(coarse_error / fine_error) / std::log(4.0);
}

std::vector<int> validate_h_list(const std::vector<double>& h_list) {
    if (h_list.empty()) throw std::invalid_argument("empty h list");
    std::vector<int> Ns;
    long prev_n = 0;
    for (double h : h_list) {
        if (!(h > 0.0) || h >= 0.5) throw std::invalid_argument("invalid mesh width in h list");
        const long n = std::lround(1.0 / h);
        if (std::abs(n * h - 1.0) > 1e-9)
            throw std::invalid_argument("mesh width must be the reciprocal of an integer");
        if (prev_n != 0 && n != 4 * prev_n)
            throw std::invalid_argument("h list must refine by an exact factor of 4");
        prev_n = n;
        Ns.push_back(static_cast<int>(n) - 1);
    }
    return Ns;
}

double ConvergenceTable::finest_rate() const {
    for (size_t i = rows.size(); i-- > 0;)
        if (std::isfinite(rows[i].rate)) return rows[i].rate;
    return std::numeric_limits<double>::quiet_NaN();
}

double ConvergenceTable::ls_slope() const {
    // least squares of log(e) on log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : rows) {
        if (!(row.error_inf > 0.0)) continue;
        const double x = std::log(row.h), y = std::log(row.error_inf);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

void run_parallel(int n_tasks, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, n_tasks));
    if (jobs == 1) {
        for (int i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n_tasks) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct LevelResult {
    double error = 0.0;
    SolveMethod method = SolveMethod::direct;
    int iterations = 0;
    double residual = 0.0;
    double seconds = 0.0;
};

LevelResult solve_level_1d(const StudySetup& setup, double h, int N) {
    const double delta = setup.rule.delta_at(h);
    HorizonSpec spec = horizon_decompose(delta, h);
    spec.beta_hint = setup.rule.beta;
    const Mesh1D mesh = build_mesh(N, spec);

    const RhsFunctions rhs = rhs_builder(setup.u_exact, make_kernel(1, delta));
    const auto& f = setup.local_mode ? rhs.f_local : rhs.f_delta;
    const PolynomialFn& u = setup.u_exact;
    const VolumeConstraint g{[&u](double x) { return u(x); }};

    const CollocationSystem sys = assemble_1d(setup.scheme, mesh, spec, f, g);
    SolveReport rep;
    if (setup.method_1d == SolveMethod::cg && setup.scheme == Scheme::shifted_symmetric) {
        rep = solve_cg([&sys](const Eigen::VectorXd& v) { return sys.matrix * v; }, sys.rhs,
                       setup.cg_tol);
    } else {
        rep = solve_direct(sys);
    }

    LevelResult res;
    res.method = rep.method;
    res.iterations = rep.iterations;
    res.residual = rep.rel_residual;
    res.seconds = rep.seconds;
    for (int k = 0; k < mesh.unknowns(); ++k) {
        const double x = mesh.point(mesh.idx2_of_unknown(k));
        res.error = std::max(res.error, std::abs(rep.solution[k] - u(x)));
    }
    return res;
}

LevelResult solve_level_2d(const StudySetup& setup, double h, int N) {
    const double delta = setup.rule.delta_at(h);
    HorizonSpec spec = horizon_decompose(delta, h);
    const Mesh1D mesh = build_mesh(N, spec);
    const PolynomialFn& u = setup.u_exact;

    auto u2 = [&u](double x, double y) { return u(x) + u(y); };
    std::function<double(double, double)> f2d;
    if (setup.local_mode) {
        const PolynomialFn upp = u.derivative().derivative();
        f2d = [upp](double x, double y) { return -(upp(x) + upp(y)); };
    } else {
        f2d = [&u, delta](double x, double y) {
            return -apply_exact_2d_additive(u, u, delta, x, y);
        };
    }

    const System2D sys = assemble_2d(mesh, spec, f2d, u2);
    const SolveReport rep = solve_cg(
        [&sys](const Eigen::VectorXd& v) { return sys.op.apply(v); }, sys.rhs, setup.cg_tol);

    LevelResult res;
    res.method = rep.method;
    res.iterations = rep.iterations;
    res.residual = rep.rel_residual;
    res.seconds = rep.seconds;
    const int n1 = sys.op.n1();
    for (int ix2 = 1; ix2 <= n1; ++ix2)
        for (int iy2 = 1; iy2 <= n1; ++iy2) {
            const double v = rep.solution[sys.op.interior_ordinal(ix2, iy2)];
            res.error = std::max(res.error, std::abs(v - u2(mesh.point(ix2), mesh.point(iy2))));
        }
    return res;
}

}  // namespace

ConvergenceTable convergence_study(const StudySetup& setup, int jobs) {
    const std::vector<int> Ns = validate_h_list(setup.h_list);
    const int levels = static_cast<int>(setup.h_list.size());
    std::vector<LevelResult> results(static_cast<size_t>(levels));

    run_parallel(levels, jobs, [&](int i) {
        results[static_cast<size_t>(i)] =
            setup.dimension == 2 ? solve_level_2d(setup, setup.h_list[static_cast<size_t>(i)],
                                                  Ns[static_cast<size_t>(i)])
                                 : solve_level_1d(setup, setup.h_list[static_cast<size_t>(i)],
                                                  Ns[static_cast<size_t>(i)]);
    });

    ConvergenceTable table;
    table.scheme = setup.scheme;
    table.dimension = setup.dimension;
    table.rule = setup.rule;
    for (int i = 0; i < levels; ++i) {
        const LevelResult& lr = results[static_cast<size_t>(i)];
        ConvergenceRow row;
        row.h = setup.h_list[static_cast<size_t>(i)];
        row.N = Ns[static_cast<size_t>(i)];
        row.error_inf = lr.error;
        row.rate = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                          : pairwise_rate(results[static_cast<size_t>(i - 1)].error, lr.error);
        row.method = lr.method;
        row.iterations = lr.iterations;
        row.residual = lr.residual;
        row.seconds = lr.seconds;
        table.rows.push_back(row);
    }
    return table;
}

ConvergenceTable self_convergence_study(const SelfStudySetup& setup, int jobs) {
    const std::vector<int> Ns = validate_h_list(setup.h_list);
    const int levels = static_cast<int>(setup.h_list.size());
    if (levels < 2)
        throw std::invalid_argument("self_convergence_study: need at least two nested levels");

    struct Level {
        HorizonSpec spec;
        Eigen::VectorXd solution;
        int N = 0;
        int iterations = 0;
        double residual = 0.0;
        double seconds = 0.0;
    };
    std::vector<Level> lv(static_cast<size_t>(levels));

    run_parallel(levels, jobs, [&](int i) {
        const double h = setup.h_list[static_cast<size_t>(i)];
        const int N = Ns[static_cast<size_t>(i)];
        const double delta = setup.rule.delta_at(h);
        const HorizonSpec spec = horizon_decompose(delta, h);
        const Mesh1D mesh = build_mesh(N, spec);
        auto f = [&](double x) { return setup.f(x, delta); };
        const CollocationSystem sys = assemble_1d(setup.scheme, mesh, spec, f, setup.g);
        const SolveReport rep = solve_direct(sys);
        lv[static_cast<size_t>(i)] = {spec, rep.solution, N, rep.iterations, rep.rel_residual,
                                      rep.seconds};
    });

    ConvergenceTable table;
    table.scheme = setup.scheme;
    table.dimension = 1;
    table.rule = setup.rule;

    std::vector<double> diffs(static_cast<size_t>(levels - 1), 0.0);
    for (int k = 0; k + 1 < levels; ++k) {
        const Level& coarse = lv[static_cast<size_t>(k)];
        const Level& fine = lv[static_cast<size_t>(k + 1)];
        const Mesh1D coarse_mesh = build_mesh(coarse.N, coarse.spec);
        const Mesh1D fine_mesh = build_mesh(fine.N, fine.spec);
        double d = 0.0;
        // coarse site j/2 coincides with fine site (4j)/2
        for (int kk = 0; kk < coarse_mesh.unknowns(); ++kk) {
            const int idx2 = coarse_mesh.idx2_of_unknown(kk);
            const int fine_unknown = fine_mesh.unknown_of(4 * idx2);
            d = std::max(d, std::abs(coarse.solution[kk] - fine.solution[fine_unknown]));
        }
        diffs[static_cast<size_t>(k)] = d;
    }

    for (int k = 0; k + 1 < levels; ++k) {
        ConvergenceRow row;
        row.h = setup.h_list[static_cast<size_t>(k)];
        row.N = Ns[static_cast<size_t>(k)];
        row.error_inf = diffs[static_cast<size_t>(k)];
        row.rate = k == 0 ? std::numeric_limits<double>::quiet_NaN()
                          : pairwise_rate(diffs[static_cast<size_t>(k - 1)],
                                          diffs[static_cast<size_t>(k)]);
        row.iterations = lv[static_cast<size_t>(k)].iterations;
        row.residual = lv[static_cast<size_t>(k)].residual;
        row.seconds = lv[static_cast<size_t>(k)].seconds;
        table.rows.push_back(row);
    }
    return table;
}

namespace {

TruncationReport truncation_probe_impl(const std::function<double(double)>& u,
                                       const std::function<double(double)>& exact_op,
                                       const HorizonSpec& spec, Scheme scheme, int N) {
    const Mesh1D mesh = build_mesh(N, spec);
    const ExtendedField1D field = ExtendedField1D::sample(mesh, u);
    const SymmetricWeights aw = symmetric_weights(spec.r, mesh.h());
    const HalfPointWeights cdw = halfpoint_weights(spec.r);

    TruncationReport rep;
    rep.residuals.reserve(static_cast<size_t>(mesh.unknowns()));
    for (int k = 0; k < mesh.unknowns(); ++k) {
        const int center2 = mesh.idx2_of_unknown(k);
        double discrete;
        if (center2 % 2 == 0)
            discrete = apply_stencil_whole(aw, field, center2);
        else if (scheme == Scheme::standard)
            discrete = apply_stencil_half_standard(cdw, aw.eta, field, center2);
        else
            discrete = apply_stencil_half_shifted(aw, field, center2);
        const double res = std::abs(exact_op(mesh.point(center2)) - discrete);
        rep.residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

}  // namespace

TruncationReport truncation_probe(const PolynomialFn& u, const HorizonSpec& spec, Scheme scheme,
                                  int N) {
    auto ufn = [&u](double x) { return u(x); };
    auto exact = [&u, &spec](double x) { return apply_exact_1d(u, spec.delta, x); };
    return truncation_probe_impl(ufn, exact, spec, scheme, N);
}

TruncationReport truncation_probe(const std::function<double(double)>& u, const HorizonSpec& spec,
                                  Scheme scheme, int N) {
    auto exact = [&u, &spec](double x) {
        const QuadratureResult q = apply_quadrature_1d(u, spec.delta, x);
        if (!q.converged)
            throw std::runtime_error("truncation_probe: quadrature oracle stalled at estimate " +
                                     std::to_string(q.error_estimate));
        return q.value;
    };
    return truncation_probe_impl(u, exact, spec, scheme, N);
}

double truncation_slope(const PolynomialFn& u, const HorizonRule& rule, Scheme scheme,
                        const std::vector<double>& h_list) {
    const std::vector<int> Ns = validate_h_list(h_list);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(h_list.size());
    for (int i = 0; i < n; ++i) {
        const double h = h_list[static_cast<size_t>(i)];
        const HorizonSpec spec = horizon_decompose(rule.delta_at(h), h);
        const TruncationReport rep = truncation_probe(u, spec, scheme, Ns[static_cast<size_t>(i)]);
        const double x = std::log(h), y = std::log(rep.max_residual);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PerturbationReport perturbation_probe(const std::function<double(double)>& u,
                                      const HorizonSpec& spec, int N, double deriv4_bound) {
    if (!spec.aligned)
        throw std::invalid_argument("perturbation_probe: horizon must be aligned (delta = r*h)");
    const Mesh1D mesh = build_mesh(N, spec);
    const ExtendedField1D field = ExtendedField1D::sample(mesh, u);
    const SymmetricWeights aw = symmetric_weights(spec.r, mesh.h());
    const HalfPointWeights cdw = halfpoint_weights(spec.r);
    const PerturbationWeights pw = perturbation_weights(spec.r);
    const double dt = spec.delta_tilde;

    PerturbationReport rep;
    for (int k = N; k < mesh.unknowns(); ++k) {  // half sites
        const int center2 = mesh.idx2_of_unknown(k);
        const double standard = apply_stencil_half_standard(cdw, aw.eta, field, center2);
        const double shifted = apply_stencil_half_shifted(aw, field, center2);
        const double diff = standard - shifted;
        const double expansion = perturbation_expansion(pw, mesh.h(), dt, field, center2);
        rep.max_difference = std::max(rep.max_difference, std::abs(diff));
        rep.max_expansion_diff = std::max(rep.max_expansion_diff, std::abs(diff - expansion));
    }
    const double h = mesh.h();
    rep.bound = pw.bound_const * (deriv4_bound / 4.0) * h * h * h * h / (dt * dt);
    rep.ratio = rep.max_difference / rep.bound;
    return rep;
}

}  // namespace nlcolloc
