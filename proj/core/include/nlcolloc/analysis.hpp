#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlcolloc/assembly.hpp"
#include "nlcolloc/oracle.hpp"
#include "nlcolloc/solver.hpp"

namespace nlcolloc {

/// Horizon as a function of the mesh width. Grammar of the text form:
///   "0.25", "1/3"          fixed value
///   "sqrt(h)"              h^(1/2)
///   "h^2", "h^0.25"        pure powers
///   "10/3*h", "2*h^0.5"    scaled powers (coefficients may be rational)
struct HorizonRule {
    enum class Kind { fixed, power };
    Kind kind = Kind::fixed;
    double c = 0.0;     // fixed value, or coefficient of h^beta
    double beta = 0.0;  // exponent (0 for fixed)
    std::string text;   // source form, echoed into CSV output

    double delta_at(double h) const;
    static HorizonRule fixed(double delta);
    static HorizonRule power(double c, double beta);
};

HorizonRule parse_horizon_rule(const std::string& text);

struct ConvergenceRow {
    double h = 0.0;
    int N = 0;
    double error_inf = 0.0;
    double rate = 0.0;  // NaN on the first row
    SolveMethod method = SolveMethod::direct;
    int iterations = 0;
    double residual = 0.0;
    double seconds = 0.0;
};

struct ConvergenceTable {
    Scheme scheme = Scheme::shifted_symmetric;
    int dimension = 1;
    HorizonRule rule;
    std::vector<ConvergenceRow> rows;

    double finest_rate() const;
    /// Least-squares slope of log(error) against log(h) over all rows.
    double ls_slope() const;
};

/// A single manufactured-solution study: solve at every level of the
/// factor-4 nested h list and measure the maximum-norm error at the interior
/// collocation points. In local mode the right-hand side is the local limit
/// f_0 and the comparison target is the local solution (the AC study).
struct StudySetup {
    Scheme scheme = Scheme::shifted_symmetric;
    int dimension = 1;
    HorizonRule rule;
    std::vector<double> h_list;  // strictly decreasing by exact factor 4
    PolynomialFn u_exact = PolynomialFn::quartic_well();
    bool local_mode = false;
    SolveMethod method_1d = SolveMethod::direct;
    double cg_tol = 1e-11;
};

ConvergenceTable convergence_study(const StudySetup& setup, int jobs = 1);

inline ConvergenceTable ac_study(StudySetup setup, int jobs = 1) {
    setup.local_mode = true;
    return convergence_study(setup, jobs);
}

/// Self-convergence study (no exact solution): solves at every level of the
/// h list, then reports D_k = ||u_{h_k} - u_{h_k/4}||_inf measured at the
/// coarse level's interior points, with rate_k = ln(D_{k-1}/D_k)/ln 4. The
/// last level only serves as the finer partner of the one before it, so the
/// table has h_list.size()-1 rows.
struct SelfStudySetup {
    Scheme scheme = Scheme::shifted_symmetric;
    HorizonRule rule;
    std::vector<double> h_list;
    /// f(x, delta): the right-hand side may depend on the level's horizon.
    std::function<double(double, double)> f;
    VolumeConstraint g = VolumeConstraint::zero();
};

ConvergenceTable self_convergence_study(const SelfStudySetup& setup, int jobs = 1);

struct TruncationReport {
    std::vector<double> residuals;  // per interior site, unknown order
    double max_residual = 0.0;
};

/// Pointwise truncation residual |L_delta u - L_{dt,h} u| over the interior,
/// continuum side evaluated by the exact polynomial oracle.
TruncationReport truncation_probe(const PolynomialFn& u, const HorizonSpec& spec, Scheme scheme,
                                  int N);

/// Same probe with the quadrature oracle, for non-polynomial u.
TruncationReport truncation_probe(const std::function<double(double)>& u, const HorizonSpec& spec,
                                  Scheme scheme, int N);

/// Fitted slope of max truncation residual across an h sweep.
double truncation_slope(const PolynomialFn& u, const HorizonRule& rule, Scheme scheme,
                        const std::vector<double>& h_list);

struct PerturbationReport {
    double max_difference = 0.0;     // max |standard - shifted| over half sites
    double max_expansion_diff = 0.0; // max |difference - (3h/dt^3) p,q expansion|
    double bound = 0.0;              // C_r * (M/4) * h^4 / dt^2
    double ratio = 0.0;              // max_difference / bound
};

/// Standard-vs-shifted half-point perturbation, checked against the p,q
/// expansion and the C_r bound with the supplied fourth-derivative bound M.
PerturbationReport perturbation_probe(const std::function<double(double)>& u,
                                      const HorizonSpec& spec, int N, double deriv4_bound);

/// rate_k = log(e_{k-1}/e_k) / log 4
double pairwise_rate(double coarse_error, double fine_error);

/// Validates a strictly decreasing, exactly factor-4 nested h list where
/// every 1/h is an integer; returns the N values.
std::vector<int> validate_h_list(const std::vector<double>& h_list);

}  // namespace nlcolloc
