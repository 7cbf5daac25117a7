#pragma once

#include <string>
#include <vector>

#include "nlcolloc/analysis.hpp"

namespace nlcolloc {

/// A parsed study configuration. The file format is flat `key = value` lines
/// with '#' comments:
///
///   scheme    = shifted          # shifted | standard
///   dimension = 1                # 1 | 2
///   delta     = 10/3*h           # fixed value, c*h^beta, sqrt(h), h^2
///   h         = 1/80 1/320 1/1280
///   solution  = quartic          # registered manufactured solution, or "self"
///   rhs       = nonlocal         # nonlocal | local  (local = AC study)
///   f         = exp_delta_sin    # registered rhs, self-convergence only
///   out       = study.csv
struct StudyConfig {
    Scheme scheme = Scheme::shifted_symmetric;
    int dimension = 1;
    HorizonRule rule;
    std::vector<double> h_list;
    bool self_convergence = false;
    bool local_rhs = false;
    std::string solution_name = "quartic";
    std::string rhs_name;
    std::string out_path;
};

/// Parse and validate; errors carry the offending line number.
StudyConfig parse_study_config_text(const std::string& text, const std::string& origin);
StudyConfig parse_study_config(const std::string& path);

/// Registered manufactured polynomial solutions (throws on unknown name):
///   quartic    x^2 (1 - x^2)
///   quadratic  x (1 - x)
///   linear     x
PolynomialFn manufactured_solution(const std::string& name);

/// Registered horizon-dependent right-hand sides f(x, delta) for
/// self-convergence studies:
///   exp_delta_sin   exp(delta * x * sin(pi x))
std::function<double(double, double)> registered_rhs(const std::string& name);

ConvergenceTable run_study(const StudyConfig& config, int jobs = 1);

/// CSV with the fixed column set
///   scheme,dim,delta_rule,beta,h,N,error_inf,rate,solver,iterations,residual,seconds
/// in full-precision scientific notation. Unless with_timing is set the
/// seconds column prints 0 so that identical runs produce identical bytes.
std::string tables_to_csv(const std::vector<ConvergenceTable>& tables, bool with_timing = false);

}  // namespace nlcolloc
