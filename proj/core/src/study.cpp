#include "nlcolloc/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlcolloc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(const std::string& origin, int line, const std::string& what) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_h_token(const std::string& tok, const std::string& origin, int line) {
    const auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) return std::stod(tok);
        return std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1));
    } catch (const std::exception&) {
        config_error(origin, line, "cannot parse mesh width '" + tok + "'");
    }
}

}  // namespace

StudyConfig parse_study_config_text(const std::string& text, const std::string& origin) {
    StudyConfig cfg;
    bool have_delta = false, have_h = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) config_error(origin, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) config_error(origin, line_no, "empty value for '" + key + "'");

        if (key == "scheme") {
            if (value == "shifted")
                cfg.scheme = Scheme::shifted_symmetric;
            else if (value == "standard")
                cfg.scheme = Scheme::standard;
            else
                config_error(origin, line_no, "unknown scheme '" + value + "'");
        } else if (key == "dimension") {
            if (value == "1")
                cfg.dimension = 1;
            else if (value == "2")
                cfg.dimension = 2;
            else
                config_error(origin, line_no, "dimension must be 1 or 2");
        } else if (key == "delta") {
            try {
                cfg.rule = parse_horizon_rule(value);
            } catch (const std::exception& e) {
                config_error(origin, line_no, e.what());
            }
            have_delta = true;
        } else if (key == "h") {
            std::istringstream hs(value);
            std::string tok;
            cfg.h_list.clear();
            while (hs >> tok) cfg.h_list.push_back(parse_h_token(tok, origin, line_no));
            have_h = true;
        } else if (key == "solution") {
            if (value == "self") {
                cfg.self_convergence = true;
            } else {
                cfg.solution_name = value;
            }
        } else if (key == "rhs") {
            if (value == "local")
                cfg.local_rhs = true;
            else if (value == "nonlocal")
                cfg.local_rhs = false;
            else
                config_error(origin, line_no, "rhs must be 'nonlocal' or 'local'");
        } else if (key == "f") {
            cfg.rhs_name = value;
        } else if (key == "out") {
            cfg.out_path = value;
        } else {
            config_error(origin, line_no, "unknown key '" + key + "'");
        }
    }

    if (!have_delta) config_error(origin, line_no, "missing 'delta'");
    if (!have_h) config_error(origin, line_no, "missing 'h'");
    try {
        validate_h_list(cfg.h_list);
    } catch (const std::exception& e) {
        config_error(origin, line_no, e.what());
    }
    if (cfg.self_convergence) {
        if (cfg.rhs_name.empty())
            config_error(origin, line_no, "self-convergence study needs 'f = <rhs name>'");
        registered_rhs(cfg.rhs_name);  // validate
        if (cfg.dimension != 1)
            config_error(origin, line_no, "self-convergence study is one-dimensional");
    } else {
        manufactured_solution(cfg.solution_name);  // validate
    }
    return cfg;
}

StudyConfig parse_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_study_config_text(buf.str(), path);
}

PolynomialFn manufactured_solution(const std::string& name) {
    if (name == "quartic") return PolynomialFn::quartic_well();
    if (name == "quadratic") return PolynomialFn({0.0, 1.0, -1.0});
    if (name == "linear") return PolynomialFn({0.0, 1.0});
    throw std::invalid_argument("unknown manufactured solution '" + name + "'");
}

std::function<double(double, double)> registered_rhs(const std::string& name) {
    if (name == "exp_delta_sin")
        return [](double x, double delta) {
            return std::exp(delta * x * std::sin(std::numbers::pi * x));
        };
    throw std::invalid_argument("unknown right-hand side '" + name + "'");
}

ConvergenceTable run_study(const StudyConfig& config, int jobs) {
    if (config.self_convergence) {
        SelfStudySetup setup;
        setup.scheme = config.scheme;
        setup.rule = config.rule;
        setup.h_list = config.h_list;
        setup.f = registered_rhs(config.rhs_name);
        setup.g = VolumeConstraint::zero();
        return self_convergence_study(setup, jobs);
    }
    StudySetup setup;
    setup.scheme = config.scheme;
    setup.dimension = config.dimension;
    setup.rule = config.rule;
    setup.h_list = config.h_list;
    setup.u_exact = manufactured_solution(config.solution_name);
    setup.local_mode = config.local_rhs;
    return convergence_study(setup, jobs);
}

std::string tables_to_csv(const std::vector<ConvergenceTable>& tables, bool with_timing) {
    std::string out = "scheme,dim,delta_rule,beta,h,N,error_inf,rate,solver,iterations,residual,seconds\n";
    char buf[512];
    for (const auto& table : tables) {
        for (const auto& row : table.rows) {
            char rate[40] = "";
            if (std::isfinite(row.rate)) std::snprintf(rate, sizeof(rate), "%.16e", row.rate);
            std::snprintf(buf, sizeof(buf), "%s,%d,%s,%.16e,%.16e,%d,%.16e,%s,%s,%d,%.16e,%.16e\n",
                          scheme_name(table.scheme), table.dimension, table.rule.text.c_str(),
                          table.rule.beta, row.h, row.N, row.error_inf, rate,
                          row.method == SolveMethod::direct ? "direct" : "cg", row.iterations,
                          row.residual, with_timing ? row.seconds : 0.0);
            out += buf;
        }
    }
    return out;
}

}  // namespace nlcolloc
