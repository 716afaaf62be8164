#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psifrac/bounds.hpp"
#include "psifrac/catalog.hpp"
#include "psifrac/certificate.hpp"
#include "psifrac/errors.hpp"
#include "psifrac/solver.hpp"

namespace psifrac {

enum class Command { solve, certify, bound, depend, verify };

struct RunConfig {
    Command command = Command::solve;
    std::string problem_path;
    std::string perturbed_path;  // depend only
    std::size_t n = 512;
    double tol = 1e-10;
    std::size_t max_iter = 200;
    std::string format = "csv";  // csv | json
    std::string out_path;        // empty: stdout
};

// Exit codes shared by run() and the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_no_convergence = 3;
inline constexpr int exit_bound_violated = 4;

// Relative slack applied when checking computed values against an envelope,
// covering roundoff in the comparison itself.
inline constexpr double containment_slack = 1e-6;

namespace runner {

// Shortest decimal form that round-trips a double.
inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline const char* command_name(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::certify: return "certify";
        case Command::bound: return "bound";
        case Command::depend: return "depend";
        case Command::verify: return "verify";
    }
    return "?";
}

struct MetaWriter {
    std::ostream& out;
    void line(const std::string& key, const std::string& value) {
        out << "# " << key << ": " << value << "\n";
    }
    // const char* would otherwise convert to bool, not std::string.
    void line(const std::string& key, const char* value) {
        line(key, std::string(value));
    }
    void line(const std::string& key, double value) { line(key, fmt(value)); }
    void line(const std::string& key, std::size_t value) {
        line(key, std::to_string(value));
    }
    void line(const std::string& key, bool value) {
        line(key, std::string(value ? "true" : "false"));
    }
};

inline void common_meta(MetaWriter& mw, const RunConfig& cfg,
                        const ProblemSpec& spec) {
    mw.line("command", command_name(cfg.command));
    mw.line("problem", cfg.problem_path);
    mw.line("psi", spec.psi_kind);
    mw.line("f", spec.f_kind);
    mw.line("w", spec.w_kind);
    mw.line("alpha", spec.problem.order.alpha());
    mw.line("beta", spec.problem.order.beta());
    mw.line("gamma", spec.problem.order.gamma());
    mw.line("n", cfg.n);
    mw.line("tol", cfg.tol);
    mw.line("max_iter", cfg.max_iter);
}

inline nlohmann::ordered_json common_meta_json(const RunConfig& cfg,
                                               const ProblemSpec& spec) {
    nlohmann::ordered_json j;
    j["command"] = command_name(cfg.command);
    j["problem"] = cfg.problem_path;
    j["psi"] = spec.psi_kind;
    j["f"] = spec.f_kind;
    j["w"] = spec.w_kind;
    j["alpha"] = spec.problem.order.alpha();
    j["beta"] = spec.problem.order.beta();
    j["gamma"] = spec.problem.order.gamma();
    j["n"] = cfg.n;
    j["tol"] = cfg.tol;
    j["max_iter"] = cfg.max_iter;
    return j;
}

inline std::optional<Certificate> try_certificate(const IvProblem& problem,
                                                  std::size_t n) {
    if (!problem.has_lipschitz_constants()) return std::nullopt;
    return contraction_certificate(problem, n);
}

inline void solve_meta(MetaWriter& mw, const SolveReport& report,
                       const std::optional<Certificate>& cert) {
    mw.line("iterations", report.iterations);
    mw.line("final_delta", report.final_delta);
    mw.line("converged", report.converged);
    mw.line("certified", report.certified);
    if (cert) {
        mw.line("q", cert->q);
    } else {
        mw.line("q", std::string("n/a"));
    }
}

inline int emit_solve(const RunConfig& cfg, const ProblemSpec& spec,
                      std::ostream& out) {
    SolveReport report = solve(spec.problem, cfg.n, cfg.tol, cfg.max_iter);
    const auto cert = try_certificate(spec.problem, cfg.n);
    const SolutionGrid& g = report.solution;
    if (cfg.format == "json") {
        nlohmann::ordered_json j = common_meta_json(cfg, spec);
        j["iterations"] = report.iterations;
        j["final_delta"] = report.final_delta;
        j["converged"] = report.converged;
        j["certified"] = report.certified;
        if (cert) j["q"] = cert->q; else j["q"] = nullptr;
        j["x"] = g.nodes;
        j["psi_x"] = g.psi_nodes;
        j["r"] = g.regular_values;
        std::vector<double> z(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double v = g.raw_value(i);
            z[i] = std::isfinite(v) ? v : 0.0;  // node 0 blowup: see raw_finite
        }
        std::vector<bool> raw_finite(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            raw_finite[i] = std::isfinite(g.raw_value(i));
        }
        j["z"] = z;
        j["z_finite"] = raw_finite;
        out << j.dump(2) << "\n";
    } else {
        MetaWriter mw{out};
        common_meta(mw, cfg, spec);
        solve_meta(mw, report, cert);
        out << "x,psi_x,r,z\n";
        for (std::size_t i = 0; i < g.size(); ++i) {
            out << fmt(g.nodes[i]) << ',' << fmt(g.psi_nodes[i]) << ','
                << fmt(g.regular_values[i]) << ',' << fmt(g.raw_value(i))
                << "\n";
        }
    }
    return report.converged ? exit_ok : exit_no_convergence;
}

inline int emit_certify(const RunConfig& cfg, const ProblemSpec& spec,
                        std::ostream& out) {
    const Certificate primary = contraction_certificate(
        spec.problem, cfg.n, QVariant::primary);
    const Certificate alt = contraction_certificate(
        spec.problem, cfg.n, QVariant::alt);
    if (cfg.format == "json") {
        nlohmann::ordered_json j = common_meta_json(cfg, spec);
        j["p"] = primary.p;
        j["q"] = primary.q;
        j["q_alt"] = alt.q;
        j["unique"] = primary.unique;
        out << j.dump(2) << "\n";
    } else {
        MetaWriter mw{out};
        common_meta(mw, cfg, spec);
        mw.line("q", primary.q);
        out << "p,q,q_alt,unique\n";
        out << fmt(primary.p) << ',' << fmt(primary.q) << ',' << fmt(alt.q)
            << ',' << (primary.unique ? "true" : "false") << "\n";
    }
    return exit_ok;
}

// First table row for raw-value comparisons: node 0 is excluded when the
// solution blows up there (gamma < 1).
inline std::size_t first_raw_node(const SolutionGrid& g) {
    return g.gamma < 1.0 ? 1 : 0;
}

inline int emit_bound(const RunConfig& cfg, const ProblemSpec& spec,
                      std::ostream& out) {
    SolveReport report = solve(spec.problem, cfg.n, cfg.tol, cfg.max_iter);
    if (!report.converged) {
        return exit_no_convergence;
    }
    const SolutionGrid& g = report.solution;
    const BoundEnvelope env = apriori_bound(spec.problem, g);
    const std::size_t lo = first_raw_node(g);
    bool all_contained = true;
    std::vector<double> abs_z(g.size(), 0.0);
    std::vector<bool> contained(g.size(), true);
    for (std::size_t i = lo; i < g.size(); ++i) {
        abs_z[i] = std::fabs(g.raw_value(i));
        contained[i] = abs_z[i] <= env.values[i] * (1.0 + containment_slack);
        if (!contained[i]) all_contained = false;
    }
    if (cfg.format == "json") {
        nlohmann::ordered_json j = common_meta_json(cfg, spec);
        j["iterations"] = report.iterations;
        j["scale"] = env.scale;
        j["first_node"] = lo;
        j["x"] = std::vector<double>(g.nodes.begin() + lo, g.nodes.end());
        j["abs_z"] = std::vector<double>(abs_z.begin() + lo, abs_z.end());
        j["bound"] =
            std::vector<double>(env.values.begin() + lo, env.values.end());
        j["contained"] =
            std::vector<bool>(contained.begin() + lo, contained.end());
        j["all_contained"] = all_contained;
        out << j.dump(2) << "\n";
    } else {
        MetaWriter mw{out};
        common_meta(mw, cfg, spec);
        mw.line("iterations", report.iterations);
        mw.line("scale", env.scale);
        mw.line("all_contained", all_contained);
        out << "x,abs_z,bound,contained\n";
        for (std::size_t i = lo; i < g.size(); ++i) {
            out << fmt(g.nodes[i]) << ',' << fmt(abs_z[i]) << ','
                << fmt(env.values[i]) << ','
                << (contained[i] ? "true" : "false") << "\n";
        }
    }
    return all_contained ? exit_ok : exit_bound_violated;
}

inline int emit_depend(const RunConfig& cfg, const ProblemSpec& spec,
                       const ProblemSpec& pert, std::ostream& out) {
    SolveReport base = solve(spec.problem, cfg.n, cfg.tol, cfg.max_iter);
    SolveReport other = solve(pert.problem, cfg.n, cfg.tol, cfg.max_iter);
    if (!base.converged || !other.converged) {
        return exit_no_convergence;
    }
    const SolutionGrid& g = base.solution;
    const double eps =
        measure_mismatch(spec.problem, pert.problem, other.solution, g);
    const BoundEnvelope env =
        dependence_bound(spec.problem, pert.problem, eps, g);
    const std::size_t lo = first_raw_node(g);
    bool all_contained = true;
    std::vector<double> abs_diff(g.size(), 0.0);
    std::vector<bool> contained(g.size(), true);
    for (std::size_t i = lo; i < g.size(); ++i) {
        abs_diff[i] =
            std::fabs(g.raw_value(i) - other.solution.raw_value(i));
        contained[i] =
            abs_diff[i] <= env.values[i] * (1.0 + containment_slack);
        if (!contained[i]) all_contained = false;
    }
    if (cfg.format == "json") {
        nlohmann::ordered_json j = common_meta_json(cfg, spec);
        j["perturbed"] = cfg.perturbed_path;
        j["eps"] = eps;
        j["first_node"] = lo;
        j["x"] = std::vector<double>(g.nodes.begin() + lo, g.nodes.end());
        j["abs_diff"] =
            std::vector<double>(abs_diff.begin() + lo, abs_diff.end());
        j["envelope"] =
            std::vector<double>(env.values.begin() + lo, env.values.end());
        j["contained"] =
            std::vector<bool>(contained.begin() + lo, contained.end());
        j["all_contained"] = all_contained;
        out << j.dump(2) << "\n";
    } else {
        MetaWriter mw{out};
        common_meta(mw, cfg, spec);
        mw.line("perturbed", cfg.perturbed_path);
        mw.line("eps", eps);
        mw.line("all_contained", all_contained);
        out << "x,abs_diff,envelope,contained\n";
        for (std::size_t i = lo; i < g.size(); ++i) {
            out << fmt(g.nodes[i]) << ',' << fmt(abs_diff[i]) << ','
                << fmt(env.values[i]) << ','
                << (contained[i] ? "true" : "false") << "\n";
        }
    }
    return all_contained ? exit_ok : exit_bound_violated;
}

inline int emit_verify(const RunConfig& cfg, const ProblemSpec& spec,
                       std::ostream& out) {
    const std::size_t n_coarse = cfg.n;
    const std::size_t n_fine = cfg.n * 2;
    SolveReport coarse = solve(spec.problem, n_coarse, cfg.tol, cfg.max_iter);
    SolveReport fine = solve(spec.problem, n_fine, cfg.tol, cfg.max_iter);
    if (!coarse.converged || !fine.converged) {
        return exit_no_convergence;
    }
    const double defect_coarse = residual_check(coarse.solution, spec.problem);
    const double defect_fine = residual_check(fine.solution, spec.problem);
    const double ratio = defect_fine > 0.0 ? defect_coarse / defect_fine
                                           : std::numeric_limits<double>::infinity();
    if (cfg.format == "json") {
        nlohmann::ordered_json j = common_meta_json(cfg, spec);
        j["n_values"] = std::vector<std::size_t>{n_coarse, n_fine};
        j["defects"] = std::vector<double>{defect_coarse, defect_fine};
        j["defect_ratio"] = ratio;
        out << j.dump(2) << "\n";
    } else {
        MetaWriter mw{out};
        common_meta(mw, cfg, spec);
        mw.line("defect_ratio", ratio);
        out << "n,defect\n";
        out << n_coarse << ',' << fmt(defect_coarse) << "\n";
        out << n_fine << ',' << fmt(defect_fine) << "\n";
    }
    return exit_ok;
}

}  // namespace runner

// Executes one command against output/error streams. Returns a process
// exit code; never throws for conditions a malformed input can trigger.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.n < 2) throw config_error("n must be at least 2");
        if (!(cfg.tol > 0.0)) throw config_error("tol must be positive");
        if (cfg.max_iter < 1) throw config_error("max_iter must be at least 1");
        if (cfg.format != "csv" && cfg.format != "json") {
            throw config_error("format must be 'csv' or 'json'");
        }
        ProblemSpec spec = catalog::load_file(cfg.problem_path);

        std::ofstream file_out;
        std::ostream* sink = &out;
        if (!cfg.out_path.empty()) {
            file_out.open(cfg.out_path);
            if (!file_out) {
                throw config_error("cannot open output file '" + cfg.out_path +
                                   "'");
            }
            sink = &file_out;
        }

        int code = exit_config;
        switch (cfg.command) {
            case Command::solve:
                code = runner::emit_solve(cfg, spec, *sink);
                break;
            case Command::certify:
                code = runner::emit_certify(cfg, spec, *sink);
                break;
            case Command::bound:
                code = runner::emit_bound(cfg, spec, *sink);
                break;
            case Command::depend: {
                if (cfg.perturbed_path.empty()) {
                    throw config_error(
                        "depend requires a perturbed problem file");
                }
                ProblemSpec pert = catalog::load_file(cfg.perturbed_path);
                code = runner::emit_depend(cfg, spec, pert, *sink);
                break;
            }
            case Command::verify:
                code = runner::emit_verify(cfg, spec, *sink);
                break;
        }
        if (code == exit_no_convergence) {
            err << "error: iteration did not reach tolerance " << cfg.tol
                << " within " << cfg.max_iter << " sweeps\n";
        } else if (code == exit_bound_violated) {
            err << "error: computed values escape the reported envelope\n";
        }
        return code;
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const certificate_unavailable_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const bound_unavailable_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const incompatible_problems_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const invalid_input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const construction_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const step_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_no_convergence;
    }
}

}  // namespace psifrac
