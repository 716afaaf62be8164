// Command-line front end: solve, certify, bound, depend, verify.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "psifrac/psifrac.hpp"

namespace {

void add_shared_options(CLI::App* cmd, psifrac::RunConfig& cfg) {
    cmd->add_option("problem", cfg.problem_path, "problem definition file")
        ->required();
    cmd->add_option("-n,--panels", cfg.n,
                    "grid panels; the table has n+1 rows (default 512)");
    cmd->add_option("-t,--tol", cfg.tol,
                    "sweep-to-sweep tolerance (default 1e-10)");
    cmd->add_option("-m,--max-iter", cfg.max_iter,
                    "maximum sweeps (default 200)");
    cmd->add_option("-f,--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", cfg.out_path,
                    "write to file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Solver and certificate toolkit for weakly singular Volterra "
        "initial value problems"};
    app.require_subcommand(1);

    psifrac::RunConfig cfg;

    auto* solve_cmd =
        app.add_subcommand("solve", "iterate the integral fixed point");
    add_shared_options(solve_cmd, cfg);

    auto* certify_cmd = app.add_subcommand(
        "certify", "compute the contraction certificate (p, q)");
    add_shared_options(certify_cmd, cfg);

    auto* bound_cmd = app.add_subcommand(
        "bound", "solve and check the growth envelope");
    add_shared_options(bound_cmd, cfg);

    auto* depend_cmd = app.add_subcommand(
        "depend", "compare against a perturbed problem");
    add_shared_options(depend_cmd, cfg);
    depend_cmd
        ->add_option("perturbed", cfg.perturbed_path,
                     "perturbed problem definition file")
        ->required();

    auto* verify_cmd = app.add_subcommand(
        "verify", "re-solve at doubled resolution and report defects");
    add_shared_options(verify_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11 returns 0 for --help; anything else is a usage error.
        return code == 0 ? 0 : psifrac::exit_config;
    }

    if (solve_cmd->parsed()) cfg.command = psifrac::Command::solve;
    if (certify_cmd->parsed()) cfg.command = psifrac::Command::certify;
    if (bound_cmd->parsed()) cfg.command = psifrac::Command::bound;
    if (depend_cmd->parsed()) cfg.command = psifrac::Command::depend;
    if (verify_cmd->parsed()) cfg.command = psifrac::Command::verify;

    return psifrac::run(cfg, std::cout, std::cerr);
}
