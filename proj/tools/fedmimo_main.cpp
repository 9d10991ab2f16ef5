#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "fedmimo/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Joint power and computing-frequency allocation for a massive MIMO base "
                 "station serving federated-learning and downlink users"};
    app.require_subcommand(1);

    fedmimo::SolveCmdOptions solve_opts;
    auto* solve = app.add_subcommand("solve", "Solve a single channel draw");
    solve->add_option("--config", solve_opts.config_path, "Config file (key = value)")
        ->required();
    solve->add_option("--seed", solve_opts.seed, "Channel draw seed");
    solve->add_option("--out", solve_opts.out_dir, "Output directory");
    solve->add_flag("--trace", solve_opts.trace, "Write per-iteration objective trace");
    solve->add_option("--solver-log", solve_opts.solver_log, "Barrier solver log file");
    solve->add_option("--max-iter", solve_opts.sca.max_iter, "Outer iteration cap");
    solve->add_option("--rel-tol", solve_opts.sca.rel_tol, "Relative convergence tolerance");

    fedmimo::SweepCmdOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo parameter sweep (solver vs baseline)");
    sweep->add_option("--config", sweep_opts.config_path, "Config file")->required();
    sweep->add_option("--var", sweep_opts.var, "Sweep variable: M, L or D")->required();
    sweep->add_option("--values", sweep_opts.values, "Sweep values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--trials", sweep_opts.trials, "Channel draws per value");
    sweep->add_option("--seed", sweep_opts.seed, "Base seed (trial i uses seed+i)");
    sweep->add_option("--out", sweep_opts.out_dir, "Output directory")->required();
    sweep->add_option("--jobs", sweep_opts.jobs, "Worker threads (0 = auto)");

    fedmimo::OracleCmdOptions oracle_opts;
    auto* oracle = app.add_subcommand("oracle", "Brute-force grid search vs the solver (L=K=1)");
    oracle->add_option("--config", oracle_opts.config_path, "Config file")->required();
    oracle->add_option("--seed", oracle_opts.seed, "Channel draw seed");
    oracle->add_option("--steps", oracle_opts.grid.steps, "Grid points per axis");
    oracle->add_option("--rounds", oracle_opts.grid.rounds, "Refinement rounds");
    oracle->add_option("--out", oracle_opts.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? fedmimo::kExitOk : fedmimo::kExitError;
    }

    if (solve->parsed()) return fedmimo::cmd_solve(solve_opts, std::cerr);
    if (sweep->parsed()) return fedmimo::cmd_sweep(sweep_opts, std::cerr);
    if (oracle->parsed()) return fedmimo::cmd_oracle(oracle_opts, std::cerr);
    return fedmimo::kExitError;
}
