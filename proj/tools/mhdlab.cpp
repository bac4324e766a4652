// Command-line front end: experiments on the incompressible viscous MHD
// system in a periodic box, plus the norm/inequality tooling around it.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhdlab/errors.hpp"
#include "mhdlab/experiments.hpp"
#include "mhdlab/run_config.hpp"

namespace {

mhdlab::RunConfig load_or_exit(const std::string& path) {
    return mhdlab::load_config(path);  // ConfigError handled by caller
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral MHD lab: runs, smallness conditions, norm "
                 "monitors and inequality suites"};
    app.require_subcommand(1);

    std::string config_path, out_path, json_path, run_dir, checkpoint_path, axis;
    std::vector<double> values;
    bool resume = false;
    int n = 32, samples = 20, oversample = 1;
    std::uint64_t seed = 1;
    double p = 6.0, r = 1.0;

    auto* gen = app.add_subcommand("gen-data", "Write the configured initial data pair");
    gen->add_option("--config", config_path, "config file")->required();
    gen->add_option("--out", out_path, "output checkpoint path")->required();

    auto* check = app.add_subcommand("check-conditions",
                                     "Evaluate the smallness conditions on initial data");
    check->add_option("--config", config_path, "config file")->required();
    check->add_option("--json", json_path, "also write reports as JSON");

    auto* run = app.add_subcommand("run", "Execute a configured run");
    run->add_option("--config", config_path, "config file")->required();
    run->add_flag("--resume", resume, "continue from the last checkpoint");

    auto* sweep = app.add_subcommand("sweep", "One run per value of a config axis");
    sweep->add_option("--config", config_path, "base config file")->required();
    sweep->add_option("--axis", axis, "config field to vary (or nu_minus)")->required();
    sweep->add_option("--values", values, "comma-separated values")
        ->required()
        ->delimiter(',');

    auto* mon = app.add_subcommand("monitor", "Annotate a run directory with bootstrap traces");
    mon->add_option("--dir", run_dir, "run directory")->required();

    auto* ineq = app.add_subcommand("inequality-suite", "Run the inequality battery");
    ineq->add_option("--n", n, "grid size");
    ineq->add_option("--samples", samples, "samples per family");
    ineq->add_option("--seed", seed, "base seed");
    ineq->add_option("--out", out_path, "output directory")->required();

    auto* norms = app.add_subcommand("norms", "One-shot norm evaluation of a checkpoint");
    norms->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();
    norms->add_option("--p", p, "Lebesgue index");
    norms->add_option("--r", r, "block summability index");
    norms->add_option("--oversample", oversample, "quadrature refinement floor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return mhdlab::cmd_gen_data(load_or_exit(config_path), out_path);
        if (check->parsed())
            return mhdlab::cmd_check_conditions(load_or_exit(config_path), json_path);
        if (run->parsed()) return mhdlab::cmd_run(load_or_exit(config_path), resume);
        if (sweep->parsed())
            return mhdlab::cmd_sweep(load_or_exit(config_path), axis, values);
        if (mon->parsed()) return mhdlab::cmd_monitor(run_dir);
        if (ineq->parsed()) return mhdlab::cmd_inequality_suite(n, samples, seed, out_path);
        if (norms->parsed()) return mhdlab::cmd_norms(checkpoint_path, p, r, oversample);
    } catch (const mhdlab::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
