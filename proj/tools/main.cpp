#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "chargenet/errors.hpp"
#include "commands.hpp"

using namespace chargenet;
using namespace chargenet::cli;

namespace {

void add_run_options(CLI::App* sub, Invocation& inv) {
    auto* cfg = sub->add_option("config", inv.config, "Scenario config file (key = value)");
    sub->add_option("--manifest", inv.manifest, "Replay the run recorded in a manifest.json")->excludes(cfg);
    auto& o = inv.overrides;
    sub->add_option("--mode", o.mode, "reservation-aware | reservation-blind");
    sub->add_option("--onboard-ac", o.onboard_ac_kw, "On-board AC charger limit [kW]");
    sub->add_option("--reserve", o.reserve_soc, "Reserve state of charge");
    sub->add_option("--seed", o.seed, "Scenario seed (default: config, then $CHARGENET_SEED)");
    sub->add_option("--threads", o.threads, "Worker threads (0 = available parallelism)");
    sub->add_option("--replicates", o.replicates, "Independent replicates per point");
    sub->add_option("--n-ev", o.n_ev_grid, "Fleet sizes, comma separated");
    sub->add_option("--out", o.output_dir, "Output directory");
    sub->add_option("--set", o.assignments, "Override any config key (key=value, repeatable)");
    sub->add_flag("-q,--quiet", inv.quiet, "No progress output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator of a public EV charging network"};
    app.set_version_flag("--version", CHARGENET_VERSION);
    app.require_subcommand(1);

    Invocation inv;

    auto* simulate = app.add_subcommand("simulate", "Metrics over a fleet-size grid");
    add_run_options(simulate, inv);
    simulate->add_flag("--dump-routes", inv.dump_routes, "Write routes.jsonl and ledger.csv for the largest fleet");

    auto* faults = app.add_subcommand("faults", "Stranding probability over a fault-probability grid");
    add_run_options(faults, inv);
    faults->add_option("--pf-grid", inv.overrides.pf_grid, "a,b,c or lo:hi:log[:count] or lo:hi:lin[:count]");
    faults->add_option("--add-redundancy", inv.overrides.redundancy, "none | isolated | isolated:<km>");

    auto* capacity = app.add_subcommand("capacity", "Largest fleet meeting a failure-probability target");
    add_run_options(capacity, inv);
    capacity->add_option("--threshold", inv.overrides.threshold_kph, "Average-speed threshold [kph]");
    capacity->add_option("--target", inv.overrides.target_p, "Acceptable failure probability");

    ValidateOptions vopts;
    auto* validate = app.add_subcommand("validate", "Check model arithmetic and sampling against reference values");
    validate->add_flag("--dist", vopts.dist, "Trip length distribution");
    validate->add_flag("--ev-math", vopts.ev_math, "EV range, charging and effective speed");
    validate->add_flag("--cost", vopts.cost, "Infrastructure cost per user");
    validate->add_option("--seed", vopts.seed, "Sampling seed");

    std::filesystem::path fixture_dir = "fixtures";
    std::uint64_t fixture_seed = 11;
    auto* gen = app.add_subcommand("gen-fixtures", "Write a synthetic population grid, networks and a scenario");
    gen->add_option("--out", fixture_dir, "Output directory");
    gen->add_option("--seed", fixture_seed, "Network placement seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (simulate->parsed()) {
            inv.command = "simulate";
            return cmd_simulate(inv);
        }
        if (faults->parsed()) {
            inv.command = "faults";
            return cmd_faults(inv);
        }
        if (capacity->parsed()) {
            inv.command = "capacity";
            return cmd_capacity(inv);
        }
        if (validate->parsed()) return cmd_validate(vopts);
        if (gen->parsed()) return cmd_gen_fixtures(fixture_dir, fixture_seed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataSourceError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ValidationError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_FAILURE;
    }
    return EXIT_FAILURE;
}
