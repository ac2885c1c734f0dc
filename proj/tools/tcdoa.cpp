// Command-line front end: CRB sweeps, Monte Carlo estimator comparisons,
// randomized theorem verification, and raw snapshot dumps.
//
// Exit codes: 0 success, 1 verification check failure, 2 configuration
// error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "tcdoa/experiment.hpp"
#include "tcdoa/sampler.hpp"

namespace {

using namespace tcdoa;

struct CommonOpts {
    std::string config;
    std::string output;
    std::uint64_t seed = 0;
    bool seed_set = false;
    Index threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
    auto* cfg = cmd->add_option("config", opts.config, "JSON spec file");
    if (config_required) cfg->required()->check(CLI::ExistingFile);
    cmd->add_option("--output,-o", opts.output, "override the output path");
    cmd->add_option("--seed,-s", opts.seed, "override the RNG seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--threads,-j", opts.threads, "worker threads (0 = hardware)");
}

int run_bounds_sweep_cmd(const CommonOpts& opts) {
    BoundsSweepSpec spec = load_bounds_sweep_spec(opts.config);
    if (!opts.output.empty()) spec.output = opts.output;
    const Table table = run_bounds_sweep(spec);
    emit_outputs(table, spec.output, 0);
    std::cout << "wrote " << table.rows.size() << " rows to " << spec.output << "\n";
    return 0;
}

int run_montecarlo_cmd(const CommonOpts& opts) {
    MonteCarloSpec spec = load_montecarlo_spec(opts.config);
    if (!opts.output.empty()) spec.output = opts.output;
    if (opts.seed_set) spec.seed = opts.seed;
    if (opts.threads > 0) spec.threads = opts.threads;
    const MonteCarloReport report = run_montecarlo(spec);
    emit_outputs(report.to_table(), spec.output, report.seed);
    std::cout << "rng=" << report.rng_name << " seed=" << report.seed << "\n";
    for (const MonteCarloRow& row : report.rows) {
        std::printf("%s=%g", report.axis.c_str(), row.axis_value);
        if (report.has_one_sided) {
            std::printf("  1s: bias=%+.5g std=%.5g", row.one_sided.bias,
                        row.one_sided.stddev);
        }
        if (report.has_two_sided) {
            std::printf("  2s: bias=%+.5g std=%.5g", row.two_sided.bias,
                        row.two_sided.stddev);
        }
        std::printf("  sqrt(crb_cor)=%.5g\n", row.sqrt_crb_cor);
    }
    std::cout << "wrote " << report.rows.size() << " rows to " << spec.output << "\n";
    return 0;
}

int run_verify_cmd(const CommonOpts& opts, int count_flag) {
    std::uint64_t seed = 1;
    int count = 100;
    std::string output;
    if (!opts.config.empty()) {
        std::ifstream in(opts.config);
        if (!in) throw ConfigError("cannot open spec file: " + opts.config);
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) throw ConfigError("verify spec parse error");
        seed = j.value("seed", seed);
        count = j.value("count", count);
        output = j.value("output", output);
    }
    if (opts.seed_set) seed = opts.seed;
    if (count_flag > 0) count = count_flag;
    if (!opts.output.empty()) output = opts.output;

    const TheoremReport report = run_theorem_suite(seed, count);
    for (const CheckResult& c : report.checks) {
        std::printf("%-28s %s  max_violation=%.3e  tolerance=%.1e  (%d evaluations)\n",
                    c.name.c_str(), c.pass() ? "PASS" : "FAIL", c.max_violation,
                    c.tolerance, c.evaluations);
    }
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) throw ConfigError("cannot write " + output);
        out << theorem_report_to_csv_text(report);
    }
    std::printf("%d randomized scenarios, %s\n", report.scenarios,
                report.all_pass() ? "all checks passed" : "CHECK FAILURES");
    return report.all_pass() ? 0 : 1;
}

int run_dump_cmd(const CommonOpts& opts) {
    std::ifstream in(opts.config);
    if (!in) throw ConfigError("cannot open spec file: " + opts.config);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("dump-snapshots spec parse error");
    const ScenarioConfig cfg =
        scenario_config_from_json_text(j.contains("scenario") ? j.at("scenario").dump()
                                                              : j.dump());
    std::uint64_t seed = j.value("seed", std::uint64_t(0));
    if (opts.seed_set) seed = opts.seed;
    std::string output = j.value("output", std::string("snapshots.bin"));
    if (!opts.output.empty()) output = opts.output;

    const Scenario scn = make_scenario(cfg);
    const SnapshotMatrix snap = draw_scenario(scn, RngSpec{seed, 0});
    dump_snapshots(snap, output);
    std::cout << "wrote " << snap.X.rows() << "x" << snap.X.cols()
              << " snapshot matrix to " << output << " (rng=" << kRngName
              << " seed=" << seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cramer-Rao bound and IV-SSF toolkit for temporally correlated "
                 "direction-of-arrival estimation"};
    app.require_subcommand(1);

    CommonOpts bounds_opts, mc_opts, verify_opts, dump_opts;
    int verify_count = 0;

    auto* bounds = app.add_subcommand("bounds-sweep",
                                      "CRB det/iid/cor sweep over n or SNR");
    add_common(bounds, bounds_opts, true);

    auto* mc = app.add_subcommand("montecarlo",
                                  "one/two-sided IV-SSF bias and std sweep");
    add_common(mc, mc_opts, true);

    auto* verify = app.add_subcommand("verify",
                                      "randomized theorem and identity checks");
    add_common(verify, verify_opts, false);
    verify->add_option("--count,-c", verify_count, "number of random scenarios");

    auto* dump = app.add_subcommand("dump-snapshots", "write one raw snapshot draw");
    add_common(dump, dump_opts, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) return run_bounds_sweep_cmd(bounds_opts);
        if (mc->parsed()) return run_montecarlo_cmd(mc_opts);
        if (verify->parsed()) return run_verify_cmd(verify_opts, verify_count);
        if (dump->parsed()) return run_dump_cmd(dump_opts);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
