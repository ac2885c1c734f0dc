#pragma once

// Experiment runners: CRB sweeps, Monte Carlo estimator comparisons, and the
// randomized theorem/identity verification suite. All runners are
// deterministic functions of (spec, seed); Monte Carlo trials execute in
// parallel with per-trial RNG streams and order-independent aggregation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcdoa/bounds.hpp"
#include "tcdoa/csv.hpp"
#include "tcdoa/ivssf.hpp"
#include "tcdoa/scenario_config.hpp"

namespace tcdoa {

struct BoundsSweepSpec {
    ScenarioConfig scenario;
    std::string axis = "n";  // n | snr_db
    std::vector<double> values;
    std::string output;

    void validate() const;
};

// Columns: axis, then per-source diagonal entries of the three bounds, then
// det/iid and cor/iid diagonal ratios.
Table run_bounds_sweep(const BoundsSweepSpec& spec);

struct MonteCarloSpec {
    ScenarioConfig scenario;  // single-source
    std::string axis = "n";   // n | snr_db | M
    std::vector<double> values;
    bool run_one_sided = true;
    bool run_two_sided = true;
    Index trials = 1000;
    std::uint64_t seed = 0;
    IvConfig iv;  // variant field ignored; M overridden on an M axis
    bool crb_reference = true;
    // Exact CRB reference is computed only while n*L stays within the dense
    // working ceiling; larger points report NaN.
    Index crb_reference_max_dim = 2400;
    Index threads = 0;  // 0 = hardware concurrency
    std::string output;
    // When nonempty, writes one row per (axis value, trial, method) with the
    // estimate, the criterion at the optimum, and the coarse-stage argmin.
    std::string trial_log;

    void validate() const;
};

struct MethodStats {
    double bias = 0.0;
    double stddev = 0.0;
    double se_std = 0.0;  // std / sqrt(2 (trials_ok - 1))
    Index failed = 0;
};

struct MonteCarloRow {
    double axis_value = 0.0;
    MethodStats one_sided;
    MethodStats two_sided;
    double sqrt_crb_cor = 0.0;
    Index trials = 0;
};

struct MonteCarloReport {
    std::string axis;
    bool has_one_sided = true;
    bool has_two_sided = true;
    std::vector<MonteCarloRow> rows;
    std::uint64_t seed = 0;
    std::string rng_name;

    Table to_table() const;
};

// Runs trials at every axis point; both variants see the same draws. Trials
// whose statistics are numerically singular are excluded and counted; the
// run aborts when more than 1% of trials fail.
MonteCarloReport run_montecarlo(const MonteCarloSpec& spec);

struct CheckResult {
    std::string name;
    double max_violation = 0.0;
    double tolerance = 0.0;
    int evaluations = 0;
    bool pass() const { return max_violation <= tolerance; }
};

struct TheoremReport {
    std::vector<CheckResult> checks;
    int scenarios = 0;
    bool all_pass() const;
};

// Randomized stationary scenarios (L in 2..5, m in 1..L-1, n in 2..6; every
// tenth scenario is an iid-limit case) exercising the CRB orderings, the
// block-diagonal inequality, monotonicity in n, and all dual-path matrix
// identities. Scenarios whose deterministic Fisher bracket has condition
// number above 1e9 are redrawn (ill-conditioned screen).
TheoremReport run_theorem_suite(std::uint64_t seed, int count);

std::string theorem_report_to_csv_text(const TheoremReport& report);

// Writes `table` to path plus a `<path>.meta.json` sidecar describing the
// generator name, seed, and schema version.
void emit_outputs(const Table& table, const std::string& path, std::uint64_t seed);

BoundsSweepSpec bounds_sweep_spec_from_json_text(const std::string& text);
MonteCarloSpec montecarlo_spec_from_json_text(const std::string& text);
BoundsSweepSpec load_bounds_sweep_spec(const std::string& path);
MonteCarloSpec load_montecarlo_spec(const std::string& path);

}  // namespace tcdoa
