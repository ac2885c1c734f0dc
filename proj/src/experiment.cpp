#include "tcdoa/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "tcdoa/sampler.hpp"

namespace tcdoa {

void BoundsSweepSpec::validate() const {
    if (axis != "n" && axis != "snr_db") {
        throw ConfigError("bounds sweep axis must be 'n' or 'snr_db'");
    }
    if (values.empty()) throw ConfigError("bounds sweep needs axis values");
    if (!std::is_sorted(values.begin(), values.end())) {
        throw ConfigError("axis values must be sorted ascending");
    }
}

Table run_bounds_sweep(const BoundsSweepSpec& spec) {
    spec.validate();
    const Index m = Index(spec.scenario.angles.size());
    Table table;
    table.header.push_back(spec.axis);
    const char* names[] = {"crb_det", "crb_iid", "crb_cor"};
    for (const char* name : names) {
        for (Index j = 0; j < m; ++j) {
            table.header.push_back(std::string(name) + "_" + std::to_string(j + 1));
        }
    }
    for (const char* name : {"det_over_iid", "cor_over_iid"}) {
        for (Index j = 0; j < m; ++j) {
            table.header.push_back(std::string(name) + "_" + std::to_string(j + 1));
        }
    }

    for (double value : spec.values) {
        ScenarioConfig cfg = spec.scenario;
        if (spec.axis == "n") {
            cfg.n = Index(std::llround(value));
        } else {
            cfg.snr_db = value;
        }
        const Scenario scn = make_scenario(cfg);
        const CMatrix P0 = scn.signal.zero_lag();
        const CrbResult det = crb_det(scn, P0, scn.n);
        const CrbResult iid = crb_iid(scn, P0, scn.n);
        const CrbResult cor = crb_cor(scn, scn.signal.spacetime(scn.n), scn.n);

        std::vector<double> row;
        row.push_back(value);
        for (const CrbResult* r : {&det, &iid, &cor}) {
            for (Index j = 0; j < m; ++j) row.push_back(r->matrix(j, j));
        }
        for (Index j = 0; j < m; ++j) row.push_back(det.matrix(j, j) / iid.matrix(j, j));
        for (Index j = 0; j < m; ++j) row.push_back(cor.matrix(j, j) / iid.matrix(j, j));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void MonteCarloSpec::validate() const {
    if (axis != "n" && axis != "snr_db" && axis != "M") {
        throw ConfigError("montecarlo axis must be 'n', 'snr_db', or 'M'");
    }
    if (values.empty()) throw ConfigError("montecarlo needs axis values");
    if (!std::is_sorted(values.begin(), values.end())) {
        throw ConfigError("axis values must be sorted ascending");
    }
    if (trials < 1) throw ConfigError("montecarlo needs a positive trial count");
    if (!run_one_sided && !run_two_sided) {
        throw ConfigError("montecarlo needs at least one method");
    }
    if (scenario.angles.size() != 1) {
        throw ConfigError("montecarlo reporting supports single-source scenarios only");
    }
}

namespace {

struct MethodOutcome {
    double omega = 0.0;
    double criterion = 0.0;
    double coarse = 0.0;
    bool ok = false;
};

struct TrialOutcome {
    MethodOutcome one, two;
};

MethodStats collect(const std::vector<TrialOutcome>& outcomes, bool two_sided,
                    double omega_true) {
    MethodStats st;
    std::vector<double> est;
    est.reserve(outcomes.size());
    for (const TrialOutcome& o : outcomes) {
        const MethodOutcome& m = two_sided ? o.two : o.one;
        if (m.ok) {
            est.push_back(m.omega);
        } else {
            ++st.failed;
        }
    }
    if (est.empty()) return st;
    double mean = 0.0;
    for (double e : est) mean += e;
    mean /= double(est.size());
    st.bias = mean - omega_true;
    if (est.size() > 1) {
        double ss = 0.0;
        for (double e : est) ss += (e - mean) * (e - mean);
        st.stddev = std::sqrt(ss / double(est.size() - 1));
        st.se_std = st.stddev / std::sqrt(2.0 * double(est.size() - 1));
    }
    return st;
}

double crb_reference_value(const Scenario& scn, Index max_dim) {
    if (scn.n * scn.sensors() > max_dim) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const CrbResult cor = crb_cor(scn, scn.signal.spacetime(scn.n), scn.n);
    return std::sqrt(cor.matrix(0, 0));
}

}  // namespace

Table MonteCarloReport::to_table() const {
    Table table;
    table.header.push_back(axis);
    if (has_one_sided) {
        table.header.push_back("bias_1s");
        table.header.push_back("std_1s");
    }
    if (has_two_sided) {
        table.header.push_back("bias_2s");
        table.header.push_back("std_2s");
    }
    table.header.push_back("sqrt_crb_cor");
    if (has_one_sided) {
        table.header.push_back("se_std_1s");
        table.header.push_back("failed_1s");
    }
    if (has_two_sided) {
        table.header.push_back("se_std_2s");
        table.header.push_back("failed_2s");
    }
    table.header.push_back("trials");
    for (const MonteCarloRow& r : rows) {
        std::vector<double> row;
        row.push_back(r.axis_value);
        if (has_one_sided) {
            row.push_back(r.one_sided.bias);
            row.push_back(r.one_sided.stddev);
        }
        if (has_two_sided) {
            row.push_back(r.two_sided.bias);
            row.push_back(r.two_sided.stddev);
        }
        row.push_back(r.sqrt_crb_cor);
        if (has_one_sided) {
            row.push_back(r.one_sided.se_std);
            row.push_back(double(r.one_sided.failed));
        }
        if (has_two_sided) {
            row.push_back(r.two_sided.se_std);
            row.push_back(double(r.two_sided.failed));
        }
        row.push_back(double(r.trials));
        table.rows.push_back(std::move(row));
    }
    return table;
}

MonteCarloReport run_montecarlo(const MonteCarloSpec& spec) {
    spec.validate();
    MonteCarloReport report;
    report.axis = spec.axis;
    report.has_one_sided = spec.run_one_sided;
    report.has_two_sided = spec.run_two_sided;
    report.seed = spec.seed;
    report.rng_name = kRngName;

    const Index nthreads = spec.threads > 0
                               ? spec.threads
                               : std::max(1u, std::thread::hardware_concurrency());

    Table log;
    log.header = {"axis_value", "trial",     "method", "omega_hat",
                  "criterion",  "coarse_omega", "failed"};

    for (std::size_t axis_idx = 0; axis_idx < spec.values.size(); ++axis_idx) {
        const double value = spec.values[axis_idx];
        ScenarioConfig cfg = spec.scenario;
        IvConfig iv = spec.iv;
        if (spec.axis == "n") {
            cfg.n = Index(std::llround(value));
        } else if (spec.axis == "snr_db") {
            cfg.snr_db = value;
        } else {
            iv.M = Index(std::llround(value));
        }
        const Scenario scn = make_scenario(cfg);
        iv.validate(scn.n);
        const double omega_true = scn.omegas()[0];

        std::vector<TrialOutcome> outcomes(std::size_t(spec.trials));
        auto run_method = [&](const CMatrix& X, IvVariant variant, MethodOutcome& out) {
            IvConfig cfg = iv;
            cfg.variant = variant;
            try {
                const EstimateResult res = estimate(X, scn.array, 1, cfg);
                out.omega = res.omegas[0];
                out.criterion = res.criterion_value;
                out.coarse = res.coarse_omegas[0];
                out.ok = true;
            } catch (const NumericalError&) {
            }
        };
        auto worker = [&](Index first, Index last) {
            for (Index trial = first; trial < last; ++trial) {
                const RngSpec rng{spec.seed,
                                  (std::uint64_t(axis_idx) << 32) ^ std::uint64_t(trial)};
                const SnapshotMatrix snap = draw_scenario(scn, rng);
                TrialOutcome& out = outcomes[std::size_t(trial)];
                if (spec.run_one_sided) {
                    run_method(snap.X, IvVariant::OneSided, out.one);
                }
                if (spec.run_two_sided) {
                    run_method(snap.X, IvVariant::TwoSided, out.two);
                }
            }
        };
        if (nthreads <= 1 || spec.trials < 2 * nthreads) {
            worker(0, spec.trials);
        } else {
            std::vector<std::thread> pool;
            const Index chunk = (spec.trials + nthreads - 1) / nthreads;
            for (Index t0 = 0; t0 < spec.trials; t0 += chunk) {
                pool.emplace_back(worker, t0, std::min(spec.trials, t0 + chunk));
            }
            for (std::thread& th : pool) th.join();
        }

        MonteCarloRow row;
        row.axis_value = value;
        row.trials = spec.trials;
        if (spec.run_one_sided) row.one_sided = collect(outcomes, false, omega_true);
        if (spec.run_two_sided) row.two_sided = collect(outcomes, true, omega_true);
        const Index failed =
            std::max(row.one_sided.failed, row.two_sided.failed);
        if (double(failed) > 0.01 * double(spec.trials)) {
            std::ostringstream os;
            os << "run_montecarlo: " << failed << " of " << spec.trials
               << " trials failed at " << spec.axis << " = " << value;
            throw NumericalError(os.str());
        }
        row.sqrt_crb_cor = spec.crb_reference
                               ? crb_reference_value(scn, spec.crb_reference_max_dim)
                               : std::numeric_limits<double>::quiet_NaN();
        report.rows.push_back(row);

        if (!spec.trial_log.empty()) {
            for (Index trial = 0; trial < spec.trials; ++trial) {
                const TrialOutcome& o = outcomes[std::size_t(trial)];
                if (spec.run_one_sided) {
                    log.rows.push_back({value, double(trial), 1.0, o.one.omega,
                                        o.one.criterion, o.one.coarse,
                                        o.one.ok ? 0.0 : 1.0});
                }
                if (spec.run_two_sided) {
                    log.rows.push_back({value, double(trial), 2.0, o.two.omega,
                                        o.two.criterion, o.two.coarse,
                                        o.two.ok ? 0.0 : 1.0});
                }
            }
        }
    }
    if (!spec.trial_log.empty()) {
        write_csv(log, spec.trial_log);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Randomized theorem / identity suite
// ---------------------------------------------------------------------------

namespace {

constexpr double kPi = std::numbers::pi;

struct SuiteChecks {
    CheckResult eq33{"identity_eq33", 0.0, 1e-9, 0};
    CheckResult eq20v26{"crb_cor_eq20_vs_eq26", 0.0, 1e-9, 0};
    CheckResult eq25{"whitening_eq25", 0.0, 1e-10, 0};
    CheckResult eq62{"inversion_eq62", 0.0, 1e-9, 0};
    CheckResult eq70{"ivssf_reduction_eq70", 0.0, 1e-9, 0};
    CheckResult ord_iid{"ordering_iid_minus_cor", 0.0, 1e-9, 0};
    CheckResult ord_det{"ordering_cor_minus_det", 0.0, 1e-9, 0};
    CheckResult blockdiag{"blockdiag_inequality_eq41", 0.0, 1e-9, 0};
    CheckResult mono{"monotonicity_in_n", -1.0, 0.0, 0};
    CheckResult iid_eq{"iid_reduction_equality", 0.0, 1e-10, 0};
};

double rel_diff(const CMatrix& a, const CMatrix& b) {
    const double scale = std::max(1e-300, a.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

double rel_diff(const RMatrix& a, const RMatrix& b) {
    const double scale = std::max(1e-300, a.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

void fold(CheckResult& check, double violation) {
    check.max_violation = std::max(check.max_violation, violation);
    ++check.evaluations;
}

// PSD violation of `diff`, normalized by the spectral norm of `scale_ref`.
double psd_violation(const RMatrix& diff, const RMatrix& scale_ref) {
    const double scale = std::max(1e-300, spectral_norm(scale_ref));
    return std::max(0.0, -min_eigenvalue(diff)) / scale;
}

struct RandomScenario {
    Scenario scn;
    bool iid_limit = false;
};

CMatrix random_hpd(std::mt19937_64& gen, Index m) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix G(m, m);
    for (Index j = 0; j < m; ++j) {
        for (Index i = 0; i < m; ++i) G(i, j) = Complex(normal(gen), normal(gen));
    }
    CMatrix P = G * G.adjoint();
    const double ridge = 0.25 * P.real().trace() / double(m) + 0.1;
    P += ridge * CMatrix::Identity(m, m);
    return P;
}

RandomScenario make_random_scenario(std::mt19937_64& gen, bool iid_limit) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Index L = 2 + Index(gen() % 4);      // 2..5
        const Index m = 1 + Index(gen() % std::uint64_t(L - 1));
        const Index n = 2 + Index(gen() % 5);      // 2..6

        std::vector<double> omegas;
        bool ok = true;
        for (Index j = 0; j < m; ++j) {
            const double w = -kPi + 2.0 * kPi * unif(gen);
            for (double prev : omegas) {
                if (std::abs(w - prev) < 0.3) ok = false;
            }
            omegas.push_back(w);
        }
        if (!ok) continue;

        Scenario s;
        s.array = ArrayModel::ula(L, AngleConvention::Electrical);
        s.sources.angles = omegas;
        try {
            s.A = build_A(s.array, s.sources);
        } catch (const NumericalError&) {
            continue;
        }
        s.D = build_D(s.array, s.sources);
        s.n = n;
        s.noise = NoiseModel::exponential(L, 0.3 + 1.2 * unif(gen),
                                          0.5 + unif(gen));

        if (iid_limit) {
            std::vector<CMatrix> lags(1, random_hpd(gen, m));
            s.signal = SignalCovariance::explicit_lags(std::move(lags));
        } else {
            // One or two separable components with random temporal taps; a
            // small P_0 ridge keeps the space-time covariance invertible.
            const int comps = 1 + int(gen() % 2);
            std::vector<CMatrix> lags(std::size_t(6), CMatrix::Zero(m, m));
            for (int q = 0; q < comps; ++q) {
                const std::size_t ntaps = 2 + gen() % 3;
                std::vector<double> taps(ntaps);
                double energy = 0.0;
                for (double& t : taps) {
                    t = -1.0 + 2.0 * unif(gen);
                    energy += t * t;
                }
                if (energy < 1e-3) {
                    taps[0] = 1.0;
                    energy = 0.0;
                    for (double t : taps) energy += t * t;
                }
                const CMatrix Ps = random_hpd(gen, m);
                for (std::size_t k = 0; k < lags.size(); ++k) {
                    double r = 0.0;
                    for (std::size_t i = 0; i + k < ntaps; ++i) {
                        r += taps[i] * taps[i + k];
                    }
                    lags[k] += (r / energy) * Ps;
                }
            }
            lags[0] += 0.05 * lags[0].real().trace() / double(m) *
                       CMatrix::Identity(m, m);
            s.signal = SignalCovariance::explicit_lags(std::move(lags));
        }

        // Ill-conditioned screen on the whitened steering gram.
        try {
            if (steering_gram_condition(s) > kConditionScreen) continue;
        } catch (const NumericalError&) {
            continue;
        }
        return RandomScenario{std::move(s), iid_limit};
    }
    throw NumericalError("make_random_scenario: could not draw a well-conditioned scenario");
}

}  // namespace

bool TheoremReport::all_pass() const {
    for (const CheckResult& c : checks) {
        if (!c.pass()) return false;
    }
    return true;
}

TheoremReport run_theorem_suite(std::uint64_t seed, int count) {
    std::mt19937_64 gen(seed ^ 0x74636f6164ULL);
    SuiteChecks ck;

    for (int i = 0; i < count; ++i) {
        const bool iid_limit = (i % 10) == 9;
        const RandomScenario rs = make_random_scenario(gen, iid_limit);
        const Scenario& scn = rs.scn;
        const Index n = scn.n;
        const Index m = scn.source_count();
        const CMatrix P0 = scn.signal.zero_lag();
        const BlockMatrix Pst = scn.signal.spacetime(n);

        // dual-path identities
        {
            const CMatrix As = kron(CMatrix::Identity(n, n), scn.A);
            const CMatrix Cs = kron(CMatrix::Identity(n, n), scn.noise.spatial);
            const CMatrix R = As * Pst.dense() * As.adjoint() + Cs;
            const CMatrix id = CMatrix::Identity(n * m, n * m);

            const CMatrix lhs33 =
                Pst.dense() * (As.adjoint() * solve_hpd(R, As * Pst.dense()));
            const CMatrix rhs33 =
                Pst.dense() -
                solve_hpd(solve_hpd(Pst.dense(), id) +
                              As.adjoint() * solve_hpd(Cs, As),
                          id);
            fold(ck.eq33, rel_diff(lhs33, rhs33));

            const CMatrix q = As.adjoint() * solve_hpd(R, As);
            const CMatrix gram_inv =
                solve_hpd(As.adjoint() * solve_hpd(Cs, As), id);
            const CMatrix q2 = solve_hpd(Pst.dense() + gram_inv, id);
            fold(ck.eq62, rel_diff(q, q2));

            const CMatrix cs_isqrt = kron(CMatrix::Identity(n, n),
                                          herm_sqrt_inv(scn.noise.spatial));
            const CMatrix G = cs_isqrt * As;
            const CMatrix Rp =
                G * Pst.dense() * G.adjoint() +
                CMatrix::Identity(G.rows(), G.rows());
            const CMatrix q3 = G.adjoint() * solve_hpd(Rp, G);
            fold(ck.eq25, rel_diff(q, q3));
        }

        // eq70 reduction through the prediction window
        {
            const Index M = std::min<Index>(2, n - 1);
            const auto offsets = one_sided_offsets(M);
            const CMatrix J = window_cross_stack(scn.signal, offsets);
            const CMatrix Phi = instrument_covariance(scn, offsets);
            const CMatrix Am = kron(CMatrix::Identity(M, M), scn.A);
            const CMatrix lhs = (Am * J).adjoint() * solve_hpd(Phi, Am * J);
            const CMatrix rhs = P0 - window_error_cov(scn, offsets);
            fold(ck.eq70, rel_diff(lhs, rhs));
        }

        // bounds and orderings
        const CrbResult det = crb_det(scn, P0, n);
        const CrbResult iid = crb_iid(scn, P0, n);
        const CrbResult cor = crb_cor(scn, Pst, n);
        fold(ck.ord_iid, psd_violation(iid.matrix - cor.matrix, iid.matrix));
        fold(ck.ord_det, psd_violation(cor.matrix - det.matrix, iid.matrix));

        fold(ck.eq20v26, rel_diff(crb_cor_whitened(scn, Pst, n).matrix, cor.matrix));

        {
            std::vector<CMatrix> diag_lags(1, P0);
            Scenario sd = scn;
            sd.signal = SignalCovariance::explicit_lags(std::move(diag_lags));
            const CrbResult cor_d = crb_cor(sd, sd.signal.spacetime(n), n);
            fold(ck.blockdiag, psd_violation(cor_d.matrix - cor.matrix, cor_d.matrix));
            if (rs.iid_limit) {
                fold(ck.iid_eq, rel_diff(cor.matrix, iid.matrix));
            }
        }

        // monotonicity of the diagonal in n
        {
            double worst = -1.0;
            RMatrix prev;
            for (Index nn = 2; nn <= 6; ++nn) {
                const CrbResult c = crb_cor(scn, scn.signal.spacetime(nn), nn);
                if (nn > 2) {
                    for (Index j = 0; j < m; ++j) {
                        worst = std::max(worst, (c.matrix(j, j) - prev(j, j)) /
                                                    prev(j, j));
                    }
                }
                prev = c.matrix;
            }
            fold(ck.mono, worst);
        }
    }

    TheoremReport report;
    report.scenarios = count;
    report.checks = {ck.eq33, ck.eq20v26, ck.eq25,      ck.eq62, ck.eq70,
                     ck.ord_iid, ck.ord_det, ck.blockdiag, ck.mono, ck.iid_eq};
    return report;
}

std::string theorem_report_to_csv_text(const TheoremReport& report) {
    std::ostringstream out;
    out << "check,max_violation,tolerance,evaluations,pass\n";
    char buf[64];
    for (const CheckResult& c : report.checks) {
        out << c.name << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", c.max_violation);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", c.tolerance);
        out << buf << ',' << c.evaluations << ',' << (c.pass() ? 1 : 0) << '\n';
    }
    return out.str();
}

void emit_outputs(const Table& table, const std::string& path, std::uint64_t seed) {
    write_csv(table, path);
    nlohmann::json meta = {{"schema_version", kSchemaVersion},
                           {"rng", kRngName},
                           {"seed", seed},
                           {"float_format", "%.17g"}};
    std::ofstream out(path + ".meta.json");
    if (!out) throw ConfigError("emit_outputs: cannot write metadata for " + path);
    out << meta.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Experiment spec files
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json parse_spec_json(const std::string& text) {
    try {
        json j = json::parse(text);
        if (j.at("schema_version").get<int>() != kSchemaVersion) {
            throw ConfigError("unsupported experiment schema_version");
        }
        return j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("experiment spec parse error: ") + e.what());
    }
}

ScenarioConfig scenario_from_spec(const json& j) {
    return scenario_config_from_json_text(j.at("scenario").dump());
}

void read_sweep(const json& j, std::string& axis, std::vector<double>& values) {
    const json& sweep = j.at("sweep");
    axis = sweep.at("axis").get<std::string>();
    values = sweep.at("values").get<std::vector<double>>();
}

IvConfig read_estimator(const json& j) {
    IvConfig iv;
    if (!j.contains("estimator")) return iv;
    const json& e = j.at("estimator");
    iv.M = e.value("M", Index(2));
    iv.coarse_step = e.value("coarse_step", 0.01);
    iv.fine_step = e.value("fine_step", 0.001);
    iv.omega_min = e.value("omega_min", iv.omega_min);
    iv.omega_max = e.value("omega_max", iv.omega_max);
    iv.r0_block = e.value("r0_block", Index(0));
    iv.max_sweeps = e.value("max_sweeps", 20);
    return iv;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spec file: " + path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

BoundsSweepSpec bounds_sweep_spec_from_json_text(const std::string& text) {
    const json j = parse_spec_json(text);
    BoundsSweepSpec spec;
    try {
        spec.scenario = scenario_from_spec(j);
        read_sweep(j, spec.axis, spec.values);
        spec.output = j.value("output", std::string("bounds_sweep.csv"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bounds sweep spec field error: ") + e.what());
    }
    spec.validate();
    return spec;
}

MonteCarloSpec montecarlo_spec_from_json_text(const std::string& text) {
    const json j = parse_spec_json(text);
    MonteCarloSpec spec;
    try {
        spec.scenario = scenario_from_spec(j);
        read_sweep(j, spec.axis, spec.values);
        if (j.contains("methods")) {
            spec.run_one_sided = false;
            spec.run_two_sided = false;
            for (const auto& method : j.at("methods")) {
                const std::string name = method.get<std::string>();
                if (name == "ivssf-1") {
                    spec.run_one_sided = true;
                } else if (name == "ivssf-2") {
                    spec.run_two_sided = true;
                } else {
                    throw ConfigError("unknown method: " + name);
                }
            }
        }
        spec.trials = j.value("trials", Index(1000));
        spec.seed = j.value("seed", std::uint64_t(0));
        spec.iv = read_estimator(j);
        spec.crb_reference = j.value("crb_reference", true);
        spec.crb_reference_max_dim = j.value("crb_reference_max_dim", Index(2400));
        spec.threads = j.value("threads", Index(0));
        spec.output = j.value("output", std::string("montecarlo.csv"));
        spec.trial_log = j.value("trial_log", std::string());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("montecarlo spec field error: ") + e.what());
    }
    spec.validate();
    return spec;
}

BoundsSweepSpec load_bounds_sweep_spec(const std::string& path) {
    return bounds_sweep_spec_from_json_text(read_file(path));
}

MonteCarloSpec load_montecarlo_spec(const std::string& path) {
    return montecarlo_spec_from_json_text(read_file(path));
}

}  // namespace tcdoa
