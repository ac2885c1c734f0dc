#include "tcdoa/scenario_config.hpp"

#include <fstream>
#include <json.hpp>

namespace tcdoa {

using nlohmann::json;

AngleConvention parse_convention(const std::string& name) {
    if (name == "cosine") return AngleConvention::Cosine;
    if (name == "broadside-sine") return AngleConvention::BroadsideSine;
    if (name == "electrical") return AngleConvention::Electrical;
    throw ConfigError("unknown angle convention: " + name);
}

std::string convention_name(AngleConvention conv) {
    switch (conv) {
        case AngleConvention::Cosine: return "cosine";
        case AngleConvention::BroadsideSine: return "broadside-sine";
        case AngleConvention::Electrical: return "electrical";
    }
    return "cosine";
}

namespace {

json to_json(const ScenarioConfig& cfg) {
    json array = {{"convention", cfg.array.convention}};
    if (!cfg.array.positions.empty()) {
        array["positions"] = cfg.array.positions;
    } else {
        array["elements"] = cfg.array.elements;
        array["spacing"] = cfg.array.spacing;
    }
    json signal = {{"model", cfg.signal.model}};
    if (cfg.signal.model == "kronecker") {
        signal["alpha_t"] = cfg.signal.alpha_t;
        signal["alpha_s"] = cfg.signal.alpha_s;
        signal["power"] = cfg.signal.power;
    } else if (cfg.signal.model == "fir") {
        signal["taps"] = cfg.signal.taps;
        signal["alpha_s"] = cfg.signal.alpha_s;
        signal["power"] = cfg.signal.power;
    } else if (cfg.signal.model == "explicit") {
        signal["lags"] = cfg.signal.explicit_lag_entries;
    }
    return json{{"schema_version", cfg.schema_version},
                {"array", array},
                {"sources", {{"angles", cfg.angles}}},
                {"noise",
                 {{"model", cfg.noise.model},
                  {"sigma2", cfg.noise.sigma2},
                  {"rate", cfg.noise.rate}}},
                {"signal", signal},
                {"n", cfg.n},
                {"snr_db", cfg.snr_db}};
}

ScenarioConfig from_json(const json& j) {
    ScenarioConfig cfg;
    cfg.schema_version = j.at("schema_version").get<int>();
    if (cfg.schema_version != kSchemaVersion) {
        throw ConfigError("unsupported schema_version " +
                          std::to_string(cfg.schema_version));
    }
    const json& array = j.at("array");
    if (array.contains("positions")) {
        cfg.array.positions = array.at("positions").get<std::vector<double>>();
        cfg.array.elements = static_cast<Index>(cfg.array.positions.size());
    } else {
        cfg.array.elements = array.at("elements").get<Index>();
        cfg.array.spacing = array.value("spacing", 1.0);
    }
    cfg.array.convention = array.value("convention", std::string("cosine"));
    cfg.angles = j.at("sources").at("angles").get<std::vector<double>>();
    if (j.contains("noise")) {
        const json& noise = j.at("noise");
        cfg.noise.model = noise.value("model", std::string("exponential"));
        cfg.noise.sigma2 = noise.value("sigma2", 1.0);
        cfg.noise.rate = noise.value("rate", 1.0);
    }
    const json& signal = j.at("signal");
    cfg.signal.model = signal.at("model").get<std::string>();
    if (cfg.signal.model == "kronecker") {
        cfg.signal.alpha_t = signal.at("alpha_t").get<double>();
        cfg.signal.alpha_s = signal.at("alpha_s").get<double>();
        cfg.signal.power = signal.value("power", 1.0);
    } else if (cfg.signal.model == "fir") {
        cfg.signal.taps = signal.at("taps").get<std::vector<double>>();
        cfg.signal.alpha_s = signal.value("alpha_s", 0.0);
        cfg.signal.power = signal.value("power", 1.0);
    } else if (cfg.signal.model == "explicit") {
        cfg.signal.explicit_lag_entries =
            signal.at("lags")
                .get<std::vector<std::vector<std::vector<std::array<double, 2>>>>>();
    } else {
        throw ConfigError("unknown signal model: " + cfg.signal.model);
    }
    cfg.n = j.at("n").get<Index>();
    cfg.snr_db = j.value("snr_db", 0.0);
    return cfg;
}

}  // namespace

ScenarioConfig scenario_config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario config parse error: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario config field error: ") + e.what());
    }
}

std::string scenario_config_to_json_text(const ScenarioConfig& cfg) {
    return to_json(cfg).dump(2);
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario config: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return scenario_config_from_json_text(text);
}

void save_scenario_config(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write scenario config: " + path);
    out << scenario_config_to_json_text(cfg) << "\n";
}

std::uint64_t scenario_hash(const ScenarioConfig& cfg) {
    const std::string text = to_json(cfg).dump();  // canonical: sorted keys
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Scenario make_scenario(const ScenarioConfig& cfg) {
    Scenario s;
    if (!cfg.array.positions.empty()) {
        s.array.positions = cfg.array.positions;
        s.array.convention = parse_convention(cfg.array.convention);
        s.array.validate();
    } else {
        s.array = ArrayModel::ula(cfg.array.elements, parse_convention(cfg.array.convention),
                                  cfg.array.spacing);
    }
    s.sources.angles = cfg.angles;
    s.sources.validate(s.array.size());
    const Index m = s.sources.count();

    if (cfg.signal.model == "kronecker") {
        s.signal = SignalCovariance::kronecker(m, cfg.signal.alpha_t, cfg.signal.alpha_s,
                                               cfg.signal.power);
    } else if (cfg.signal.model == "fir") {
        CMatrix Ps(m, m);
        for (Index j = 0; j < m; ++j) {
            for (Index i = 0; i < m; ++i) {
                Ps(i, j) = cfg.signal.power *
                           std::exp(-cfg.signal.alpha_s * std::abs(double(i - j)));
            }
        }
        s.signal = SignalCovariance::fir(cfg.signal.taps, Ps);
    } else if (cfg.signal.model == "explicit") {
        std::vector<CMatrix> lags;
        for (const auto& entry : cfg.signal.explicit_lag_entries) {
            const Index rows = static_cast<Index>(entry.size());
            if (rows == 0) throw ConfigError("explicit lag block must be nonempty");
            const Index cols = static_cast<Index>(entry[0].size());
            CMatrix p(rows, cols);
            for (Index i = 0; i < rows; ++i) {
                if (static_cast<Index>(entry[i].size()) != cols) {
                    throw ConfigError("explicit lag block rows have unequal lengths");
                }
                for (Index j = 0; j < cols; ++j) {
                    p(i, j) = Complex(entry[i][j][0], entry[i][j][1]);
                }
            }
            lags.push_back(std::move(p));
        }
        s.signal = SignalCovariance::explicit_lags(std::move(lags));
        if (s.signal.dim() != m) {
            throw ConfigError("explicit lag blocks must be m x m");
        }
    } else {
        throw ConfigError("unknown signal model: " + cfg.signal.model);
    }

    if (cfg.n < 2) throw ConfigError("scenario requires n >= 2");
    s.n = cfg.n;
    s.snr_db = cfg.snr_db;
    s.A = build_A(s.array, s.sources);
    s.D = build_D(s.array, s.sources);

    NoiseModel base;
    if (cfg.noise.model == "exponential") {
        base = NoiseModel::exponential(s.array.size(), cfg.noise.sigma2, cfg.noise.rate);
    } else if (cfg.noise.model == "white") {
        base = NoiseModel::white(s.array.size(), cfg.noise.sigma2);
    } else {
        throw ConfigError("unknown noise model: " + cfg.noise.model);
    }
    s.noise = apply_snr(s.A, s.signal.zero_lag(), base, cfg.snr_db);
    s.hash = scenario_hash(cfg);
    return s;
}

}  // namespace tcdoa
