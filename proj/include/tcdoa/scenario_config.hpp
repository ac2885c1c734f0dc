#pragma once

// Declarative scenario configuration with JSON file round-trip.
// Schema is documented in the repository README; every field here
// round-trips through to_json/from_json.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tcdoa/scenario.hpp"

namespace tcdoa {

inline constexpr int kSchemaVersion = 1;

struct ArrayConfig {
    Index elements = 0;               // used when positions is empty
    double spacing = 1.0;             // half-wavelength units
    std::vector<double> positions;    // explicit positions override elements/spacing
    std::string convention = "cosine";  // cosine | broadside-sine | electrical
};

struct NoiseConfig {
    std::string model = "exponential";  // exponential | white
    double sigma2 = 1.0;
    double rate = 1.0;  // exponential decay rate
};

struct SignalConfig {
    std::string model = "kronecker";  // kronecker | fir | explicit
    // kronecker
    double alpha_t = 0.2;
    double alpha_s = 0.5;
    double power = 1.0;
    // fir: temporal taps plus a spatial factor; spatial defaults to the
    // exponential family with alpha_s/power when `spatial` is empty.
    std::vector<double> taps;
    std::vector<std::vector<std::vector<std::array<double, 2>>>> explicit_lag_entries;
};

struct ScenarioConfig {
    int schema_version = kSchemaVersion;
    ArrayConfig array;
    std::vector<double> angles;
    NoiseConfig noise;
    SignalConfig signal;
    Index n = 2;
    double snr_db = 0.0;
};

ScenarioConfig scenario_config_from_json_text(const std::string& text);
std::string scenario_config_to_json_text(const ScenarioConfig& cfg);
ScenarioConfig load_scenario_config(const std::string& path);
void save_scenario_config(const ScenarioConfig& cfg, const std::string& path);

// FNV-1a over the canonical JSON form; used for result provenance tags.
std::uint64_t scenario_hash(const ScenarioConfig& cfg);

// Validate and materialize a scenario: steering matrices, SNR-scaled noise.
Scenario make_scenario(const ScenarioConfig& cfg);

AngleConvention parse_convention(const std::string& name);
std::string convention_name(AngleConvention conv);

}  // namespace tcdoa
