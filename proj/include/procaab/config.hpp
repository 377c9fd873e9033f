#pragma once

// Flat `key = value` experiment descriptions. Units are fixed by the key
// name; unknown, duplicate, inapplicable and missing keys are all errors.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procaab/bounds.hpp"
#include "procaab/deflection.hpp"
#include "procaab/errors.hpp"

namespace procaab {

/// Config diagnostic; line is 0 when the problem is a missing key.
class ConfigError : public InvalidInput {
public:
    ConfigError(int line, std::string key, const std::string& what);

    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

struct SweepSpec {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
    bool log_spacing = false;

    /// Ascending sample values.
    std::vector<double> values() const;
};

struct ConfigEntry {
    std::string value;
    int line = 0;
};

struct ExperimentConfig {
    Effect effect = Effect::ab_closed;
    SolenoidSpec solenoid;
    PathSpec path;
    ProbeSpec probe;
    PrecisionSpec precision;
    std::optional<InverseRange> mass_override;
    double j_ratio = 1.0;
    double beam_energy_kev = BeamDefaults::kKineticKeV;
    double detector_cm = BeamDefaults::kDetectorCm;
    double slit_cm = BeamDefaults::kSlitCm;
    std::optional<SweepSpec> sweep;
    /// Raw entries as read, keyed by name.
    std::map<std::string, ConfigEntry> entries;

    Experiment experiment() const;
    /// Copy with one numeric key replaced, re-validated.
    ExperimentConfig with_value(const std::string& key, double value) const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& file);

/// Keys accepted by parse_config, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace procaab
