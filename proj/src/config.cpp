#include "procaab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace procaab {

ConfigError::ConfigError(int line, std::string key, const std::string& what)
    : InvalidInput(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line), key_(std::move(key)) {}

std::vector<double> SweepSpec::values() const {
    std::vector<double> v(steps);
    const double lo = std::min(start, stop), hi = std::max(start, stop);
    for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        v[i] = log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    v.back() = steps == 1 ? lo : hi;
    return v;
}

namespace {

enum Scope : unsigned { kAb = 1, kTk = 2, kPm = 4, kAll = 7 };

struct KeySpec {
    const char* name;
    unsigned allowed;
    unsigned required;
    bool numeric;
};

constexpr KeySpec kKeys[] = {
    {"effect", kAll, kAll, false},
    {"a_cm", kAll, kAll, true},
    {"j_gauss", kAll, kAll, true},
    {"rho_cm", kAb | kTk, kAb | kTk, true},
    {"x_cm", kPm, kPm, true},
    {"y_cm", kPm, kPm, true},
    {"q_statc", kAb | kPm, 0, true},
    {"d_statc_cm", kTk, kTk, true},
    {"l_cm", kTk, kTk, true},
    {"mu_bar_gauss_cm", kTk, 0, true},
    {"epsilon", kAll, kAll, true},
    {"m_gamma_inv_cm", kAll, 0, true},
    {"j_ratio", kPm, 0, true},
    {"beam_energy_kev", kPm, 0, true},
    {"detector_cm", kPm, 0, true},
    {"slit_cm", kPm, 0, true},
    {"sweep_param", kAll, 0, false},
    {"sweep_start", kAll, 0, true},
    {"sweep_stop", kAll, 0, true},
    {"sweep_steps", kAll, 0, true},
    {"sweep_spacing", kAll, 0, false},
};

const KeySpec* find_key(std::string_view name) {
    for (const auto& k : kKeys) {
        if (name == k.name) return &k;
    }
    return nullptr;
}

unsigned scope_of(Effect e) {
    switch (e) {
        case Effect::ab_closed: return kAb;
        case Effect::tkachuk: return kTk;
        case Effect::pm_q: return kPm;
    }
    return 0;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, ConfigEntry> tokenize(std::string_view text) {
    std::map<std::string, ConfigEntry> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
        if (!find_key(key)) throw ConfigError(line_no, key, "unknown key '" + key + "'");
        if (value.empty()) throw ConfigError(line_no, key, "key '" + key + "' has no value");
        if (const auto it = out.find(key); it != out.end()) {
            throw ConfigError(line_no, key,
                              "duplicate key '" + key + "' (first set on line " + std::to_string(it->second.line) + ")");
        }
        out.emplace(key, ConfigEntry{value, line_no});
        if (end == text.size()) break;
    }
    return out;
}

double to_number(const std::string& key, const ConfigEntry& e) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ConfigError(e.line, key, "key '" + key + "': '" + e.value + "' is not a finite number");
    }
    return v;
}

class Reader {
public:
    explicit Reader(const std::map<std::string, ConfigEntry>& entries) : entries_(entries) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    const ConfigEntry& entry(const std::string& key) const { return entries_.at(key); }
    double number(const std::string& key) const { return to_number(key, entry(key)); }
    std::optional<double> maybe(const std::string& key) const {
        return has(key) ? std::optional<double>(number(key)) : std::nullopt;
    }
    /// Positive number; a bad value is reported against the key's line.
    double positive(const std::string& key) const {
        const double v = number(key);
        if (!(v > 0.0)) throw ConfigError(entry(key).line, key, "key '" + key + "' must be > 0");
        return v;
    }

private:
    const std::map<std::string, ConfigEntry>& entries_;
};

ExperimentConfig build(std::map<std::string, ConfigEntry> entries) {
    const Reader in(entries);
    if (!in.has("effect")) throw ConfigError(0, "effect", "missing required key 'effect'");
    ExperimentConfig c;
    try {
        c.effect = effect_from_string(in.entry("effect").value);
    } catch (const InvalidInput& err) {
        throw ConfigError(in.entry("effect").line, "effect", err.what());
    }
    const unsigned scope = scope_of(c.effect);
    const std::string effect_name(to_string(c.effect));

    for (const auto& [key, e] : entries) {
        if (!(find_key(key)->allowed & scope)) {
            throw ConfigError(e.line, key, "key '" + key + "' is not used by effect " + effect_name);
        }
    }
    for (const auto& [key, e] : entries) {
        if (find_key(key)->numeric) to_number(key, e);
    }
    for (const auto& k : kKeys) {
        if ((k.required & scope) && !in.has(k.name)) {
            throw ConfigError(0, k.name, "missing required key '" + std::string(k.name) + "' for effect " + effect_name);
        }
    }

    c.solenoid.radius_cm = in.positive("a_cm");
    c.solenoid.interior_field_gauss = in.number("j_gauss");
    if (c.solenoid.interior_field_gauss == 0.0) {
        throw ConfigError(in.entry("j_gauss").line, "j_gauss", "key 'j_gauss' must be nonzero");
    }
    c.precision.epsilon = in.number("epsilon");
    if (!(c.precision.epsilon > 0.0 && c.precision.epsilon < 1.0)) {
        throw ConfigError(in.entry("epsilon").line, "epsilon", "key 'epsilon' must satisfy 0 < epsilon < 1");
    }
    if (in.has("m_gamma_inv_cm")) c.mass_override = InverseRange::from_range_cm(in.positive("m_gamma_inv_cm"));

    if (c.effect == Effect::pm_q) {
        c.path = OpenSegment{in.positive("x_cm"), in.positive("y_cm")};
        if (in.has("j_ratio")) c.j_ratio = in.positive("j_ratio");
        if (in.has("beam_energy_kev")) c.beam_energy_kev = in.positive("beam_energy_kev");
        if (in.has("detector_cm")) c.detector_cm = in.positive("detector_cm");
        if (in.has("slit_cm")) c.slit_cm = in.positive("slit_cm");
    } else {
        c.path = ClosedLoop{in.positive("rho_cm")};
    }
    if (c.effect == Effect::tkachuk) {
        c.probe = ProbeSpec::electric_dipole(in.positive("d_statc_cm"));
        c.solenoid.tkachuk_length_cm = in.positive("l_cm");
        if (in.has("mu_bar_gauss_cm")) c.solenoid.magnetization_density = in.number("mu_bar_gauss_cm");
        try {
            c.solenoid.validate();
        } catch (const InvalidInput& err) {
            const int line = in.has("mu_bar_gauss_cm") ? in.entry("mu_bar_gauss_cm").line : 0;
            throw ConfigError(line, "mu_bar_gauss_cm", err.what());
        }
    } else {
        c.probe = ProbeSpec::charge(in.has("q_statc") ? in.positive("q_statc") : constants::kElectronCharge);
    }

    const bool any_sweep = in.has("sweep_param") || in.has("sweep_start") || in.has("sweep_stop") ||
                           in.has("sweep_steps") || in.has("sweep_spacing");
    if (any_sweep) {
        for (const char* k : {"sweep_param", "sweep_start", "sweep_stop", "sweep_steps"}) {
            if (!in.has(k)) throw ConfigError(0, k, "missing required key '" + std::string(k) + "' for a sweep");
        }
        SweepSpec s;
        s.parameter = in.entry("sweep_param").value;
        const auto* target = find_key(s.parameter);
        const int pline = in.entry("sweep_param").line;
        if (!target || !target->numeric || s.parameter.rfind("sweep_", 0) == 0) {
            throw ConfigError(pline, "sweep_param", "'" + s.parameter + "' is not a sweepable numeric key");
        }
        if (!(target->allowed & scope)) {
            throw ConfigError(pline, "sweep_param", "'" + s.parameter + "' is not used by effect " + effect_name);
        }
        s.start = in.number("sweep_start");
        s.stop = in.number("sweep_stop");
        const double steps = in.number("sweep_steps");
        if (!(steps >= 1.0) || steps != std::floor(steps) || steps > 100000.0) {
            throw ConfigError(in.entry("sweep_steps").line, "sweep_steps", "key 'sweep_steps' must be an integer >= 1");
        }
        s.steps = static_cast<int>(steps);
        if (in.has("sweep_spacing")) {
            const auto& sp = in.entry("sweep_spacing");
            if (sp.value != "linear" && sp.value != "log") {
                throw ConfigError(sp.line, "sweep_spacing", "key 'sweep_spacing' must be 'linear' or 'log'");
            }
            s.log_spacing = sp.value == "log";
        }
        if (s.log_spacing && !(s.start > 0.0 && s.stop > 0.0)) {
            throw ConfigError(in.entry("sweep_start").line, "sweep_start", "log sweep needs positive start and stop");
        }
        c.sweep = s;
    }
    c.entries = std::move(entries);
    return c;
}

}  // namespace

Experiment ExperimentConfig::experiment() const {
    Experiment e;
    e.effect = effect;
    e.probe = probe;
    e.solenoid = solenoid;
    e.path = path;
    e.j_ratio = j_ratio;
    return e;
}

ExperimentConfig ExperimentConfig::with_value(const std::string& key, double value) const {
    auto copy = entries;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    auto it = copy.find(key);
    if (it == copy.end()) {
        copy.emplace(key, ConfigEntry{buf, 0});
    } else {
        it->second.value = buf;
    }
    return build(std::move(copy));
}

ExperimentConfig parse_config(std::string_view text) { return build(tokenize(text)); }

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError(0, "", "cannot open config file '" + file.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> v;
        for (const auto& k : kKeys) v.emplace_back(k.name);
        return v;
    }();
    return keys;
}

}  // namespace procaab
