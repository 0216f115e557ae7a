#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkss/errors.hpp"
#include "gkss/spectrum.hpp"
#include "gkss/states.hpp"

namespace gkss {

/// User-facing description of a spectrum: `kind` is one of harmonic,
/// poschl_teller, square_well, hydrogen, trapped_ion, table.
struct SpectrumSpec {
    std::string kind = "harmonic";
    std::optional<double> nu;
    std::optional<double> eta;
    std::vector<double> values;
};

inline Spectrum make_spectrum(const SpectrumSpec& spec)
{
    if (spec.kind == "harmonic") {
        return Spectrum::harmonic();
    }
    if (spec.kind == "poschl_teller") {
        if (!spec.nu) {
            throw ConfigError("poschl_teller needs nu");
        }
        return Spectrum::poschl_teller(*spec.nu);
    }
    if (spec.kind == "square_well") {
        return Spectrum::square_well();
    }
    if (spec.kind == "hydrogen") {
        return Spectrum::hydrogen();
    }
    if (spec.kind == "trapped_ion") {
        if (!spec.eta) {
            throw ConfigError("trapped_ion needs eta");
        }
        return Spectrum::trapped_ion(*spec.eta);
    }
    if (spec.kind == "table") {
        if (spec.values.empty()) {
            throw ConfigError("table spectrum needs a non-empty value list");
        }
        return Spectrum::table(spec.values);
    }
    throw ConfigError("unknown spectrum kind '" + spec.kind + "'");
}

/// Everything needed to build one state.
struct StateRequest {
    SpectrumSpec spectrum;
    StateClass state_class = StateClass::I;
    SqueezedParams params;
    TruncationPolicy policy;
};

enum class SweepVariable { r, alpha, eta };

inline std::string to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::r: return "r";
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::eta: return "eta";
    }
    return "?";
}

inline SweepVariable parse_sweep_variable(const std::string& text)
{
    if (text == "r") return SweepVariable::r;
    if (text == "alpha") return SweepVariable::alpha;
    if (text == "eta") return SweepVariable::eta;
    throw ConfigError("sweep variable must be r, alpha or eta, got '" + text + "'");
}

struct SweepConfig {
    StateRequest base;
    SweepVariable variable = SweepVariable::r;
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 2;

    void check() const
    {
        if (steps < 2) {
            throw ConfigError("sweep needs at least 2 steps");
        }
        if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
            throw ConfigError("sweep range needs finite start < stop");
        }
        if (variable == SweepVariable::eta && base.spectrum.kind != "trapped_ion") {
            throw ConfigError("eta sweeps need a trapped_ion spectrum");
        }
        if (variable == SweepVariable::r && start < 0.0) {
            throw ConfigError("r sweeps must start at r >= 0");
        }
    }

    /// start + i (stop - start) / (steps - 1), i = 0..steps-1.
    std::vector<double> grid() const
    {
        std::vector<double> xs(steps);
        const double h = (stop - start) / static_cast<double>(steps - 1);
        for (std::size_t i = 0; i < steps; ++i) {
            xs[i] = i + 1 == steps ? stop : start + static_cast<double>(i) * h;
        }
        return xs;
    }
};

/// Parses "a:b:n".
inline void parse_range(const std::string& text, SweepConfig& cfg)
{
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos) {
        throw ConfigError("range must look like start:stop:steps, got '" + text + "'");
    }
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, first);
        const std::string b = text.substr(first + 1, second - first - 1);
        const std::string n = text.substr(second + 1);
        cfg.start = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        cfg.stop = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        const long long steps = std::stoll(n, &used);
        if (used != n.size() || steps < 0) throw std::invalid_argument(n);
        cfg.steps = static_cast<std::size_t>(steps);
    } catch (const std::logic_error&) {
        throw ConfigError("range must look like start:stop:steps, got '" + text + "'");
    }
}

/// A configuration document: a spectrum entry, state parameters, optional
/// truncation settings and an optional sweep.
///
///   {
///     "spectrum":   {"kind": "trapped_ion", "eta": 0.5},
///     "state":      {"class": "I", "r": 1.0, "phi": 0.0, "alpha": 0.0},
///     "truncation": {"tol": 1e-16, "max_n": 2000, "force_truncate": 40},
///     "sweep":      {"variable": "r", "range": "0.1:2:20"}
///   }
struct ConfigDocument {
    StateRequest state;
    std::optional<SweepConfig> sweep;
};

namespace detail {

inline double json_number(const nlohmann::json& obj, const char* key, double fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_number()) {
        throw ConfigError(std::string("'") + key + "' must be a number");
    }
    return obj[key].get<double>();
}

} // namespace detail

inline SpectrumSpec spectrum_spec_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ConfigError("spectrum entry needs a string 'kind'");
    }
    SpectrumSpec spec;
    spec.kind = j["kind"].get<std::string>();
    if (j.contains("nu")) spec.nu = detail::json_number(j, "nu", 0.0);
    if (j.contains("eta")) spec.eta = detail::json_number(j, "eta", 0.0);
    if (j.contains("values")) {
        if (!j["values"].is_array()) {
            throw ConfigError("'values' must be an array of numbers");
        }
        for (const auto& v : j["values"]) {
            if (!v.is_number()) {
                throw ConfigError("'values' must be an array of numbers");
            }
            spec.values.push_back(v.get<double>());
        }
    }
    return spec;
}

inline ConfigDocument config_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    ConfigDocument doc;
    if (j.contains("spectrum")) {
        doc.state.spectrum = spectrum_spec_from_json(j["spectrum"]);
    }
    if (j.contains("state")) {
        const auto& s = j["state"];
        if (!s.is_object()) throw ConfigError("'state' must be an object");
        if (s.contains("class")) {
            const auto c = s["class"].is_string() ? parse_state_class(s["class"].get<std::string>()) : std::nullopt;
            if (!c) throw ConfigError("state class must be one of I, II, III, IV");
            doc.state.state_class = *c;
        }
        doc.state.params.r = detail::json_number(s, "r", doc.state.params.r);
        doc.state.params.phi = detail::json_number(s, "phi", doc.state.params.phi);
        doc.state.params.alpha = detail::json_number(s, "alpha", doc.state.params.alpha);
    }
    if (j.contains("truncation")) {
        const auto& t = j["truncation"];
        if (!t.is_object()) throw ConfigError("'truncation' must be an object");
        doc.state.policy.tol = detail::json_number(t, "tol", doc.state.policy.tol);
        if (t.contains("max_n")) {
            const double m = detail::json_number(t, "max_n", 0.0);
            if (m < 1.0) throw ConfigError("max_n must be at least 1");
            doc.state.policy.max_terms = static_cast<std::size_t>(m);
        }
        if (t.contains("force_truncate")) {
            const double m = detail::json_number(t, "force_truncate", 0.0);
            if (m < 0.0) throw ConfigError("force_truncate must be non-negative");
            doc.state.policy.force_terms = static_cast<std::size_t>(m);
        }
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        if (!s.is_object()) throw ConfigError("'sweep' must be an object");
        SweepConfig sweep;
        if (s.contains("variable")) {
            if (!s["variable"].is_string()) throw ConfigError("sweep variable must be a string");
            sweep.variable = parse_sweep_variable(s["variable"].get<std::string>());
        }
        if (s.contains("range")) {
            if (!s["range"].is_string()) throw ConfigError("sweep range must be a string start:stop:steps");
            parse_range(s["range"].get<std::string>(), sweep);
        } else {
            sweep.start = detail::json_number(s, "start", sweep.start);
            sweep.stop = detail::json_number(s, "stop", sweep.stop);
            sweep.steps = static_cast<std::size_t>(detail::json_number(s, "steps", 2.0));
        }
        const bool duplicated =
            (sweep.variable == SweepVariable::r && j.contains("state") && j["state"].contains("r")) ||
            (sweep.variable == SweepVariable::alpha && j.contains("state") && j["state"].contains("alpha")) ||
            (sweep.variable == SweepVariable::eta && doc.state.spectrum.eta.has_value());
        if (duplicated) {
            throw ConfigError("swept variable '" + to_string(sweep.variable) + "' is also given a fixed value");
        }
        doc.sweep = sweep;
    }
    return doc;
}

inline ConfigDocument load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open configuration file '" + path + "'");
    }
    try {
        return config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("configuration file '" + path + "': " + e.what());
    }
}

} // namespace gkss
