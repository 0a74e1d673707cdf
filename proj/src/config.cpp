#include "hvsl/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "hvsl/errors.hpp"

namespace hvsl {

std::string_view to_string(SchemeKind kind) noexcept {
    return kind == SchemeKind::lie ? "lie" : "strang";
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = first + value.size();
    if (!value.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a finite number, got '" + value + "'");
    }
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

Closure parse_closure(const std::string& key, const std::string& value) {
    if (value == "isothermal") return Closure::isothermal;
    if (value == "adiabatic") return Closure::adiabatic;
    if (value == "pressure_equation") return Closure::pressure_equation;
    throw ConfigError(key + ": expected isothermal, adiabatic or pressure_equation, got '" + value + "'");
}

SchemeKind parse_scheme(const std::string& key, const std::string& value) {
    if (value == "lie") return SchemeKind::lie;
    if (value == "strang") return SchemeKind::strang;
    throw ConfigError(key + ": expected lie or strang, got '" + value + "'");
}

AdvectionBackend parse_backend(const std::string& key, const std::string& value) {
    if (value == "spline") return AdvectionBackend::spline;
    if (value == "spectral") return AdvectionBackend::spectral;
    throw ConfigError(key + ": expected spline or spectral, got '" + value + "'");
}

struct KeySpec {
    std::string key;
    bool required;  // when no preset supplies defaults
    std::function<void(RunConfig&, const std::string& key, const std::string& value)> set;
    std::function<std::optional<std::string>(const RunConfig&)> get;
};

template <class T>
KeySpec number_key(std::string key, bool required, T RunConfig::*block, double T::*field) {
    return {std::move(key), required,
            [block, field](RunConfig& c, const std::string& k, const std::string& v) {
                c.*block.*field = parse_double(k, v);
            },
            [block, field](const RunConfig& c) -> std::optional<std::string> {
                return format_double(c.*block.*field);
            }};
}

template <class T>
KeySpec count_key(std::string key, bool required, T RunConfig::*block, std::size_t T::*field) {
    return {std::move(key), required,
            [block, field](RunConfig& c, const std::string& k, const std::string& v) {
                c.*block.*field = parse_count(k, v);
            },
            [block, field](const RunConfig& c) -> std::optional<std::string> {
                return std::to_string(c.*block.*field);
            }};
}

KeySpec check_key(std::string key, std::optional<double> ChecksConfig::*field) {
    return {std::move(key), false,
            [field](RunConfig& c, const std::string& k, const std::string& v) {
                c.checks.*field = parse_double(k, v);
            },
            [field](const RunConfig& c) -> std::optional<std::string> {
                const auto& v = c.checks.*field;
                if (!v) return std::nullopt;
                return format_double(*v);
            }};
}

const std::vector<KeySpec>& key_table() {
    using R = RunConfig;
    static const std::vector<KeySpec> table = [] {
        std::vector<KeySpec> t;
        t.push_back(count_key("grid.m1", true, &R::grid, &GridConfig::m1));
        t.push_back(count_key("grid.n1", true, &R::grid, &GridConfig::n1));
        t.push_back(count_key("grid.n2", true, &R::grid, &GridConfig::n2));
        t.push_back(number_key("grid.lx", true, &R::grid, &GridConfig::lx));
        t.push_back(number_key("grid.v1_min", true, &R::grid, &GridConfig::v1_min));
        t.push_back(number_key("grid.v1_max", true, &R::grid, &GridConfig::v1_max));
        t.push_back(number_key("grid.v2_min", true, &R::grid, &GridConfig::v2_min));
        t.push_back(number_key("grid.v2_max", true, &R::grid, &GridConfig::v2_max));
        t.push_back({"physics.closure", true,
                     [](R& c, const std::string& k, const std::string& v) { c.physics.closure = parse_closure(k, v); },
                     [](const R& c) -> std::optional<std::string> { return std::string(to_string(c.physics.closure)); }});
        t.push_back(number_key("physics.gamma", false, &R::physics, &PhysicsConfig::gamma));
        t.push_back(number_key("physics.kappa", true, &R::physics, &PhysicsConfig::kappa));
        t.push_back(number_key("numerics.dt", true, &R::numerics, &NumericsConfig::dt));
        t.push_back(number_key("numerics.t_final", true, &R::numerics, &NumericsConfig::t_final));
        t.push_back({"numerics.scheme", false,
                     [](R& c, const std::string& k, const std::string& v) { c.numerics.scheme = parse_scheme(k, v); },
                     [](const R& c) -> std::optional<std::string> { return std::string(to_string(c.numerics.scheme)); }});
        t.push_back({"numerics.velocity_backend", false,
                     [](R& c, const std::string& k, const std::string& v) {
                         c.numerics.velocity_backend = parse_backend(k, v);
                     },
                     [](const R& c) -> std::optional<std::string> {
                         return std::string(to_string(c.numerics.velocity_backend));
                     }});
        t.push_back({"numerics.space_backend", false,
                     [](R& c, const std::string& k, const std::string& v) {
                         c.numerics.space_backend = parse_backend(k, v);
                     },
                     [](const R& c) -> std::optional<std::string> {
                         return std::string(to_string(c.numerics.space_backend));
                     }});
        t.push_back(number_key("numerics.picard_tol", false, &R::numerics, &NumericsConfig::picard_tol));
        t.push_back(count_key("numerics.picard_max", false, &R::numerics, &NumericsConfig::picard_max));
        t.push_back(number_key("initial.density_amplitude", false, &R::initial, &InitialConfig::density_amplitude));
        t.push_back(number_key("initial.density_wavenumber", false, &R::initial, &InitialConfig::density_wavenumber));
        t.push_back(number_key("initial.drift1", false, &R::initial, &InitialConfig::drift1));
        t.push_back(number_key("initial.drift2", false, &R::initial, &InitialConfig::drift2));
        t.push_back(number_key("initial.vt", true, &R::initial, &InitialConfig::vt));
        t.push_back(number_key("initial.b3_mean", false, &R::initial, &InitialConfig::b3_mean));
        t.push_back(number_key("initial.b3_amplitude", false, &R::initial, &InitialConfig::b3_amplitude));
        t.push_back(number_key("initial.b3_base_wavenumber", false, &R::initial, &InitialConfig::b3_base_wavenumber));
        t.push_back(count_key("initial.b3_mode_count", false, &R::initial, &InitialConfig::b3_mode_count));
        t.push_back(number_key("initial.p0", false, &R::initial, &InitialConfig::p0));
        t.push_back({"output.directory", false,
                     [](R& c, const std::string&, const std::string& v) { c.output.directory = v; },
                     [](const R& c) -> std::optional<std::string> { return c.output.directory; }});
        t.push_back(number_key("output.cadence", false, &R::output, &OutputConfig::cadence));
        t.push_back(number_key("output.snapshot_cadence", false, &R::output, &OutputConfig::snapshot_cadence));
        t.push_back({"output.field_history", false,
                     [](R& c, const std::string& k, const std::string& v) { c.output.field_history = parse_bool(k, v); },
                     [](const R& c) -> std::optional<std::string> {
                         return std::string(c.output.field_history ? "true" : "false");
                     }});
        t.push_back(check_key("checks.max_mass_drift", &ChecksConfig::max_mass_drift));
        t.push_back(check_key("checks.max_momentum_drift", &ChecksConfig::max_momentum_drift));
        t.push_back(check_key("checks.max_energy_drift", &ChecksConfig::max_energy_drift));
        t.push_back(check_key("checks.max_p_relation_err", &ChecksConfig::max_p_relation_err));
        return t;
    }();
    return table;
}

RunConfig landau_base() {
    RunConfig c;
    c.grid = {32, 128, 64, 5.0 * std::numbers::pi, -8.0, 8.0, -8.0, 8.0};
    c.physics = {Closure::isothermal, 1.0, 6.25};
    c.numerics.dt = 0.1;
    c.numerics.t_final = 50.0;
    c.initial.density_amplitude = 0.01;
    c.initial.density_wavenumber = 0.4;
    c.initial.vt = 1.4142;
    c.initial.b3_mean = 0.0;
    c.initial.b3_amplitude = 0.0;
    c.initial.p0 = 6.25;
    c.output.cadence = 0.1;
    return c;
}

RunConfig bernstein_base() {
    RunConfig c;
    c.grid = {64, 128, 128, 4.0 * std::numbers::pi, -3.0, 3.0, -3.0, 3.0};
    c.physics = {Closure::isothermal, 1.0, 0.09};
    c.numerics.dt = 0.05;
    c.numerics.t_final = 80.0;
    c.initial.vt = 0.4;
    c.initial.b3_mean = 1.0;
    c.initial.b3_amplitude = 1e-5;
    c.initial.b3_base_wavenumber = 0.5;
    c.initial.b3_mode_count = 32;
    c.initial.p0 = 0.09;
    c.output.cadence = 0.1;
    c.output.field_history = true;
    return c;
}

RunConfig convergence_base() {
    RunConfig c;
    c.grid = {16, 128, 128, std::numbers::pi, -2.5, 2.5, -2.5, 2.5};
    c.physics = {Closure::pressure_equation, 5.0 / 3.0, 0.09};
    c.numerics.dt = 0.025;
    c.numerics.t_final = 0.1;
    c.initial.density_amplitude = 0.01;
    c.initial.density_wavenumber = 2.0;
    c.initial.drift1 = 0.1;
    c.initial.drift2 = 0.2;
    c.initial.vt = 0.4;
    c.initial.b3_mean = 1.0;
    c.initial.b3_amplitude = 0.01;
    c.initial.b3_base_wavenumber = 2.0;
    c.initial.b3_mode_count = 1;
    c.initial.p0 = 0.09;
    c.output.cadence = 0.0;
    return c;
}

using PresetFactory = RunConfig (*)();

const std::map<std::string, PresetFactory, std::less<>>& presets() {
    static const std::map<std::string, PresetFactory, std::less<>> table = {
        {"landau", [] { return landau_base(); }},
        {"landau_pressure",
         [] {
             RunConfig c = landau_base();
             c.physics = {Closure::pressure_equation, 5.0 / 3.0, 6.25};
             c.initial.p0 = 6.25 / (5.0 / 3.0);
             return c;
         }},
        {"bernstein", [] { return bernstein_base(); }},
        {"bernstein_pressure",
         [] {
             RunConfig c = bernstein_base();
             c.physics = {Closure::pressure_equation, 5.0 / 3.0, 0.09};
             c.initial.p0 = 0.09;
             return c;
         }},
        {"convergence", [] { return convergence_base(); }},
        {"reversibility",
         [] {
             RunConfig c = convergence_base();
             c.grid.m1 = 17;
             c.grid.n1 = 64;
             c.grid.n2 = 64;
             c.numerics.dt = 0.1;
             c.numerics.t_final = 2.0;
             c.numerics.velocity_backend = AdvectionBackend::spectral;
             c.numerics.space_backend = AdvectionBackend::spectral;
             return c;
         }},
    };
    return table;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, factory] : presets()) out.push_back(name);
    return out;
}

RunConfig preset_config(std::string_view name) {
    const auto it = presets().find(name);
    if (it == presets().end()) {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("preset: unknown preset '" + std::string(name) + "' (known: " + known + ")");
    }
    RunConfig c = it->second();
    c.preset = std::string(name);
    c.output.directory = "out/" + c.preset;
    return c;
}

void validate_config(const RunConfig& c) {
    auto fail = [](const std::string& key, const std::string& why) { throw ConfigError(key + ": " + why); };
    if (c.grid.m1 < kMinNodes) fail("grid.m1", "must be at least 4");
    if (c.grid.n1 < kMinNodes) fail("grid.n1", "must be at least 4");
    if (c.grid.n2 < kMinNodes) fail("grid.n2", "must be at least 4");
    if (!(c.grid.lx > 0.0)) fail("grid.lx", "must be positive");
    if (!(c.grid.v1_max > c.grid.v1_min)) fail("grid.v1_max", "must exceed grid.v1_min");
    if (!(c.grid.v2_max > c.grid.v2_min)) fail("grid.v2_max", "must exceed grid.v2_min");
    if (!(c.physics.kappa > 0.0)) fail("physics.kappa", "must be positive");
    if (c.physics.closure != Closure::isothermal) {
        if (!(c.physics.gamma > 0.0)) fail("physics.gamma", "must be positive");
        if (c.physics.gamma == 1.0) {
            fail("physics.gamma", "must differ from 1 for the " + std::string(to_string(c.physics.closure)) +
                                      " closure (use closure = isothermal for gamma = 1)");
        }
    }
    if (c.physics.closure == Closure::pressure_equation && !(c.initial.p0 > 0.0)) {
        fail("initial.p0", "must be positive for the pressure equation");
    }
    if (!(c.numerics.dt > 0.0)) fail("numerics.dt", "must be positive");
    if (!(c.numerics.t_final >= 0.0)) fail("numerics.t_final", "must be non-negative");
    if (!(c.numerics.picard_tol > 0.0)) fail("numerics.picard_tol", "must be positive");
    if (c.numerics.picard_max < 1) fail("numerics.picard_max", "must be at least 1");
    if (!(c.initial.vt > 0.0)) fail("initial.vt", "must be positive");
    if (!(c.initial.density_amplitude > -1.0 && c.initial.density_amplitude < 1.0)) {
        fail("initial.density_amplitude", "must lie in (-1, 1) to keep the density positive");
    }
    if (!(c.output.cadence >= 0.0)) fail("output.cadence", "must be non-negative");
    if (!(c.output.snapshot_cadence >= 0.0)) fail("output.snapshot_cadence", "must be non-negative");
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, std::string> values;
    std::map<std::string, std::size_t> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'section.key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": missing key");
        if (values.count(key)) {
            throw ConfigError(key + ": given twice (lines " + std::to_string(lines[key]) + " and " +
                              std::to_string(lineno) + ")");
        }
        values[key] = value;
        lines[key] = lineno;
    }

    RunConfig config;
    const bool has_preset = values.count("preset") > 0;
    if (has_preset) {
        config = preset_config(values["preset"]);
        values.erase("preset");
    }

    std::set<std::string> known;
    for (const KeySpec& spec : key_table()) {
        known.insert(spec.key);
        const auto it = values.find(spec.key);
        if (it == values.end()) {
            if (spec.required && !has_preset) throw ConfigError(spec.key + ": required key is missing");
            continue;
        }
        spec.set(config, spec.key, it->second);
    }
    for (const auto& [key, value] : values) {
        if (!known.count(key)) {
            throw ConfigError(key + ": unknown key (line " + std::to_string(lines[key]) + ")");
        }
    }
    if (!has_preset && config.physics.closure != Closure::isothermal && !values.count("physics.gamma")) {
        throw ConfigError("physics.gamma: required for the " + std::string(to_string(config.physics.closure)) +
                          " closure");
    }
    validate_config(config);
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    if (!config.preset.empty()) out << "preset = " << config.preset << "\n";
    std::string section;
    for (const KeySpec& spec : key_table()) {
        const auto value = spec.get(config);
        if (!value) continue;
        const std::string sec = spec.key.substr(0, spec.key.find('.'));
        if (sec != section) {
            out << "\n";
            section = sec;
        }
        out << spec.key << " = " << *value << "\n";
    }
    return out.str();
}

}  // namespace hvsl
