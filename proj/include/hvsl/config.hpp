#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hvsl/advection.hpp"
#include "hvsl/grid.hpp"
#include "hvsl/state.hpp"

namespace hvsl {

enum class SchemeKind { lie, strang };

std::string_view to_string(SchemeKind kind) noexcept;

struct PhysicsConfig {
    Closure closure = Closure::isothermal;
    double gamma = 1.0;
    double kappa = 1.0;

    bool operator==(const PhysicsConfig&) const = default;
};

struct NumericsConfig {
    double dt = 0.1;
    double t_final = 0.0;
    SchemeKind scheme = SchemeKind::strang;
    AdvectionBackend velocity_backend = AdvectionBackend::spline;
    AdvectionBackend space_backend = AdvectionBackend::spectral;
    double picard_tol = 1e-14;
    std::size_t picard_max = 200;

    bool operator==(const NumericsConfig&) const = default;
};

/// f = (1 + A sin(k x)) / (pi vt^2) exp(-|v - drift|^2 / vt^2),
/// B3 = b3_mean + b3_amplitude * sum_{m=1..count} sin(m k_b x),
/// p = p0 (1 + A sin(k x))^gamma (pressure-equation closure only).
struct InitialConfig {
    double density_amplitude = 0.0;
    double density_wavenumber = 1.0;
    double drift1 = 0.0;
    double drift2 = 0.0;
    double vt = 1.0;
    double b3_mean = 0.0;
    double b3_amplitude = 0.0;
    double b3_base_wavenumber = 1.0;
    std::size_t b3_mode_count = 1;
    double p0 = 1.0;

    bool operator==(const InitialConfig&) const = default;
};

struct OutputConfig {
    std::string directory = "out";
    double cadence = 0.0;            // 0: every step
    double snapshot_cadence = 0.0;   // 0: no distribution snapshots
    bool field_history = false;      // B3(x) at every output time

    bool operator==(const OutputConfig&) const = default;
};

/// Optional limits checked after a run; a violation makes the CLI exit with status 4.
struct ChecksConfig {
    std::optional<double> max_mass_drift;
    std::optional<double> max_momentum_drift;
    std::optional<double> max_energy_drift;
    std::optional<double> max_p_relation_err;

    bool operator==(const ChecksConfig&) const = default;
};

struct RunConfig {
    std::string preset;
    GridConfig grid;
    PhysicsConfig physics;
    NumericsConfig numerics;
    InitialConfig initial;
    OutputConfig output;
    ChecksConfig checks;

    bool operator==(const RunConfig&) const = default;
};

/// Names accepted by `preset = <name>`.
std::vector<std::string> preset_names();

/// Full configuration of a named experiment; throws ConfigError for unknown names.
RunConfig preset_config(std::string_view name);

/// Parse flat `section.key = value` text ('#' starts a comment). A `preset` line
/// supplies defaults that explicit keys override. Throws ConfigError naming the key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Every key written explicitly, floats with 17 significant digits.
std::string serialize_config(const RunConfig& config);

/// Model and numerics invariants (positive extents, gamma != 1 with the pressure equation, ...).
void validate_config(const RunConfig& config);

}  // namespace hvsl
