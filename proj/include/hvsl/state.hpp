#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hvsl/grid.hpp"

namespace hvsl {

enum class Closure { isothermal, adiabatic, pressure_equation };

std::string_view to_string(Closure closure) noexcept;

/// Ion distribution values f[i][j1][j2] on a shared, immutable phase grid.
class Distribution {
public:
    explicit Distribution(std::shared_ptr<const PhaseGrid> grid);
    Distribution(std::shared_ptr<const PhaseGrid> grid, std::vector<double> values);

    const PhaseGrid& grid() const noexcept { return *grid_; }
    const std::shared_ptr<const PhaseGrid>& grid_ptr() const noexcept { return grid_; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    /// The N1 x N2 velocity block at spatial index i.
    std::span<double> block(std::size_t i) noexcept;
    std::span<const double> block(std::size_t i) const noexcept;

    double& operator()(std::size_t i, std::size_t j1, std::size_t j2) noexcept {
        return data_[grid_->index(i, j1, j2)];
    }
    double operator()(std::size_t i, std::size_t j1, std::size_t j2) const noexcept {
        return data_[grid_->index(i, j1, j2)];
    }

private:
    std::shared_ptr<const PhaseGrid> grid_;
    std::vector<double> data_;
};

/// Magnetic field B3 and electron pressure on the x-grid with the electron model.
///
/// For the isothermal and adiabatic closures `p` is a cache of kappa * rho^gamma
/// (gamma = 1 for isothermal) and must be refreshed with `refresh_pressure`.
struct FieldState {
    std::vector<double> b3;
    std::vector<double> p;
    double gamma = 1.0;
    double kappa = 1.0;
    Closure closure = Closure::isothermal;

    /// Exponent of the closure relation p = kappa rho^g (1 for isothermal).
    double closure_exponent() const noexcept { return closure == Closure::isothermal ? 1.0 : gamma; }

    /// Recompute p from rho for the algebraic closures; no-op for the pressure equation.
    void refresh_pressure(std::span<const double> rho);
};

struct Moments {
    std::vector<double> rho;
    std::vector<double> jf1;
    std::vector<double> jf2;
    std::vector<double> u1;
    std::vector<double> u2;
    std::vector<double> ue2;  // electron drift u2 + d(B3)/dx / rho; empty without fields
};

/// Velocity moments of f; throws StateError if any rho_i <= 0 or is not finite.
Moments compute_moments(const Distribution& f);
/// As above, also filling the electron drift ue2 from the field state.
Moments compute_moments(const Distribution& f, const FieldState& fields);

/// Density only (same quadrature as compute_moments, no positivity check).
std::vector<double> density(const Distribution& f);

/// J2 = -dB3/dx evaluated spectrally at the x nodes.
std::vector<double> curl_term(const FieldState& fields, const PhaseGrid& grid);

/// Binary array with an ASCII header `HVSL1 <M1> <N1> <N2> <name> <time>\n`.
struct Snapshot {
    std::size_t m1 = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::string name;
    double time = 0.0;
    std::vector<double> values;

    bool operator==(const Snapshot&) const = default;
};

/// Header plus little-endian float64 payload of m1*n1*n2 values.
std::string encode_snapshot(const Snapshot& snapshot);
/// Parse one envelope starting at `offset`; advances offset past it. Throws IoError.
Snapshot decode_snapshot(std::string_view bytes, std::size_t& offset);

void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_snapshot(const std::filesystem::path& path);
/// All envelopes of a concatenated stream (e.g. a field history file).
std::vector<Snapshot> read_snapshots(const std::filesystem::path& path);

Snapshot distribution_snapshot(const Distribution& f, double time);

}  // namespace hvsl
