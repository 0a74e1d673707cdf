#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hvsl/config.hpp"
#include "hvsl/diagnostics.hpp"
#include "hvsl/integrator.hpp"

namespace hvsl {

inline constexpr const char* kTimeseriesHeader =
    "t,mass,p1,p2,e_kin,e_mag,e_prs,e_tot,rho_dev,p_rel_err,picard_iters";

std::string format_timeseries(std::span<const ConservedSnapshot> series);
std::vector<ConservedSnapshot> parse_timeseries(const std::string& text);
void write_timeseries(const std::filesystem::path& path, std::span<const ConservedSnapshot> series);
std::vector<ConservedSnapshot> read_timeseries(const std::filesystem::path& path);

using Summary = std::map<std::string, std::string>;

void write_summary(const std::filesystem::path& path, const Summary& summary);
Summary read_summary(const std::filesystem::path& path);

/// Envelope `HVSL1 <nk> <nw> 1 spectrum 0`, then the k axis, the omega axis and the power [k][omega].
void write_spectrum(const std::filesystem::path& path, const Spectrum& spectrum);
Spectrum read_spectrum(const std::filesystem::path& path);

/// Concatenated envelopes `HVSL1 <M1> 1 1 B3 <t>`, one per sample.
void write_field_history(const std::filesystem::path& path, std::span<const double> times,
                         std::span<const double> history, std::size_t m1);

/// Output root: $HVSL_OUTPUT_ROOT if set, otherwise the working directory.
std::filesystem::path output_root();
/// config.output.directory resolved against output_root() unless absolute.
std::filesystem::path resolve_output_directory(const RunConfig& config);

/// config.cfg, timeseries.csv, summary.txt and (if recorded) b3_history.bin.
void write_run_outputs(const std::filesystem::path& dir, const RunConfig& config, const RunArtifacts& artifacts,
                       const Summary& extra = {});

std::string format_double(double value);

}  // namespace hvsl
