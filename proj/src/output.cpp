#include "hvsl/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hvsl/errors.hpp"

namespace hvsl {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

double parse_field(const std::string& cell, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw IoError("timeseries line " + std::to_string(line) + ": bad number '" + cell + "'");
    }
    return v;
}

}  // namespace

std::string format_timeseries(std::span<const ConservedSnapshot> series) {
    std::string out = std::string(kTimeseriesHeader) + "\n";
    char buf[512];
    for (const ConservedSnapshot& s : series) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n", s.time,
                      s.mass, s.momentum1, s.momentum2, s.energy_kinetic, s.energy_magnetic, s.energy_pressure,
                      s.energy_total, s.rho_dev, s.p_relation_err, s.picard_iters);
        out += buf;
    }
    return out;
}

std::vector<ConservedSnapshot> parse_timeseries(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTimeseriesHeader) throw IoError("timeseries: unexpected header");
    std::vector<ConservedSnapshot> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 11) throw IoError("timeseries line " + std::to_string(lineno) + ": expected 11 columns");
        ConservedSnapshot s;
        s.time = parse_field(cells[0], lineno);
        s.mass = parse_field(cells[1], lineno);
        s.momentum1 = parse_field(cells[2], lineno);
        s.momentum2 = parse_field(cells[3], lineno);
        s.energy_kinetic = parse_field(cells[4], lineno);
        s.energy_magnetic = parse_field(cells[5], lineno);
        s.energy_pressure = parse_field(cells[6], lineno);
        s.energy_total = parse_field(cells[7], lineno);
        s.rho_dev = parse_field(cells[8], lineno);
        s.p_relation_err = parse_field(cells[9], lineno);
        s.picard_iters = static_cast<std::size_t>(parse_field(cells[10], lineno));
        out.push_back(s);
    }
    return out;
}

void write_timeseries(const fs::path& path, std::span<const ConservedSnapshot> series) {
    write_text(path, format_timeseries(series));
}

std::vector<ConservedSnapshot> read_timeseries(const fs::path& path) { return parse_timeseries(read_text(path)); }

void write_summary(const fs::path& path, const Summary& summary) {
    std::string text;
    for (const auto& [k, v] : summary) text += k + "=" + v + "\n";
    write_text(path, text);
}

Summary read_summary(const fs::path& path) {
    std::istringstream in(read_text(path));
    Summary out;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

void write_spectrum(const fs::path& path, const Spectrum& spectrum) {
    Snapshot s;
    s.m1 = spectrum.nk();
    s.n1 = spectrum.nw();
    s.n2 = 1;
    s.name = "spectrum";
    s.values = spectrum.power;
    std::string bytes = encode_snapshot(s);
    // Axes are inserted between header and power payload.
    const auto eol = bytes.find('\n') + 1;
    Snapshot axes{spectrum.nk() + spectrum.nw(), 1, 1, "axes", 0.0, {}};
    axes.values = spectrum.k;
    axes.values.insert(axes.values.end(), spectrum.omega.begin(), spectrum.omega.end());
    const std::string axis_bytes = encode_snapshot(axes);
    const std::string axis_payload = axis_bytes.substr(axis_bytes.find('\n') + 1);
    bytes.insert(eol, axis_payload);
    write_text(path, bytes);
}

Spectrum read_spectrum(const fs::path& path) {
    const std::string bytes = read_text(path);
    const auto eol = bytes.find('\n');
    if (eol == std::string::npos) throw IoError(path.string() + ": missing header");
    std::istringstream header(bytes.substr(0, eol));
    std::string magic, name;
    std::size_t nk = 0, nw = 0, one = 0;
    if (!(header >> magic >> nk >> nw >> one >> name) || magic != "HVSL1" || name != "spectrum") {
        throw IoError(path.string() + ": not a spectrum file");
    }
    const std::size_t count = nk + nw + nk * nw;
    if (bytes.size() < eol + 1 + 8 * count) throw IoError(path.string() + ": truncated spectrum");
    // Re-wrap the payload as a flat envelope to reuse the decoder.
    Snapshot flat{count, 1, 1, "payload", 0.0, std::vector<double>(count, 0.0)};
    std::string wrapped = encode_snapshot(flat);
    wrapped = wrapped.substr(0, wrapped.find('\n') + 1) + bytes.substr(eol + 1, 8 * count);
    std::size_t offset = 0;
    const Snapshot payload = decode_snapshot(wrapped, offset);
    Spectrum s;
    s.k.assign(payload.values.begin(), payload.values.begin() + static_cast<std::ptrdiff_t>(nk));
    s.omega.assign(payload.values.begin() + static_cast<std::ptrdiff_t>(nk),
                   payload.values.begin() + static_cast<std::ptrdiff_t>(nk + nw));
    s.power.assign(payload.values.begin() + static_cast<std::ptrdiff_t>(nk + nw), payload.values.end());
    return s;
}

void write_field_history(const fs::path& path, std::span<const double> times, std::span<const double> history,
                         std::size_t m1) {
    if (history.size() != times.size() * m1) throw IoError("field history size does not match its times");
    std::string bytes;
    for (std::size_t n = 0; n < times.size(); ++n) {
        Snapshot s{m1, 1, 1, "B3", times[n],
                   std::vector<double>(history.begin() + static_cast<std::ptrdiff_t>(n * m1),
                                       history.begin() + static_cast<std::ptrdiff_t>((n + 1) * m1))};
        bytes += encode_snapshot(s);
    }
    write_text(path, bytes);
}

fs::path output_root() {
    if (const char* env = std::getenv("HVSL_OUTPUT_ROOT"); env != nullptr && *env != '\0') return fs::path(env);
    return fs::current_path();
}

fs::path resolve_output_directory(const RunConfig& config) {
    const fs::path dir(config.output.directory);
    return dir.is_absolute() ? dir : output_root() / dir;
}

void write_run_outputs(const fs::path& dir, const RunConfig& config, const RunArtifacts& artifacts,
                       const Summary& extra) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "config.cfg", serialize_config(config));
    write_timeseries(dir / "timeseries.csv", artifacts.series);
    if (!artifacts.history_times.empty()) {
        write_field_history(dir / "b3_history.bin", artifacts.history_times, artifacts.b3_history, config.grid.m1);
    }
    Summary s = extra;
    s["status"] = artifacts.status == RunStatus::ok ? "ok" : "numerical_failure";
    s["steps_taken"] = std::to_string(artifacts.steps_taken);
    s["rows"] = std::to_string(artifacts.series.size());
    s["max_mass_drift_rel"] = format_double(artifacts.drifts.mass_rel);
    s["max_momentum_drift_abs"] = format_double(artifacts.drifts.momentum_abs);
    s["max_energy_drift_rel"] = format_double(artifacts.drifts.energy_rel);
    s["max_p_relation_err"] = format_double(artifacts.drifts.p_relation_max);
    s["max_picard_iters"] = std::to_string(artifacts.drifts.picard_max);
    s["max_velocity_boundary_ratio"] = format_double(artifacts.max_boundary_ratio);
    if (artifacts.failed_step) s["failed_step"] = std::to_string(*artifacts.failed_step);
    if (!artifacts.failure.empty()) s["failure"] = artifacts.failure;
    s["warnings"] = std::to_string(artifacts.warnings.size());
    for (std::size_t k = 0; k < artifacts.warnings.size(); ++k) s["warning_" + std::to_string(k)] = artifacts.warnings[k];
    write_summary(dir / "summary.txt", s);
}

}  // namespace hvsl
