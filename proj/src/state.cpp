#include "hvsl/state.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "hvsl/errors.hpp"
#include "hvsl/spectral.hpp"
#include "reduce.hpp"

namespace hvsl {

std::string_view to_string(Closure closure) noexcept {
    switch (closure) {
        case Closure::isothermal: return "isothermal";
        case Closure::adiabatic: return "adiabatic";
        case Closure::pressure_equation: return "pressure_equation";
    }
    return "isothermal";
}

Distribution::Distribution(std::shared_ptr<const PhaseGrid> grid)
    : grid_(std::move(grid)), data_(grid_->size(), 0.0) {}

Distribution::Distribution(std::shared_ptr<const PhaseGrid> grid, std::vector<double> values)
    : grid_(std::move(grid)), data_(std::move(values)) {
    if (data_.size() != grid_->size()) {
        throw StateError("distribution has " + std::to_string(data_.size()) + " values, grid needs " +
                         std::to_string(grid_->size()));
    }
}

std::span<double> Distribution::block(std::size_t i) noexcept {
    const std::size_t n = grid_->velocity_size();
    return std::span<double>(data_).subspan(i * n, n);
}

std::span<const double> Distribution::block(std::size_t i) const noexcept {
    const std::size_t n = grid_->velocity_size();
    return std::span<const double>(data_).subspan(i * n, n);
}

void FieldState::refresh_pressure(std::span<const double> rho) {
    if (closure == Closure::pressure_equation) return;
    const double g = closure_exponent();
    p.resize(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        p[i] = g == 1.0 ? kappa * rho[i] : kappa * std::pow(rho[i], g);
    }
}

namespace {

// Per-point sums over the velocity block: (sum f, sum v1 f, sum v2 f) times dv1 dv2.
void block_moments(const Distribution& f, std::size_t i, double& rho, double& j1, double& j2) {
    const PhaseGrid& g = f.grid();
    const std::size_t n1 = g.n1();
    const std::size_t n2 = g.n2();
    const double* blk = f.block(i).data();
    std::vector<double> row_sum(n1);
    std::vector<double> row_v2(n1);
    for (std::size_t a = 0; a < n1; ++a) {
        const double* row = blk + a * n2;
        row_sum[a] = detail::pairwise_sum(row, n2);
        row_v2[a] = detail::pairwise_sum_of([&](std::size_t b) { return g.v2.nodes[b] * row[b]; }, 0, n2);
    }
    const double cell = g.dv1() * g.dv2();
    rho = detail::pairwise_sum(row_sum.data(), n1) * cell;
    j1 = detail::pairwise_sum_of([&](std::size_t a) { return g.v1.nodes[a] * row_sum[a]; }, 0, n1) * cell;
    j2 = detail::pairwise_sum(row_v2.data(), n1) * cell;
}

}  // namespace

std::vector<double> density(const Distribution& f) {
    std::vector<double> rho(f.grid().m1());
    double j1 = 0.0;
    double j2 = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) block_moments(f, i, rho[i], j1, j2);
    return rho;
}

Moments compute_moments(const Distribution& f) {
    const std::size_t m1 = f.grid().m1();
    Moments m;
    m.rho.resize(m1);
    m.jf1.resize(m1);
    m.jf2.resize(m1);
    m.u1.resize(m1);
    m.u2.resize(m1);
    for (std::size_t i = 0; i < m1; ++i) {
        block_moments(f, i, m.rho[i], m.jf1[i], m.jf2[i]);
        if (!(m.rho[i] > 0.0) || !std::isfinite(m.rho[i])) {
            std::ostringstream msg;
            msg << "non-positive ion density rho[" << i << "] = " << m.rho[i]
                << " (quasi-neutrality requires rho > 0)";
            throw StateError(msg.str());
        }
        m.u1[i] = m.jf1[i] / m.rho[i];
        m.u2[i] = m.jf2[i] / m.rho[i];
    }
    return m;
}

Moments compute_moments(const Distribution& f, const FieldState& fields) {
    Moments m = compute_moments(f);
    const std::vector<double> j2 = curl_term(fields, f.grid());
    m.ue2.resize(m.rho.size());
    for (std::size_t i = 0; i < m.rho.size(); ++i) m.ue2[i] = m.u2[i] - j2[i] / m.rho[i];
    return m;
}

std::vector<double> curl_term(const FieldState& fields, const PhaseGrid& grid) {
    std::vector<double> d = spectral_derivative(fields.b3, grid.lx());
    for (double& v : d) v = -v;
    return d;
}

// ---------------------------------------------------------------------------
// Snapshot envelope

namespace {

void append_le(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char buf[8];
    for (int k = 0; k < 8; ++k) buf[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
    out.append(buf, 8);
}

double read_le(const char* p) {
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[k])) << (8 * k);
    return std::bit_cast<double>(bits);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

std::string encode_snapshot(const Snapshot& s) {
    if (s.values.size() != s.m1 * s.n1 * s.n2) {
        throw IoError("snapshot '" + s.name + "': value count does not match its shape");
    }
    if (s.name.empty() || s.name.find_first_of(" \t\n") != std::string::npos) {
        throw IoError("snapshot name must be a non-empty token");
    }
    char header[256];
    std::snprintf(header, sizeof header, "HVSL1 %zu %zu %zu %s %.17g\n", s.m1, s.n1, s.n2, s.name.c_str(),
                  s.time);
    std::string out(header);
    out.reserve(out.size() + 8 * s.values.size());
    for (double v : s.values) append_le(out, v);
    return out;
}

Snapshot decode_snapshot(std::string_view bytes, std::size_t& offset) {
    const std::size_t eol = bytes.find('\n', offset);
    if (eol == std::string_view::npos) throw IoError("snapshot header is not terminated");
    std::istringstream header{std::string(bytes.substr(offset, eol - offset))};
    std::string magic;
    Snapshot s;
    std::string time_text;
    if (!(header >> magic >> s.m1 >> s.n1 >> s.n2 >> s.name >> time_text) || magic != "HVSL1") {
        throw IoError("malformed snapshot header");
    }
    try {
        s.time = std::stod(time_text);
    } catch (const std::exception&) {
        throw IoError("malformed snapshot time '" + time_text + "'");
    }
    const std::size_t count = s.m1 * s.n1 * s.n2;
    const std::size_t begin = eol + 1;
    if (bytes.size() - begin < 8 * count) throw IoError("snapshot payload is truncated");
    s.values.resize(count);
    for (std::size_t k = 0; k < count; ++k) s.values[k] = read_le(bytes.data() + begin + 8 * k);
    offset = begin + 8 * count;
    return s;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot) {
    const std::string bytes = encode_snapshot(snapshot);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    const std::string bytes = slurp(path);
    std::size_t offset = 0;
    return decode_snapshot(bytes, offset);
}

std::vector<Snapshot> read_snapshots(const std::filesystem::path& path) {
    const std::string bytes = slurp(path);
    std::vector<Snapshot> out;
    std::size_t offset = 0;
    while (offset < bytes.size()) out.push_back(decode_snapshot(bytes, offset));
    return out;
}

Snapshot distribution_snapshot(const Distribution& f, double time) {
    const PhaseGrid& g = f.grid();
    return Snapshot{g.m1(), g.n1(), g.n2(), "f", time, std::vector<double>(f.values().begin(), f.values().end())};
}

}  // namespace hvsl
