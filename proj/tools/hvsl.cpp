// Command-line driver: run a configuration, or one of the convergence,
// reversibility and dispersion harnesses.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hvsl/config.hpp"
#include "hvsl/errors.hpp"
#include "hvsl/experiments.hpp"
#include "hvsl/integrator.hpp"
#include "hvsl/output.hpp"

namespace fs = std::filesystem;
using namespace hvsl;

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalFailure = 3, kAcceptanceViolation = 4 };

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

int cmd_run(const std::string& config_path) {
    const RunConfig config = load_config(config_path);
    const fs::path dir = resolve_output_directory(config);
    fs::create_directories(dir / "snapshots");

    RunObserver observer;
    observer.on_snapshot = [&](const SimState& s) {
        char name[64];
        std::snprintf(name, sizeof name, "t%012.6f", s.time);
        write_snapshot(dir / "snapshots" / (std::string("f_") + name + ".bin"), distribution_snapshot(s.f, s.time));
        const std::size_t m1 = s.f.grid().m1();
        write_snapshot(dir / "snapshots" / (std::string("B3_") + name + ".bin"), {m1, 1, 1, "B3", s.time, s.fields.b3});
        write_snapshot(dir / "snapshots" / (std::string("p_") + name + ".bin"), {m1, 1, 1, "p", s.time, s.fields.p});
    };
    const RunArtifacts artifacts = run(config, observer);

    Summary extra;
    int code = artifacts.status == RunStatus::ok ? kOk : kNumericalFailure;
    auto check = [&](const char* key, const std::optional<double>& limit, double value) {
        if (!limit) return;
        const bool pass = value <= *limit;
        extra[std::string("check_") + key] = pass ? "pass" : "fail";
        std::cout << (pass ? "PASS " : "FAIL ") << key << " = " << sci(value) << " (limit " << sci(*limit) << ")\n";
        if (!pass && code == kOk) code = kAcceptanceViolation;
    };
    check("max_mass_drift", config.checks.max_mass_drift, artifacts.drifts.mass_rel);
    check("max_momentum_drift", config.checks.max_momentum_drift, artifacts.drifts.momentum_abs);
    check("max_energy_drift", config.checks.max_energy_drift, artifacts.drifts.energy_rel);
    check("max_p_relation_err", config.checks.max_p_relation_err, artifacts.drifts.p_relation_max);
    extra["exit_code"] = std::to_string(code);
    write_run_outputs(dir, config, artifacts, extra);

    for (const std::string& w : artifacts.warnings) std::cerr << "warning: " << w << "\n";
    if (artifacts.status != RunStatus::ok) {
        std::cerr << "step " << *artifacts.failed_step << " failed: " << artifacts.failure << "\n";
    }
    std::cout << "output: " << dir.string() << "\n"
              << "steps: " << artifacts.steps_taken << ", rows: " << artifacts.series.size() << "\n"
              << "max drift: mass " << sci(artifacts.drifts.mass_rel) << " (rel), momentum "
              << sci(artifacts.drifts.momentum_abs) << " (abs), energy " << sci(artifacts.drifts.energy_rel)
              << " (rel)\n";
    return code;
}

int cmd_convergence(const std::string& config_path, const std::vector<double>& dts, double reference_dt,
                    const std::vector<double>& expect_order) {
    const RunConfig config = load_config(config_path);
    const auto rows = convergence_study(config, dts, reference_dt);
    const fs::path dir = resolve_output_directory(config);
    fs::create_directories(dir);
    std::string csv = "dt,err_f,err_b3,err_p,order_f,order_b3,order_p,max_picard\n";
    std::printf("%10s %12s %7s %12s %7s %12s %7s\n", "dt", "l1 f", "order", "l1 B3", "order", "l1 p", "order");
    bool monotone = true;
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const ConvergenceRow& r = rows[n];
        const auto ord = [&](double ErrorNorms::*m) {
            return r.order ? format_double((*r.order).*m) : std::string("");
        };
        std::printf("%10.5g %12.4e %7s %12.4e %7s %12.4e %7s\n", r.dt, r.error.f,
                    r.order ? std::to_string(r.order->f).substr(0, 5).c_str() : "--", r.error.b3,
                    r.order ? std::to_string(r.order->b3).substr(0, 5).c_str() : "--", r.error.p,
                    r.order ? std::to_string(r.order->p).substr(0, 5).c_str() : "--");
        csv += format_double(r.dt) + "," + format_double(r.error.f) + "," + format_double(r.error.b3) + "," +
               format_double(r.error.p) + "," + ord(&ErrorNorms::f) + "," + ord(&ErrorNorms::b3) +
               "," + ord(&ErrorNorms::p) + "," + std::to_string(r.max_picard) + "\n";
        if (n > 0 && (r.error.f >= rows[n - 1].error.f || r.error.b3 >= rows[n - 1].error.b3 ||
                      r.error.p >= rows[n - 1].error.p)) {
            monotone = false;
        }
    }
    std::ofstream(dir / "convergence.csv") << csv;
    int code = kOk;
    if (expect_order.size() == 2 && rows.size() >= 2 && rows.back().order) {
        const ErrorNorms& o = *rows.back().order;
        const bool pass = monotone && o.f >= expect_order[0] && o.f <= expect_order[1] && o.b3 >= expect_order[0] &&
                          o.b3 <= expect_order[1] && o.p >= expect_order[0] && o.p <= expect_order[1];
        std::cout << (pass ? "PASS" : "FAIL") << " observed orders of the last pair in [" << expect_order[0] << ", "
                  << expect_order[1] << "], errors monotone: " << (monotone ? "yes" : "no") << "\n";
        if (!pass) code = kAcceptanceViolation;
    }
    return code;
}

int cmd_reversibility(const std::string& config_path, std::size_t steps, double dt, const std::vector<double>& limits) {
    const RunConfig config = load_config(config_path);
    const ErrorNorms e = reversibility_error(config, steps, dt);
    std::cout << "steps " << steps << " at dt = " << dt << " forward and backward\n"
              << "l1 error f  " << sci(e.f) << "\n"
              << "l1 error B3 " << sci(e.b3) << "\n"
              << "l1 error p  " << sci(e.p) << "\n";
    if (limits.size() == 3) {
        const bool pass = e.f <= limits[0] && e.b3 <= limits[1] && e.p <= limits[2];
        std::cout << (pass ? "PASS" : "FAIL") << " limits " << sci(limits[0]) << " " << sci(limits[1]) << " "
                  << sci(limits[2]) << "\n";
        if (!pass) return kAcceptanceViolation;
    }
    return kOk;
}

int cmd_dispersion(const std::string& run_dir, std::size_t harmonics, double tolerance, const RidgeOptions& ridges) {
    const fs::path dir(run_dir);
    const DispersionReport report = analyze_run_directory(dir, ridges, harmonics);
    write_spectrum(dir / "spectrum.bin", report.spectrum);
    std::string csv = "branch,k,omega,power\n";
    for (std::size_t b = 0; b < report.branches.size(); ++b) {
        for (const RidgePoint& p : report.branches[b]) {
            csv += std::to_string(b) + "," + format_double(p.k) + "," + format_double(p.omega) + "," +
                   format_double(p.power) + "\n";
        }
    }
    std::ofstream(dir / "ridges.csv") << csv;
    std::cout << "cyclotron frequency " << report.cyclotron << ", " << report.branches.size() << " branches\n";
    bool pass = report.harmonics.size() == harmonics;
    for (const HarmonicCheck& h : report.harmonics) {
        const bool ok = h.relative_error <= tolerance;
        pass = pass && ok;
        std::cout << "branch " << h.harmonic << ": omega " << h.omega << " at k " << h.k << ", relative distance to "
                  << h.harmonic << "*Omega " << sci(h.relative_error) << (ok ? "" : "  (outside tolerance)") << "\n";
    }
    std::cout << (pass ? "PASS" : "FAIL") << " " << harmonics << " lowest branches within " << tolerance
              << " of the cyclotron harmonics\n";
    return pass ? kOk : kAcceptanceViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conservative semi-Lagrangian solver for the 1D-2V hybrid plasma model"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run a configuration and write its outputs");
    run_cmd->add_option("config", config_path, "configuration file")->required();

    std::vector<double> dts{0.1, 0.05, 0.025, 0.0125, 0.00625};
    double reference_dt = 0.001;
    std::vector<double> expect_order;
    auto* conv_cmd = app.add_subcommand("convergence", "time-step convergence table against a fine reference");
    conv_cmd->add_option("config", config_path, "configuration file")->required();
    conv_cmd->add_option("--dts", dts, "time steps, largest first");
    conv_cmd->add_option("--reference-dt", reference_dt, "time step of the reference run");
    conv_cmd->add_option("--expect-order", expect_order, "LO HI bounds for the last observed orders")->expected(2);

    std::size_t steps = 20;
    double dt = 0.1;
    std::vector<double> limits;
    auto* rev_cmd = app.add_subcommand("reversibility", "forward then backward run, distance to the start");
    rev_cmd->add_option("config", config_path, "configuration file")->required();
    rev_cmd->add_option("--steps", steps, "steps in each direction");
    rev_cmd->add_option("--dt", dt, "time step");
    rev_cmd->add_option("--limits", limits, "maximum l1 errors of f, B3 and p")->expected(3);

    std::string run_dir;
    std::size_t harmonics = 3;
    double tolerance = 0.15;
    RidgeOptions ridges;
    ridges.relative_floor = kBranchRelativeFloor;
    auto* disp_cmd = app.add_subcommand("dispersion", "space-time spectrum and ridge report of a run directory");
    disp_cmd->add_option("run-dir", run_dir, "directory written by `run` with field history")->required();
    disp_cmd->add_option("--harmonics", harmonics, "number of lowest branches to check");
    disp_cmd->add_option("--tolerance", tolerance, "relative distance to n * Omega allowed");
    disp_cmd->add_option("--relative-floor", ridges.relative_floor, "peak floor relative to the column maximum");
    disp_cmd->add_option("--min-points", ridges.min_points, "minimum k columns per branch");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(config_path);
        if (*conv_cmd) return cmd_convergence(config_path, dts, reference_dt, expect_order);
        if (*rev_cmd) return cmd_reversibility(config_path, steps, dt, limits);
        if (*disp_cmd) return cmd_dispersion(run_dir, harmonics, tolerance, ridges);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
    return kOk;
}
