#include "cqed/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include "cqed/cli/csv.hpp"
#include "cqed/errors.hpp"
#include "cqed/oracles.hpp"
#include "cqed/units.hpp"

namespace cqed::cli {

namespace fs = std::filesystem;
using integrator::TerminationKind;

int default_jobs() {
    if (const char* env = std::getenv("CUMULANT_QED_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

static int exit_code_for(TerminationKind kind) {
    switch (kind) {
    case TerminationKind::Completed: return ExitOk;
    case TerminationKind::Diverged: return ExitDiverged;
    case TerminationKind::StepLimit: return ExitStepLimit;
    }
    return ExitOk;
}

int cmd_run(const RunConfig& cfg) {
    Prepared p = prepare(cfg);
    const auto traj = integrator::integrate(p.state0, p.params, p.method, p.icfg, cfg.per_mode);
    write_trajectory_csv(cfg.output_path, traj, cfg.per_mode);
    if (traj.termination.kind == TerminationKind::Diverged)
        std::cerr << "run: diverged at t = "
                  << units::time_from_natural(traj.termination.t) << " fs\n";
    if (traj.termination.kind == TerminationKind::StepLimit)
        std::cerr << "run: step limit reached at t = "
                  << units::time_from_natural(traj.termination.t) << " fs\n";
    return exit_code_for(traj.termination.kind);
}

static std::vector<double> oracle_population(const RunConfig& cfg, const Prepared& p,
                                             const std::string& oracle) {
    const double t_end = p.icfg.t_end, dt_out = p.icfg.dt_out;
    if (oracle == "lindblad") {
        const auto* lor = std::get_if<spectral::Lorentzian>(&cfg.spectral_variant);
        if (!lor)
            throw ConfigError("compare: the lindblad oracle requires spectral.type=lorentzian");
        return oracles::lindblad_rabi(lor->g, lor->gamma, lor->omega_c, cfg.omega0_eV,
                                      p.params.pulse, cfg.oracle_n_max, cfg.initial, t_end,
                                      dt_out)
            .population;
    }
    if (oracle == "semiclassical")
        return oracles::semiclassical_tls(cfg.omega0_eV, p.params.pulse, t_end, dt_out).population;
    if (oracle == "single_excitation")
        return oracles::single_excitation_exact(p.params.modes, cfg.omega0_eV, t_end, dt_out)
            .population;
    if (oracle == "ww") {
        auto sd = std::visit(
            [](const auto& v) -> spectral::SpectralDensity {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, spectral::FreeSpace>)
                    return spectral::SpectralDensity::free_space(v.mu_debye);
                else if constexpr (std::is_same_v<T, spectral::Lorentzian>)
                    return spectral::SpectralDensity::lorentzian(v.g, v.gamma, v.omega_c);
                else
                    return spectral::SpectralDensity::tabulated(v.omega, v.J);
            },
            cfg.spectral_variant);
        return oracles::ww_exponential(sd.eval(cfg.omega0_eV), t_end, dt_out).population;
    }
    throw ConfigError("compare: unknown oracle '" + oracle + "'");
}

int cmd_compare(const RunConfig& cfg, const std::vector<std::string>& methods,
                const std::string& oracle, const std::string& out_path) {
    if (methods.empty()) throw ConfigError("compare: empty method list");
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;
    std::vector<double> times_fs;

    for (const auto& mname : methods) {
        RunConfig mc = cfg;
        mc.method = parse_method(mname);
        Prepared p = prepare(mc);
        const auto traj = integrator::integrate(p.state0, p.params, p.method, p.icfg);
        if (traj.times.size() > times_fs.size()) {
            times_fs.clear();
            for (double t : traj.times) times_fs.push_back(units::time_from_natural(t));
        }
        std::vector<double> pop;
        pop.reserve(traj.observables.size());
        for (const auto& o : traj.observables) pop.push_back(o.population);
        labels.push_back(mname);
        columns.push_back(std::move(pop));
        if (traj.termination.kind != TerminationKind::Completed)
            std::cout << "note: method " << mname << " terminated early ("
                      << (traj.termination.kind == TerminationKind::Diverged ? "diverged"
                                                                             : "step limit")
                      << " at t = " << units::time_from_natural(traj.termination.t) << " fs)\n";
    }
    if (!oracle.empty() && oracle != "none") {
        Prepared p = prepare(cfg);
        columns.push_back(oracle_population(cfg, p, oracle));
        labels.push_back(oracle);
        if (columns.back().size() > times_fs.size()) {
            times_fs.clear();
            const double dt_fs = cfg.dt_out_fs;
            for (std::size_t i = 0; i < columns.back().size(); ++i)
                times_fs.push_back(std::min(i * dt_fs, cfg.t_end_fs));
        }
    }
    write_columns_csv(out_path, times_fs, labels, columns);

    for (std::size_t i = 0; i < columns.size(); ++i)
        for (std::size_t j = i + 1; j < columns.size(); ++j) {
            const std::size_t m = std::min(columns[i].size(), columns[j].size());
            double dev = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                dev = std::max(dev, std::abs(columns[i][k] - columns[j][k]));
            std::cout << "max |" << labels[i] << " - " << labels[j] << "| = "
                      << format_double(dev) << " over " << m << " samples\n";
        }
    return ExitOk;
}

int cmd_sweep(const json& base_config, const std::string& axis, const std::vector<double>& values,
              const std::string& out_dir, int jobs) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    if (axis.empty()) throw ConfigError("sweep: empty axis path");
    if (jobs < 1) jobs = default_jobs();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("sweep: cannot create output directory " + out_dir);

    std::vector<std::string> files(values.size());
    std::vector<int> codes(values.size(), 0);
    std::vector<json> configs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        json j = base_config;
        set_json_path(j, axis, values[i]);
        char name[32];
        std::snprintf(name, sizeof(name), "run_%03zu.csv", i);
        files[i] = name;
        set_json_path(j, "output.path", (fs::path(out_dir) / name).string());
        configs[i] = std::move(j);
        // validate eagerly so a bad axis path fails before any run starts
        parse_config(configs[i]);
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            try {
                codes[i] = cmd_run(parse_config(configs[i]));
            } catch (const std::exception& e) {
                std::cerr << "sweep: run " << i << " failed: " << e.what() << "\n";
                codes[i] = ExitConfigError;
            }
        }
    };
    std::vector<std::future<void>> pool;
    const int nworkers = std::min<std::size_t>(jobs, values.size());
    for (int w = 0; w < nworkers; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();

    json manifest{
        {"axis", axis},
        {"values", values},
        {"files", files},
        {"exit_codes", codes},
        {"timestamp",
         std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
             .count()},
    };
    std::ofstream mf(fs::path(out_dir) / "manifest.json");
    if (!mf) throw IoError("sweep: cannot write manifest");
    mf << manifest.dump(2) << "\n";

    for (int c : codes)
        if (c != ExitOk && c != ExitDiverged) return c;
    return ExitOk;
}

namespace {

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

void report(std::vector<Check>& checks, const std::string& name, bool pass,
            const std::string& detail = "") {
    checks.push_back({name, pass, detail});
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
}

eom::SystemParams residual_test_params() {
    eom::SystemParams p;
    p.omega0 = 1.0;
    p.modes.omega = {0.7, 1.3};
    p.modes.g = {0.05, 0.08};
    p.modes.delta_omega = 0.6;
    p.modes.omega_min = 0.4;
    p.modes.omega_max = 1.6;
    p.pulse = drive::DrivePulse::gaussian(0.15, 1.5, 0.8, 1.0);
    return p;
}

} // namespace

int cmd_validate(const std::vector<std::string>& suites) {
    if (suites.empty()) throw ConfigError("validate: empty suite list");
    std::vector<Check> checks;
    for (const auto& suite : suites) {
        if (suite == "residual") {
            auto res = oracles::rhs_residual(residual_test_params(), 3, {0.8, 1.6, 2.4});
            double worst = 0.0;
            std::string worst_name;
            for (const auto& [name, v] : res)
                if (v > worst) {
                    worst = v;
                    worst_name = name;
                }
            report(checks, "residual: all equation families < 1e-6", worst < 1e-6,
                   "max " + format_double(worst) + " in " + worst_name);
        } else if (suite == "oracles") {
            // free-space decay: discretized single-excitation model vs Wigner-Weisskopf
            auto sd = spectral::SpectralDensity::free_space(2565.0);
            auto modes = spectral::discretize(sd, 0.0, 5.44, 400);
            const double t_end = units::time_to_natural(150.0);
            auto se = oracles::single_excitation_exact(modes, 2.72, t_end, 1.0);
            auto ww = oracles::ww_exponential(sd.eval(2.72), t_end, 1.0);
            double dev = 0.0;
            for (std::size_t i = 0; i < se.population.size(); ++i)
                dev = std::max(dev, std::abs(se.population[i] - ww.population[i]));
            report(checks, "oracles: single-excitation vs WW (free space) < 0.02", dev < 0.02,
                   "max dev " + format_double(dev));
            report(checks, "oracles: single-excitation norm drift < 1e-8", se.norm_drift < 1e-8,
                   format_double(se.norm_drift));
            // Lindblad trace preservation and decoupled-limit equivalence
            auto pulse = drive::DrivePulse::gaussian(0.132, units::time_to_natural(77.76),
                                                     units::time_to_natural(24.20), 2.72);
            auto lb = oracles::lindblad_rabi(0.0, 0.0, 2.72, 2.72, pulse, 2,
                                             moments::InitKind::GroundVacuum,
                                             units::time_to_natural(150.0), 1.0);
            auto sc = oracles::semiclassical_tls(2.72, pulse, units::time_to_natural(150.0), 1.0);
            double dev2 = 0.0;
            for (std::size_t i = 0; i < lb.population.size(); ++i)
                dev2 = std::max(dev2, std::abs(lb.population[i] - sc.population[i]));
            report(checks, "oracles: decoupled lindblad vs semiclassical < 1e-8", dev2 < 1e-8,
                   "max dev " + format_double(dev2));
            report(checks, "oracles: lindblad trace drift < 1e-8", lb.norm_drift < 1e-8,
                   format_double(lb.norm_drift));
        } else if (suite == "symmetry") {
            RunConfig cfg;
            cfg.initial = moments::InitKind::ExcitedVacuum;
            cfg.n_modes = 60;
            cfg.method = parse_method("2+1b");
            cfg.t_end_fs = 40.0;
            cfg.dt_out_fs = 1.0;
            cfg.rtol = 1e-7;
            cfg.atol = 1e-9;
            Prepared p = prepare(cfg);
            bool threw = false;
            try {
                auto traj = integrator::integrate(p.state0, p.params, p.method, p.icfg);
                (void)traj;
            } catch (const std::exception&) {
                threw = true;
            }
            report(checks, "symmetry: invariants hold along 2+1b trajectory", !threw);
        } else {
            throw ConfigError("validate: unknown suite '" + suite + "'");
        }
    }
    for (const auto& c : checks)
        if (!c.pass) return 1;
    return ExitOk;
}

} // namespace cqed::cli
