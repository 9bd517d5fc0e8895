// config.hpp — JSON run configuration: schema, defaults, validation.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqed/eom.hpp"
#include "cqed/integrator.hpp"
#include "cqed/moments.hpp"

namespace cqed::cli {

using json = nlohmann::json;

struct RunConfig {
    // system
    double omega0_eV{2.72};
    std::optional<double> mu_debye; // used only to convert E0 -> muE0
    moments::InitKind initial{moments::InitKind::GroundVacuum};
    // spectral
    spectral::SpectralDensity::Variant spectral_variant{
        spectral::Lorentzian{0.008, 0.027, 2.72}};
    double omega_min_eV{2.04};
    double omega_max_eV{3.40};
    int n_modes{400};
    // drive
    drive::PulseKind drive_type{drive::PulseKind::None};
    std::optional<double> muE0_eV;
    std::optional<double> E0_V_per_A;
    double t0_fs{77.76};
    double T_fs{24.20};
    std::optional<double> omega_L_eV; // defaults to omega0
    // method
    eom::Method method{};
    // integrator (times in fs at this level)
    double rtol{1e-8};
    double atol{1e-10};
    double t_end_fs{100.0};
    double dt_out_fs{1.0};
    long max_steps{100000000};
    double blowup_threshold{1e3};
    // oracle
    std::vector<std::string> oracle_enabled;
    int oracle_n_max{8};
    // output
    std::string output_path{"trajectory.csv"};
    bool per_mode{false};
};

// Full default configuration with every key explicit.
json default_config_json();

// Parse + schema-validate (unknown keys rejected, missing keys defaulted).
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);

// Assemble the pieces a run needs.
struct Prepared {
    eom::SystemParams params;
    eom::Method method;
    moments::MomentState state0;
    integrator::IntegratorConfig icfg;
};
Prepared prepare(const RunConfig& cfg);

// Set a dotted path (e.g. "spectral.params.g_eV") in a JSON config.
void set_json_path(json& j, const std::string& dotted, const json& value);

eom::Method parse_method(const std::string& order, const std::string& closure = "zero_cumulant");

} // namespace cqed::cli
