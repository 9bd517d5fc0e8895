#include "cqed/cli/config.hpp"

#include <fstream>

#include "cqed/errors.hpp"
#include "cqed/units.hpp"

namespace cqed::cli {

namespace {

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError(std::string("config: unknown key '") + where + "." + it.key() + "'");
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    try {
        return obj[key].get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: invalid value for '") + key + "'");
    }
}

std::optional<double> get_opt(const json& obj, const char* key) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    if (!obj[key].is_number())
        throw ConfigError(std::string("config: invalid value for '") + key + "'");
    return obj[key].get<double>();
}

} // namespace

json default_config_json() {
    return json{
        {"system", {{"omega0_eV", 2.72}, {"mu_debye", nullptr}, {"initial", "ground"}}},
        {"spectral",
         {{"type", "lorentzian"},
          {"params", {{"g_eV", 0.008}, {"gamma_eV", 0.027}, {"omega_c_eV", 2.72}}},
          {"omega_min_eV", 2.04},
          {"omega_max_eV", 3.40},
          {"n_modes", 400}}},
        {"drive",
         {{"type", "none"},
          {"muE0_eV", nullptr},
          {"E0_V_per_A", nullptr},
          {"t0_fs", 77.76},
          {"T_fs", 24.20},
          {"omega_L_eV", nullptr}}},
        {"method", {{"order", "2"}, {"closure", "zero_cumulant"}}},
        {"integrator",
         {{"rtol", 1e-8},
          {"atol", 1e-10},
          {"t_end_fs", 100.0},
          {"dt_out_fs", 1.0},
          {"max_steps", 100000000},
          {"blowup_threshold", 1e3}}},
        {"oracle", {{"enabled", json::array()}, {"n_max", 8}}},
        {"output", {{"path", "trajectory.csv"}, {"per_mode", false}}},
    };
}

eom::Method parse_method(const std::string& order, const std::string& closure) {
    eom::Method m;
    if (order == "mf") m.order = moments::Order::MF;
    else if (order == "2") m.order = moments::Order::Two;
    else if (order == "2+1a") m.order = moments::Order::TwoPlusOneA;
    else if (order == "2+1b") m.order = moments::Order::TwoPlusOneB;
    else if (order == "3") m.order = moments::Order::Three;
    else throw ConfigError("config: unknown method.order '" + order + "'");
    if (closure == "zero_cumulant") m.closure = eom::Closure::ZeroCumulant;
    else if (closure == "zero_expectation") m.closure = eom::Closure::ZeroExpectation;
    else throw ConfigError("config: unknown method.closure '" + closure + "'");
    m.validate();
    return m;
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    reject_unknown(j, "",
                   {"system", "spectral", "drive", "method", "integrator", "oracle", "output"});
    RunConfig cfg;

    if (j.contains("system")) {
        const json& s = j["system"];
        reject_unknown(s, "system", {"omega0_eV", "mu_debye", "initial"});
        cfg.omega0_eV = get_or(s, "omega0_eV", cfg.omega0_eV);
        cfg.mu_debye = get_opt(s, "mu_debye");
        const std::string init = get_or<std::string>(s, "initial", "ground");
        if (init == "ground") cfg.initial = moments::InitKind::GroundVacuum;
        else if (init == "excited") cfg.initial = moments::InitKind::ExcitedVacuum;
        else throw ConfigError("config: system.initial must be 'ground' or 'excited'");
    }

    if (j.contains("spectral")) {
        const json& s = j["spectral"];
        reject_unknown(s, "spectral",
                       {"type", "params", "omega_min_eV", "omega_max_eV", "n_modes"});
        const std::string type = get_or<std::string>(s, "type", "lorentzian");
        const json p = s.contains("params") ? s["params"] : json::object();
        if (type == "free_space") {
            reject_unknown(p, "spectral.params", {"mu_debye"});
            cfg.spectral_variant = spectral::FreeSpace{get_or(p, "mu_debye", 2565.0)};
        } else if (type == "lorentzian") {
            reject_unknown(p, "spectral.params", {"g_eV", "gamma_eV", "omega_c_eV"});
            cfg.spectral_variant = spectral::Lorentzian{get_or(p, "g_eV", 0.008),
                                                        get_or(p, "gamma_eV", 0.027),
                                                        get_or(p, "omega_c_eV", 2.72)};
        } else if (type == "tabulated") {
            reject_unknown(p, "spectral.params", {"path"});
            if (!p.contains("path"))
                throw ConfigError("config: spectral.params.path required for tabulated type");
            auto sd = spectral::SpectralDensity::tabulated_from_file(p["path"].get<std::string>());
            cfg.spectral_variant = sd.variant();
        } else {
            throw ConfigError("config: unknown spectral.type '" + type + "'");
        }
        cfg.omega_min_eV = get_or(s, "omega_min_eV", cfg.omega_min_eV);
        cfg.omega_max_eV = get_or(s, "omega_max_eV", cfg.omega_max_eV);
        cfg.n_modes = get_or(s, "n_modes", cfg.n_modes);
    }

    if (j.contains("drive")) {
        const json& d = j["drive"];
        reject_unknown(d, "drive",
                       {"type", "muE0_eV", "E0_V_per_A", "t0_fs", "T_fs", "omega_L_eV"});
        const std::string type = get_or<std::string>(d, "type", "none");
        if (type == "none") cfg.drive_type = drive::PulseKind::None;
        else if (type == "gaussian") cfg.drive_type = drive::PulseKind::Gaussian;
        else if (type == "turn_on") cfg.drive_type = drive::PulseKind::TurnOn;
        else throw ConfigError("config: unknown drive.type '" + type + "'");
        cfg.muE0_eV = get_opt(d, "muE0_eV");
        cfg.E0_V_per_A = get_opt(d, "E0_V_per_A");
        cfg.t0_fs = get_or(d, "t0_fs", cfg.t0_fs);
        cfg.T_fs = get_or(d, "T_fs", cfg.T_fs);
        cfg.omega_L_eV = get_opt(d, "omega_L_eV");
    }

    if (j.contains("method")) {
        const json& m = j["method"];
        reject_unknown(m, "method", {"order", "closure"});
        cfg.method = parse_method(get_or<std::string>(m, "order", "2"),
                                  get_or<std::string>(m, "closure", "zero_cumulant"));
    }

    if (j.contains("integrator")) {
        const json& i = j["integrator"];
        reject_unknown(i, "integrator",
                       {"rtol", "atol", "t_end_fs", "dt_out_fs", "max_steps", "blowup_threshold"});
        cfg.rtol = get_or(i, "rtol", cfg.rtol);
        cfg.atol = get_or(i, "atol", cfg.atol);
        cfg.t_end_fs = get_or(i, "t_end_fs", cfg.t_end_fs);
        cfg.dt_out_fs = get_or(i, "dt_out_fs", cfg.dt_out_fs);
        cfg.max_steps = get_or(i, "max_steps", cfg.max_steps);
        cfg.blowup_threshold = get_or(i, "blowup_threshold", cfg.blowup_threshold);
    }

    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        reject_unknown(o, "oracle", {"enabled", "n_max"});
        if (o.contains("enabled")) {
            for (const auto& e : o["enabled"]) {
                const std::string name = e.get<std::string>();
                if (name != "lindblad" && name != "semiclassical" && name != "single_excitation" &&
                    name != "ww")
                    throw ConfigError("config: unknown oracle '" + name + "'");
                cfg.oracle_enabled.push_back(name);
            }
        }
        cfg.oracle_n_max = get_or(o, "n_max", cfg.oracle_n_max);
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        reject_unknown(o, "output", {"path", "per_mode"});
        cfg.output_path = get_or<std::string>(o, "path", cfg.output_path);
        cfg.per_mode = get_or(o, "per_mode", cfg.per_mode);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: JSON parse error in ") + path + ": " + e.what());
    }
    return parse_config(j);
}

Prepared prepare(const RunConfig& cfg) {
    Prepared p;
    p.method = cfg.method;
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
    p.params.omega0 = cfg.omega0_eV;
    p.params.modes = spectral::discretize(sd, cfg.omega_min_eV, cfg.omega_max_eV, cfg.n_modes);

    if (cfg.drive_type == drive::PulseKind::None) {
        p.params.pulse = drive::DrivePulse::none();
    } else {
        double muE0;
        if (cfg.muE0_eV) {
            muE0 = *cfg.muE0_eV;
        } else if (cfg.E0_V_per_A && cfg.mu_debye) {
            muE0 = units::dipole_energy(*cfg.mu_debye, *cfg.E0_V_per_A);
        } else {
            throw ConfigError(
                "config: drive requires either drive.muE0_eV or both drive.E0_V_per_A and "
                "system.mu_debye");
        }
        const double omega_L = cfg.omega_L_eV.value_or(cfg.omega0_eV);
        const double t0 = units::time_to_natural(cfg.t0_fs);
        const double T = units::time_to_natural(cfg.T_fs);
        p.params.pulse = (cfg.drive_type == drive::PulseKind::Gaussian)
                             ? drive::DrivePulse::gaussian(muE0, t0, T, omega_L)
                             : drive::DrivePulse::turn_on(muE0, t0, T, omega_L);
    }

    p.state0 = moments::init(cfg.initial, p.params.modes, cfg.method.order);
    p.icfg.rtol = cfg.rtol;
    p.icfg.atol = cfg.atol;
    p.icfg.t_end = units::time_to_natural(cfg.t_end_fs);
    p.icfg.dt_out = units::time_to_natural(cfg.dt_out_fs);
    p.icfg.max_steps = cfg.max_steps;
    p.icfg.blowup_threshold = cfg.blowup_threshold;
    return p;
}

void set_json_path(json& j, const std::string& dotted, const json& value) {
    json* cur = &j;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key = dotted.substr(start, dot - start);
        if (key.empty()) throw ConfigError("sweep: invalid axis path '" + dotted + "'");
        if (dot == std::string::npos) {
            (*cur)[key] = value;
            return;
        }
        cur = &(*cur)[key];
        start = dot + 1;
    }
}

} // namespace cqed::cli
