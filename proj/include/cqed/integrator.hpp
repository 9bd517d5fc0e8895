// integrator.hpp — Adaptive embedded Runge-Kutta time stepping.
//
// The core stepper is a Dormand-Prince 5(4) pair with PI step-size control,
// templated over any state exposing a flat Eigen::VectorXd. Divergence
// (component magnitude beyond a threshold, or non-finite values) terminates
// the run as data, not as a failure.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "cqed/eom.hpp"
#include "cqed/errors.hpp"
#include "cqed/moments.hpp"

namespace cqed::integrator {

struct IntegratorConfig {
    double rtol{1e-8};
    double atol{1e-10};
    double t_end{0.0};            // 1/eV
    double dt_out{0.0};           // 1/eV
    long max_steps{100000000};    // counts attempted steps
    double blowup_threshold{1e3};

    void validate() const {
        if (!(rtol > 0.0) || !(atol > 0.0))
            throw ConfigError("integrator: tolerances must be > 0");
        if (!(t_end > 0.0)) throw ConfigError("integrator: t_end must be > 0");
        if (!(dt_out > 0.0)) throw ConfigError("integrator: dt_out must be > 0");
        if (max_steps <= 0) throw ConfigError("integrator: max_steps must be > 0");
        if (!(blowup_threshold > 0.0))
            throw ConfigError("integrator: blowup_threshold must be > 0");
    }
};

enum class TerminationKind { Completed, Diverged, StepLimit };

struct Termination {
    TerminationKind kind{TerminationKind::Completed};
    double t{0.0}; // time of divergence / step-limit hit (t_end when completed)
};

struct Trajectory {
    std::vector<double> times; // 1/eV
    std::vector<moments::Observables> observables;
    Termination termination;
};

// Minimal wrapper so plain vectors (oracle states) fit the stepper.
struct FlatState {
    Eigen::VectorXd v;
    Eigen::VectorXd& flat() { return v; }
    const Eigen::VectorXd& flat() const { return v; }
};

namespace detail {
// Dormand-Prince 5(4) tableau
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b(5th) - b(4th)
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
} // namespace detail

// Advances `y` from t0 to cfg.t_end, invoking on_sample(t, y) at t0, every
// dt_out thereafter, and at t_end (final partial interval allowed). Rhs has
// signature rhs(double t, const State& y, State& dydt); a NonFiniteInput
// thrown by an internal stage is treated as a failed step.
template <class State, class Rhs, class SampleFn>
Termination integrate_adaptive(Rhs&& rhs, State& y, double t0, const IntegratorConfig& cfg,
                               SampleFn&& on_sample) {
    cfg.validate();
    using namespace detail;

    State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, ytmp = y, ynew = y;
    Eigen::VectorXd err(y.flat().size());

    const double t_end = cfg.t_end;
    const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
    double t = t0;
    on_sample(t, y);
    if (t0 >= t_end - tiny) return {TerminationKind::Completed, t_end};

    long sample_idx = 1;
    auto sample_time = [&](long k) {
        double ts = t0 + k * cfg.dt_out;
        if (ts >= t_end - 1e-9 * cfg.dt_out) ts = t_end;
        return ts;
    };
    double next_sample = sample_time(sample_idx);

    double h = std::max(std::min(cfg.dt_out, t_end - t0) * 0.01, 1e-12);
    double err_old = 1e-4;
    long attempts = 0;

    rhs(t, y, k1);
    while (t < t_end - tiny) {
        if (++attempts > cfg.max_steps) return {TerminationKind::StepLimit, t};
        bool hit_sample = false;
        if (t + h >= next_sample - tiny) {
            h = next_sample - t;
            hit_sample = true;
        }
        if (h <= std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0) * 4.0)
            return {TerminationKind::Diverged, t};

        double err_norm = std::numeric_limits<double>::infinity();
        double max_abs = 0.0;
        bool stage_ok = true;
        try {
            ytmp.flat() = y.flat() + h * (a21 * k1.flat());
            rhs(t + c2 * h, ytmp, k2);
            ytmp.flat() = y.flat() + h * (a31 * k1.flat() + a32 * k2.flat());
            rhs(t + c3 * h, ytmp, k3);
            ytmp.flat() = y.flat() + h * (a41 * k1.flat() + a42 * k2.flat() + a43 * k3.flat());
            rhs(t + c4 * h, ytmp, k4);
            ytmp.flat() = y.flat() + h * (a51 * k1.flat() + a52 * k2.flat() + a53 * k3.flat() +
                                          a54 * k4.flat());
            rhs(t + c5 * h, ytmp, k5);
            ytmp.flat() = y.flat() + h * (a61 * k1.flat() + a62 * k2.flat() + a63 * k3.flat() +
                                          a64 * k4.flat() + a65 * k5.flat());
            rhs(t + h, ytmp, k6);
            ynew.flat() = y.flat() + h * (b1 * k1.flat() + b3 * k3.flat() + b4 * k4.flat() +
                                          b5 * k5.flat() + b6 * k6.flat());
            rhs(t + h, ynew, k7);
        } catch (const NonFiniteInput&) {
            stage_ok = false;
        }
        if (stage_ok) {
            err = h * (e1 * k1.flat() + e3 * k3.flat() + e4 * k4.flat() + e5 * k5.flat() +
                       e6 * k6.flat() + e7 * k7.flat());
            err_norm = 0.0;
            const auto& yv = y.flat();
            const auto& ynv = ynew.flat();
            for (Eigen::Index i = 0; i < err.size(); ++i) {
                const double scale =
                    cfg.atol + cfg.rtol * std::max(std::abs(yv[i]), std::abs(ynv[i]));
                err_norm = std::max(err_norm, std::abs(err[i]) / scale);
                max_abs = std::max(max_abs, std::abs(ynv[i]));
            }
        }

        if (!std::isfinite(err_norm)) {
            h *= 0.25; // k1 at (t, y) is still valid
            continue;
        }

        if (err_norm <= 1.0) {
            t = hit_sample ? next_sample : t + h;
            y.flat().swap(ynew.flat());
            k1.flat().swap(k7.flat()); // FSAL
            if (max_abs > cfg.blowup_threshold || !std::isfinite(max_abs))
                return {TerminationKind::Diverged, t};
            if (hit_sample) {
                on_sample(t, y);
                ++sample_idx;
                next_sample = sample_time(sample_idx);
            }
            double fac = 5.0;
            if (err_norm > 0.0) {
                fac = 0.9 * std::pow(err_norm, -0.7 / 5.0) * std::pow(err_old, 0.4 / 5.0);
                fac = std::min(5.0, std::max(0.2, fac));
            }
            err_old = std::max(err_norm, 1e-4);
            h *= fac;
        } else {
            h *= std::min(0.9, std::max(0.1, 0.9 * std::pow(err_norm, -0.2)));
        }
    }
    return {TerminationKind::Completed, t_end};
}

// Moment-hierarchy front end: integrates state0 and samples observables.
// Symmetry residuals of the stored blocks are checked at every sample.
Trajectory integrate(const moments::MomentState& state0, const eom::SystemParams& params,
                     eom::Method method, const IntegratorConfig& cfg, bool per_mode = false);

struct ConvergenceReport {
    // max absolute deviation of sampled observables between successive
    // tolerance halvings: (cfg) vs (cfg/2), and (cfg/2) vs (cfg/4)
    double dev_coarse_mid{0.0};
    double dev_mid_fine{0.0};
};

ConvergenceReport convergence_sweep(const moments::MomentState& state0,
                                    const eom::SystemParams& params, eom::Method method,
                                    const IntegratorConfig& cfg);

} // namespace cqed::integrator
