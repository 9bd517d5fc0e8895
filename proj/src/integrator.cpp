#include "cqed/integrator.hpp"

#include <algorithm>
#include <sstream>

namespace cqed::integrator {

Trajectory integrate(const moments::MomentState& state0, const eom::SystemParams& params,
                     eom::Method method, const IntegratorConfig& cfg, bool per_mode) {
    eom::RhsEvaluator rhs(params, method);
    moments::MomentState y = state0;
    Trajectory traj;
    auto on_sample = [&](double t, const moments::MomentState& s) {
        const double res = moments::symmetry_residual(s);
        const double scale = std::max(1e-10, 1e-12 * s.flat().cwiseAbs().maxCoeff());
        if (res > scale) {
            std::ostringstream msg;
            msg << "integrate: block symmetry violated at t = " << t << " (residual " << res
                << "); the right-hand side preserves Hermiticity analytically, so this "
                   "indicates a defect";
            throw std::runtime_error(msg.str());
        }
        traj.times.push_back(t);
        traj.observables.push_back(moments::observables(s, per_mode));
    };
    traj.termination = integrate_adaptive(
        [&rhs](double t, const moments::MomentState& s, moments::MomentState& d) { rhs(t, s, d); },
        y, 0.0, cfg, on_sample);
    return traj;
}

static double max_observable_dev(const Trajectory& a, const Trajectory& b) {
    const std::size_t m = std::min(a.observables.size(), b.observables.size());
    double dev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& oa = a.observables[i];
        const auto& ob = b.observables[i];
        dev = std::max(dev, std::abs(oa.population - ob.population));
        dev = std::max(dev, std::abs(oa.sx - ob.sx));
        dev = std::max(dev, std::abs(oa.sy - ob.sy));
        dev = std::max(dev, std::abs(oa.sz - ob.sz));
        dev = std::max(dev, std::abs(oa.photon_total - ob.photon_total));
    }
    return dev;
}

ConvergenceReport convergence_sweep(const moments::MomentState& state0,
                                    const eom::SystemParams& params, eom::Method method,
                                    const IntegratorConfig& cfg) {
    IntegratorConfig mid = cfg, fine = cfg;
    mid.rtol *= 0.5;
    mid.atol *= 0.5;
    fine.rtol *= 0.25;
    fine.atol *= 0.25;
    const Trajectory t0 = integrate(state0, params, method, cfg);
    const Trajectory t1 = integrate(state0, params, method, mid);
    const Trajectory t2 = integrate(state0, params, method, fine);
    return {max_observable_dev(t0, t1), max_observable_dev(t1, t2)};
}

} // namespace cqed::integrator
