#include "cqed/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "cqed/eom_core.hpp"
#include "cqed/errors.hpp"
#include "cqed/integrator.hpp"

namespace cqed::oracles {

using integrator::FlatState;
using integrator::IntegratorConfig;
using integrator::TerminationKind;
namespace core = eom::core;

namespace {

Eigen::Map<Eigen::VectorXcd> as_complex(Eigen::VectorXd& v) {
    return {reinterpret_cast<cxd*>(v.data()), v.size() / 2};
}
Eigen::Map<const Eigen::VectorXcd> as_complex(const Eigen::VectorXd& v) {
    return {reinterpret_cast<const cxd*>(v.data()), v.size() / 2};
}

IntegratorConfig oracle_cfg(double t_end, double dt_out, double rtol, double atol) {
    IntegratorConfig cfg;
    cfg.rtol = rtol;
    cfg.atol = atol;
    cfg.t_end = t_end;
    cfg.dt_out = dt_out;
    cfg.blowup_threshold = 1e6;
    return cfg;
}

} // namespace

OracleResult single_excitation_exact(const spectral::DiscreteModes& modes, double omega0,
                                     double t_end, double dt_out, double rtol, double atol) {
    const int n = modes.size();
    FlatState y;
    y.v = Eigen::VectorXd::Zero(2 * (n + 1));
    as_complex(y.v)[0] = 1.0; // c_e
    const Eigen::Map<const Eigen::VectorXd> w(modes.omega.data(), n);
    const Eigen::Map<const Eigen::VectorXd> g(modes.g.data(), n);

    auto rhs = [&](double, const FlatState& s, FlatState& d) {
        auto c = as_complex(s.v);
        auto dc = as_complex(d.v);
        const cxd ce = c[0];
        const auto cn = c.tail(n);
        dc[0] = -core::I * (omega0 * ce + cn.cwiseProduct(g.cast<cxd>()).sum());
        dc.tail(n) = -core::I * ((w.array() * cn.array()).matrix() + ce * g.cast<cxd>());
    };

    OracleResult out;
    auto cfg = oracle_cfg(t_end, dt_out, rtol, atol);
    auto term = integrator::integrate_adaptive(rhs, y, 0.0,  cfg,
        [&](double t, const FlatState& s) {
            auto c = as_complex(s.v);
            out.times.push_back(t);
            out.population.push_back(std::norm(c[0]));
            out.norm_drift = std::max(out.norm_drift, std::abs(c.squaredNorm() - 1.0));
        });
    if (term.kind != TerminationKind::Completed)
        throw std::runtime_error("single_excitation_exact: propagation did not complete");
    return out;
}

OracleResult lindblad_rabi(double g, double gamma, double omega_c, double omega0,
                           const drive::DrivePulse& pulse, int n_max,
                           moments::InitKind initial, double t_end, double dt_out, double rtol,
                           double atol) {
    if (n_max < 1) throw ConfigError("lindblad_rabi: n_max must be >= 1");

    auto run = [&](int nf) {
        const int dim = 2 * nf; // emitter (x) Fock(nf), index s*nf + k
        Eigen::MatrixXcd Sx = Eigen::MatrixXcd::Zero(dim, dim);
        Eigen::MatrixXcd H0 = Eigen::MatrixXcd::Zero(dim, dim);
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
        for (int s = 0; s < 2; ++s)
            for (int k = 0; k < nf; ++k) {
                const int i = s * nf + k;
                const double sz = (s == 1) ? 1.0 : -1.0;
                H0(i, i) = 0.5 * omega0 * sz + omega_c * k;
                Sx(i, (1 - s) * nf + k) = 1.0;
                if (k > 0) A(s * nf + k - 1, i) = std::sqrt(static_cast<double>(k));
            }
        // coupling g (a + a^dag) sigma^x
        Eigen::MatrixXcd AplusAd = Eigen::MatrixXcd::Zero(dim, dim);
        for (int s = 0; s < 2; ++s)
            for (int k = 0; k + 1 < nf; ++k) {
                const double v = std::sqrt(static_cast<double>(k + 1));
                AplusAd(s * nf + k, s * nf + k + 1) = v;
                AplusAd(s * nf + k + 1, s * nf + k) = v;
            }
        H0 += g * (Sx * AplusAd);
        const Eigen::MatrixXcd Ad = A.adjoint();
        const Eigen::MatrixXcd Nop = Ad * A;

        FlatState y;
        y.v = Eigen::VectorXd::Zero(2 * dim * dim);
        {
            Eigen::Map<Eigen::MatrixXcd> rho(reinterpret_cast<cxd*>(y.v.data()), dim, dim);
            const int i0 = (initial == moments::InitKind::ExcitedVacuum) ? nf : 0;
            rho(i0, i0) = 1.0;
        }

        Eigen::MatrixXcd H(dim, dim), tmp(dim, dim);
        auto rhs = [&](double t, const FlatState& s, FlatState& d) {
            Eigen::Map<const Eigen::MatrixXcd> rho(reinterpret_cast<const cxd*>(s.v.data()), dim,
                                                   dim);
            Eigen::Map<Eigen::MatrixXcd> drho(reinterpret_cast<cxd*>(d.v.data()), dim, dim);
            H = H0 - drive::mu_field(pulse, t) * Sx;
            tmp.noalias() = H * rho;
            tmp.noalias() -= rho * H;
            drho = -core::I * tmp;
            tmp.noalias() = A * rho;
            drho.noalias() += gamma * (tmp * Ad);
            tmp.noalias() = Nop * rho;
            tmp.noalias() += rho * Nop;
            drho -= (0.5 * gamma) * tmp;
        };

        OracleResult out;
        auto cfg = oracle_cfg(t_end, dt_out, rtol, atol);
        auto term = integrator::integrate_adaptive(rhs, y, 0.0, cfg,
            [&](double t, const FlatState& s) {
                Eigen::Map<const Eigen::MatrixXcd> rho(reinterpret_cast<const cxd*>(s.v.data()),
                                                       dim, dim);
                double pop = 0.0, nph = 0.0, tr = 0.0;
                for (int k = 0; k < nf; ++k) {
                    pop += rho(nf + k, nf + k).real();
                    nph += k * (rho(k, k).real() + rho(nf + k, nf + k).real());
                    tr += rho(k, k).real() + rho(nf + k, nf + k).real();
                }
                out.times.push_back(t);
                out.population.push_back(pop);
                out.photon.push_back(nph);
                out.norm_drift = std::max(out.norm_drift, std::abs(tr - 1.0));
            });
        if (term.kind != TerminationKind::Completed)
            throw std::runtime_error("lindblad_rabi: propagation did not complete");
        return out;
    };

    OracleResult coarse = run(n_max);
    OracleResult fine = run(2 * n_max);
    double dev = 0.0;
    for (std::size_t i = 0; i < coarse.population.size(); ++i)
        dev = std::max(dev, std::abs(coarse.population[i] - fine.population[i]));
    if (dev >= 1e-4)
        throw FockCutoffNotConverged("lindblad_rabi: doubling n_max changes the population by " +
                                     std::to_string(dev));
    return coarse;
}

OracleResult semiclassical_tls(double omega0, const drive::DrivePulse& pulse, double t_end,
                               double dt_out, double rtol, double atol) {
    FlatState y;
    y.v = Eigen::VectorXd::Zero(4);
    as_complex(y.v)[0] = 1.0; // C_g
    auto rhs = [&](double t, const FlatState& s, FlatState& d) {
        auto c = as_complex(s.v);
        auto dc = as_complex(d.v);
        const double f = drive::mu_field(pulse, t);
        dc[0] = -core::I * (-f * c[1]);
        dc[1] = -core::I * (-f * c[0] + omega0 * c[1]);
    };
    OracleResult out;
    auto cfg = oracle_cfg(t_end, dt_out, rtol, atol);
    auto term = integrator::integrate_adaptive(rhs, y, 0.0, cfg,
        [&](double t, const FlatState& s) {
            auto c = as_complex(s.v);
            out.times.push_back(t);
            out.population.push_back(std::norm(c[1]));
            out.norm_drift = std::max(out.norm_drift, std::abs(c.squaredNorm() - 1.0));
        });
    if (term.kind != TerminationKind::Completed)
        throw std::runtime_error("semiclassical_tls: propagation did not complete");
    return out;
}

OracleResult ww_exponential(double J_at_omega0, double t_end, double dt_out) {
    OracleResult out;
    const double rate = 2.0 * M_PI * J_at_omega0;
    for (long k = 0;; ++k) {
        double t = k * dt_out;
        if (t > t_end) t = t_end;
        out.times.push_back(t);
        out.population.push_back(std::exp(-rate * t));
        if (t >= t_end) break;
    }
    return out;
}

// --- dense wavefunction engine ---------------------------------------------

namespace {

// Two-level emitter (x) n_modes Fock registers with `cut` levels each.
// Index: s * cut^n + sum_i k_i cut^i, s = 0 ground / 1 excited.
struct FockSystem {
    int n_modes, cut, boson_dim, dim;
    std::vector<int> stride;

    FockSystem(int n, int c) : n_modes(n), cut(c) {
        stride.resize(n);
        int b = 1;
        for (int i = 0; i < n; ++i) {
            stride[i] = b;
            b *= c;
        }
        boson_dim = b;
        dim = 2 * b;
    }

    int level(int idx, int mode) const { return (idx % (stride[mode] * cut)) / stride[mode]; }

    void apply_a(int mode, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
        out.setZero();
        for (int i = 0; i < dim; ++i) {
            const int k = level(i % boson_dim + 0, mode);
            if (k > 0) out[i - stride[mode]] += std::sqrt(static_cast<double>(k)) * in[i];
        }
    }
    void apply_adag(int mode, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
        out.setZero();
        for (int i = 0; i < dim; ++i) {
            const int k = level(i % boson_dim, mode);
            if (k + 1 < cut) out[i + stride[mode]] += std::sqrt(k + 1.0) * in[i];
        }
    }
    void apply_sigma(int axis, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
        out.setZero();
        const int b = boson_dim;
        for (int i = 0; i < b; ++i) {
            const cxd vg = in[i], ve = in[b + i];
            switch (axis) {
            case moments::AxisX:
                out[i] = ve;
                out[b + i] = vg;
                break;
            case moments::AxisY:
                out[i] = -core::I * ve;
                out[b + i] = core::I * vg;
                break;
            default:
                out[i] = -vg;
                out[b + i] = ve;
                break;
            }
        }
    }

    // H psi for the discrete Hamiltonian with drive value f
    void apply_h(const eom::SystemParams& p, double f, const Eigen::VectorXcd& in,
                 Eigen::VectorXcd& out, Eigen::VectorXcd& scratch1,
                 Eigen::VectorXcd& scratch2) const {
        const int b = boson_dim;
        for (int i = 0; i < dim; ++i) {
            double diag = (i < b) ? -0.5 * p.omega0 : 0.5 * p.omega0;
            for (int m = 0; m < n_modes; ++m) diag += p.modes.omega[m] * level(i % b, m);
            out[i] = diag * in[i];
        }
        apply_sigma(moments::AxisX, in, scratch1); // sigma^x |psi>
        out -= f * scratch1;
        for (int m = 0; m < n_modes; ++m) {
            apply_a(m, scratch1, scratch2);
            out += p.modes.g[m] * scratch2;
            apply_adag(m, scratch1, scratch2);
            out += p.modes.g[m] * scratch2;
        }
    }

    // Population in the top Fock layer of any mode.
    double top_layer_population(const Eigen::VectorXcd& psi) const {
        double pop = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int m = 0; m < n_modes; ++m)
                if (level(i % boson_dim, m) == cut - 1) {
                    pop += std::norm(psi[i]);
                    break;
                }
        return pop;
    }
};

// Expectation value of a normal-ordered operator string.
cxd expectation(const FockSystem& fs, const Eigen::VectorXcd& psi,
                std::initializer_list<moments::Op> ops) {
    Eigen::VectorXcd cur = psi, tmp(fs.dim);
    // apply right-to-left
    std::vector<moments::Op> v(ops);
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        switch (it->kind) {
        case moments::OpKind::ADag:
            fs.apply_adag(it->index, cur, tmp);
            break;
        case moments::OpKind::A:
            fs.apply_a(it->index, cur, tmp);
            break;
        case moments::OpKind::Sigma:
            fs.apply_sigma(it->index, cur, tmp);
            break;
        }
        cur.swap(tmp);
    }
    return psi.dot(cur); // conjugates the left argument
}

struct ExactMoments {
    double s[3];
    Eigen::VectorXcd alpha, S[3];
    Eigen::MatrixXcd Ae, Be, M[3], F[3];
    std::vector<Eigen::MatrixXcd> Ge, Ke; // slices over the last index
    Eigen::MatrixXcd T[3], U[3];          // only y, z filled
};

ExactMoments compute_moments(const FockSystem& fs, const eom::SystemParams& p,
                             const Eigen::VectorXcd& psi, bool with_four) {
    using moments::Op;
    const int n = fs.n_modes;
    ExactMoments em;
    em.alpha.resize(n);
    for (int i = 0; i < 3; ++i) {
        em.s[i] = expectation(fs, psi, {Op::sigma(i)}).real();
        em.S[i].resize(n);
        em.M[i].resize(n, n);
        em.F[i].resize(n, n);
    }
    em.Ae.resize(n, n);
    em.Be.resize(n, n);
    for (int a = 0; a < n; ++a) {
        em.alpha[a] = expectation(fs, psi, {Op::a(a)});
        for (int i = 0; i < 3; ++i) em.S[i][a] = expectation(fs, psi, {Op::adag(a), Op::sigma(i)});
        for (int b = 0; b < n; ++b) {
            em.Ae(a, b) = expectation(fs, psi, {Op::adag(a), Op::a(b)});
            em.Be(a, b) = expectation(fs, psi, {Op::adag(a), Op::adag(b)});
            for (int i = 0; i < 3; ++i) {
                em.M[i](a, b) = expectation(fs, psi, {Op::adag(a), Op::a(b), Op::sigma(i)});
                em.F[i](a, b) = expectation(fs, psi, {Op::adag(a), Op::adag(b), Op::sigma(i)});
            }
        }
    }
    em.Ge.assign(n, Eigen::MatrixXcd(n, n));
    em.Ke.assign(n, Eigen::MatrixXcd(n, n));
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                em.Ge[l](a, b) = expectation(fs, psi, {Op::adag(a), Op::adag(b), Op::a(l)});
                em.Ke[l](a, b) = expectation(fs, psi, {Op::adag(a), Op::adag(b), Op::adag(l)});
            }
    if (with_four) {
        for (int i : {moments::AxisY, moments::AxisZ}) {
            em.T[i].setZero(n, n);
            em.U[i].setZero(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int l = 0; l < n; ++l) {
                        const double gl = p.modes.g[l];
                        em.T[i](a, b) +=
                            gl * (expectation(fs, psi,
                                              {Op::adag(a), Op::adag(l), Op::a(b), Op::sigma(i)}) +
                                  expectation(fs, psi,
                                              {Op::adag(a), Op::a(l), Op::a(b), Op::sigma(i)}));
                        em.U[i](a, b) +=
                            gl *
                            (expectation(fs, psi,
                                         {Op::adag(a), Op::adag(l), Op::adag(b), Op::sigma(i)}) +
                             expectation(fs, psi,
                                         {Op::adag(a), Op::adag(b), Op::a(l), Op::sigma(i)}));
                    }
        }
    }
    return em;
}

} // namespace

std::map<std::string, double> rhs_residual(const eom::SystemParams& params, int fock_cutoff,
                                           const std::vector<double>& t_grid,
                                           const ResidualOptions& opts) {
    const int n = params.modes.size();
    if (n > 3) throw ConfigError("rhs_residual: n_modes must be <= 3");
    if (fock_cutoff < 2 || fock_cutoff > 4)
        throw ConfigError("rhs_residual: fock_cutoff must be in [2, 4]");
    if (t_grid.empty()) throw ConfigError("rhs_residual: empty t_grid");

    FockSystem fs(n, fock_cutoff);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(fs.dim);
    psi[fs.boson_dim] = 1.0; // |e, vacuum>

    Eigen::VectorXcd s1(fs.dim), s2(fs.dim);
    auto rhs = [&](double t, const FlatState& s, FlatState& d) {
        Eigen::Map<const Eigen::VectorXcd> in(reinterpret_cast<const cxd*>(s.v.data()), fs.dim);
        Eigen::Map<Eigen::VectorXcd> out(reinterpret_cast<cxd*>(d.v.data()), fs.dim);
        Eigen::VectorXcd inc = in, res(fs.dim);
        fs.apply_h(params, drive::mu_field(params.pulse, t), inc, res, s1, s2);
        out = -core::I * res;
    };
    auto propagate = [&](Eigen::VectorXcd& state, double t_from, double t_to) {
        if (t_to <= t_from) return;
        FlatState y;
        y.v.resize(2 * fs.dim);
        Eigen::Map<Eigen::VectorXcd>(reinterpret_cast<cxd*>(y.v.data()), fs.dim) = state;
        IntegratorConfig cfg;
        cfg.rtol = opts.propagate_rtol;
        cfg.atol = opts.propagate_atol;
        cfg.t_end = t_to - t_from;
        cfg.dt_out = t_to - t_from;
        cfg.blowup_threshold = 1e3;
        auto shifted = [&](double t, const FlatState& s, FlatState& d) { rhs(t + t_from, s, d); };
        auto term = integrator::integrate_adaptive(shifted, y, 0.0, cfg,
                                                   [](double, const FlatState&) {});
        if (term.kind != TerminationKind::Completed)
            throw std::runtime_error("rhs_residual: propagation failed");
        state = Eigen::Map<Eigen::VectorXcd>(reinterpret_cast<cxd*>(y.v.data()), fs.dim);
    };

    const Eigen::Map<const Eigen::VectorXd> omega(params.modes.omega.data(), n);
    const Eigen::Map<const Eigen::VectorXd> g(params.modes.g.data(), n);
    const Eigen::ArrayXXd wdiff =
        omega.replicate(1, n).array() - omega.transpose().replicate(n, 1).array();
    const Eigen::ArrayXXd wsum =
        omega.replicate(1, n).array() + omega.transpose().replicate(n, 1).array();

    std::map<std::string, double> res;
    auto track = [&res](const std::string& key, double v) {
        auto [it, inserted] = res.try_emplace(key, v);
        if (!inserted) it->second = std::max(it->second, v);
    };

    double t_cur = 0.0;
    const double dlt = opts.fd_delta;
    for (double t : t_grid) {
        propagate(psi, t_cur, t - dlt);
        if (fs.top_layer_population(psi) > 1e-6)
            throw FockCutoffNotConverged("rhs_residual: top Fock layer population exceeds 1e-6");
        const ExactMoments m_minus = compute_moments(fs, params, psi, false);
        propagate(psi, t - dlt, t);
        const ExactMoments m0 = compute_moments(fs, params, psi, true);
        propagate(psi, t, t + dlt);
        const ExactMoments m_plus = compute_moments(fs, params, psi, false);
        t_cur = t + dlt;
        if (fs.top_layer_population(psi) > 1e-6)
            throw FockCutoffNotConverged("rhs_residual: top Fock layer population exceeds 1e-6");

        const double f = drive::mu_field(params.pulse, t);

        // evaluated right-hand sides with exact higher moments
        double dsx, dsy, dsz;
        Eigen::VectorXcd dalpha(n);
        core::singles(params.omega0, omega, g, f, m0.s[0], m0.s[1], m0.s[2], m0.alpha,
                      m0.S[moments::AxisY], m0.S[moments::AxisZ], dsx, dsy, dsz, dalpha);
        if (opts.drop_sigma_conjugate_partner) {
            // printed form: -2 sum g <a^dag sigma^z> (real part taken for comparison)
            dsy = params.omega0 * m0.s[0] + 2.0 * f * m0.s[2] -
                  2.0 * g.dot(m0.S[moments::AxisZ].real());
            dsz = -2.0 * f * m0.s[1] + 2.0 * g.dot(m0.S[moments::AxisY].real());
        }
        Eigen::VectorXcd dS[3], W[3];
        for (int i = 0; i < 3; ++i) dS[i].resize(n);
        for (int i : {moments::AxisY, moments::AxisZ}) W[i] = (m0.M[i] + m0.F[i]) * g.cast<cxd>();
        core::pair_sigma(params.omega0, omega, g, f, m0.s[1], m0.s[2], m0.S[0], m0.S[1], m0.S[2],
                         W[moments::AxisY], W[moments::AxisZ], dS[0], dS[1], dS[2]);
        Eigen::MatrixXcd dAe(n, n), dBe(n, n);
        core::pair_boson(wdiff, wsum, g, m0.S[0], m0.Ae, m0.Be, dAe, dBe);
        Eigen::MatrixXcd dM[3], dF[3];
        for (int i = 0; i < 3; ++i) {
            dM[i].resize(n, n);
            dF[i].resize(n, n);
        }
        core::triple_adas(params.omega0, wdiff, g, f, m0.alpha, m0.S[1], m0.S[2], m0.M[0],
                          m0.M[1], m0.M[2], m0.T[moments::AxisY], m0.T[moments::AxisZ], dM[0],
                          dM[1], dM[2]);
        core::triple_adds(params.omega0, wsum, g, f, m0.alpha, m0.S[1], m0.S[2], m0.F[0], m0.F[1],
                          m0.F[2], m0.U[moments::AxisY], m0.U[moments::AxisZ], dF[0], dF[1],
                          dF[2]);

        // centered finite differences of the exact moments
        const double inv2d = 1.0 / (2.0 * dlt);
        track("sigma_x", std::abs(dsx - (m_plus.s[0] - m_minus.s[0]) * inv2d));
        track("sigma_y", std::abs(dsy - (m_plus.s[1] - m_minus.s[1]) * inv2d));
        track("sigma_z", std::abs(dsz - (m_plus.s[2] - m_minus.s[2]) * inv2d));
        track("a", (dalpha - (m_plus.alpha - m_minus.alpha) * inv2d).cwiseAbs().maxCoeff());
        const char* ads_names[3] = {"ads_x", "ads_y", "ads_z"};
        const char* adas_names[3] = {"adas_x", "adas_y", "adas_z"};
        const char* adds_names[3] = {"adds_x", "adds_y", "adds_z"};
        for (int i = 0; i < 3; ++i) {
            track(ads_names[i],
                  (dS[i] - (m_plus.S[i] - m_minus.S[i]) * inv2d).cwiseAbs().maxCoeff());
            track(adas_names[i],
                  (dM[i] - (m_plus.M[i] - m_minus.M[i]) * inv2d).cwiseAbs().maxCoeff());
            track(adds_names[i],
                  (dF[i] - (m_plus.F[i] - m_minus.F[i]) * inv2d).cwiseAbs().maxCoeff());
        }
        track("ada", (dAe - (m_plus.Ae - m_minus.Ae) * inv2d).cwiseAbs().maxCoeff());
        track("add", (dBe - (m_plus.Be - m_minus.Be) * inv2d).cwiseAbs().maxCoeff());
        Eigen::MatrixXcd dslice(n, n);
        Eigen::MatrixXcd Ge_all(n, n), Ke_all(n, n);
        for (int l = 0; l < n; ++l) {
            core::triple_adda_slice(wsum, omega, g, l, m0.M[0], m0.F[0], m0.Ge[l], dslice);
            track("adda",
                  (dslice - (m_plus.Ge[l] - m_minus.Ge[l]) * inv2d).cwiseAbs().maxCoeff());
            core::triple_addd_slice(wsum, omega, g, l, m0.F[0], m0.Ke[l], dslice);
            track("addd",
                  (dslice - (m_plus.Ke[l] - m_minus.Ke[l]) * inv2d).cwiseAbs().maxCoeff());
        }
    }
    return res;
}

// --- analysis helpers -------------------------------------------------------

double fit_exponential_rate(const std::vector<double>& times, const std::vector<double>& pop,
                            double t_min, double t_max) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    long m = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_min || times[i] > t_max || pop[i] <= 0.0) continue;
        const double x = times[i], y = std::log(pop[i]);
        st += x;
        sy += y;
        stt += x * x;
        sty += x * y;
        ++m;
    }
    if (m < 2) throw std::runtime_error("fit_exponential_rate: too few points in window");
    const double denom = m * stt - st * st;
    return -(m * sty - st * sy) / denom;
}

std::vector<double> local_extrema_times(const std::vector<double>& times,
                                        const std::vector<double>& values) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const bool mx = values[i] > values[i - 1] && values[i] > values[i + 1];
        const bool mn = values[i] < values[i - 1] && values[i] < values[i + 1];
        if (mx || mn) out.push_back(times[i]);
    }
    return out;
}

} // namespace cqed::oracles
