#include "cqed/moments.hpp"

#include <algorithm>
#include <cmath>

#include "cqed/errors.hpp"

namespace cqed::moments {

const char* order_name(Order o) {
    switch (o) {
    case Order::MF: return "mf";
    case Order::Two: return "2";
    case Order::TwoPlusOneA: return "2+1a";
    case Order::TwoPlusOneB: return "2+1b";
    case Order::Three: return "3";
    }
    return "?";
}

std::size_t MomentState::flat_size(Order order, int n_modes) {
    const std::size_t n = static_cast<std::size_t>(n_modes);
    std::size_t c = n + 3 * n; // a + ads
    if (has_pairs(order)) c += 2 * n * n;
    if (has_adas_z(order)) c += n * n;
    if (has_third(order)) c += 5 * n * n + 2 * n * n * n;
    return 3 + 2 * c;
}

MomentState::MomentState(Order order, int n_modes) : order_(order), n_(n_modes) {
    std::ptrdiff_t off = 3;
    const std::ptrdiff_t n = n_;
    auto take = [&off](std::ptrdiff_t len) {
        std::ptrdiff_t o = off;
        off += 2 * len;
        return o;
    };
    off_a_ = take(n);
    off_ads_ = take(3 * n);
    if (has_pairs(order)) {
        off_ada_ = take(n * n);
        off_add_ = take(n * n);
    }
    if (has_adas_z(order)) off_adas_z_ = take(n * n);
    if (has_third(order)) {
        off_adas_xy_ = take(2 * n * n);
        off_adds_ = take(3 * n * n);
        off_adda_ = take(n * n * n);
        off_addd_ = take(n * n * n);
    }
    buf_ = Eigen::VectorXd::Zero(off);
}

MomentState init(InitKind kind, const spectral::DiscreteModes& modes, Order order) {
    MomentState s(order, modes.size());
    s.sz() = (kind == InitKind::ExcitedVacuum) ? 1.0 : -1.0;
    return s;
}

double population(const MomentState& s) { return 0.5 * (1.0 + s.sz()); }

double photon_total(const MomentState& s) {
    double total = s.a().squaredNorm();
    if (has_pairs(s.order())) total += s.ada().diagonal().real().sum();
    return total;
}

std::vector<double> photon_per_mode(const MomentState& s) {
    const int n = s.n_modes();
    std::vector<double> out(n);
    auto a = s.a();
    for (int k = 0; k < n; ++k) {
        out[k] = std::norm(a[k]);
        if (has_pairs(s.order())) out[k] += s.ada()(k, k).real();
    }
    return out;
}

Observables observables(const MomentState& s, bool per_mode) {
    Observables o;
    o.sx = s.sx();
    o.sy = s.sy();
    o.sz = s.sz();
    o.population = population(s);
    o.photon_total = photon_total(s);
    if (per_mode) o.per_mode = photon_per_mode(s);
    return o;
}

std::vector<cxd> displaced_field(const MomentState& s, std::span<const cxd> pulse_alphas) {
    if (static_cast<int>(pulse_alphas.size()) != s.n_modes())
        throw ShapeMismatch("displaced_field: alpha length != number of modes");
    std::vector<cxd> out(pulse_alphas.size());
    auto a = s.a();
    for (std::size_t k = 0; k < pulse_alphas.size(); ++k) out[k] = a[k] + pulse_alphas[k];
    return out;
}

double symmetry_residual(const MomentState& s) {
    double r = 0.0;
    auto herm = [&r](const auto& m) {
        r = std::max(r, (m - m.adjoint().eval()).cwiseAbs().maxCoeff());
    };
    auto sym = [&r](const auto& m) {
        r = std::max(r, (m - m.transpose().eval()).cwiseAbs().maxCoeff());
    };
    if (has_pairs(s.order())) {
        herm(s.ada());
        sym(s.add());
    }
    if (has_adas_z(s.order())) herm(s.adas(AxisZ));
    if (has_third(s.order())) {
        herm(s.adas(AxisX));
        herm(s.adas(AxisY));
        for (int i = 0; i < 3; ++i) sym(s.adds(i));
        const int n = s.n_modes();
        auto G = s.adda();
        auto K = s.addd();
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
                for (int nn = 0; nn < m; ++nn)
                    r = std::max(r, std::abs(G(nn, m, l) - G(m, nn, l)));
        // full symmetry of addd: check the two generating transpositions
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
                for (int nn = 0; nn < n; ++nn) {
                    r = std::max(r, std::abs(K(nn, m, l) - K(m, nn, l)));
                    r = std::max(r, std::abs(K(nn, m, l) - K(nn, l, m)));
                }
    }
    return r;
}

// --- generic cumulant machinery ------------------------------------------

const std::vector<std::vector<std::vector<int>>>& partitions(int k) {
    static const auto table = [] {
        std::vector<std::vector<std::vector<std::vector<int>>>> t(5);
        for (int n = 0; n <= 4; ++n) {
            std::vector<std::vector<std::vector<int>>> parts;
            std::vector<std::vector<int>> cur;
            auto rec = [&](auto&& self, int next) -> void {
                if (next == n) {
                    parts.push_back(cur);
                    return;
                }
                // index access: deeper calls append/remove blocks and may
                // reallocate cur
                for (std::size_t b = 0; b < cur.size(); ++b) {
                    cur[b].push_back(next);
                    self(self, next + 1);
                    cur[b].pop_back();
                }
                cur.push_back({next});
                self(self, next + 1);
                cur.pop_back();
            };
            rec(rec, 0);
            t[n] = std::move(parts);
        }
        return t;
    }();
    if (k < 0 || k > 4) throw ConfigError("partitions: only orders up to 4 are supported");
    return table[k];
}

cxd cumulant_lookup(const MomentState& s, std::span<const Op> ops) {
    int ndag = 0, nann = 0, nsig = 0;
    int dag[3] = {0, 0, 0}, ann[3] = {0, 0, 0}, axis = -1;
    for (const Op& op : ops) {
        switch (op.kind) {
        case OpKind::ADag:
            if (ndag < 3) dag[ndag] = op.index;
            ++ndag;
            break;
        case OpKind::A:
            if (nann < 3) ann[nann] = op.index;
            ++nann;
            break;
        case OpKind::Sigma:
            axis = op.index;
            ++nsig;
            break;
        }
        if (op.kind != OpKind::Sigma && (op.index < 0 || op.index >= s.n_modes()))
            throw OutOfRange("cumulant_lookup: mode index out of range");
    }
    const int total = ndag + nann + nsig;
    if (nsig > 1 || total == 0 || total > 4)
        throw ConfigError("cumulant_lookup: unsupported operator pattern");
    if (total >= 4) return 0.0; // 4th-order cumulants are never stored

    const Order o = s.order();
    if (total == 1) {
        if (nsig) return s.pauli(axis);
        return ndag ? std::conj(s.a()[dag[0]]) : s.a()[ann[0]];
    }
    if (total == 2) {
        if (!has_pairs(o)) return 0.0;
        if (nsig) {
            return ndag ? s.ads(axis)[dag[0]] : std::conj(s.ads(axis)[ann[0]]);
        }
        if (ndag == 2) return s.add()(dag[0], dag[1]);
        if (nann == 2) return std::conj(s.add()(ann[0], ann[1]));
        return s.ada()(dag[0], ann[0]);
    }
    // total == 3
    if (nsig) {
        if (ndag == 1 && nann == 1) {
            if (axis == AxisZ ? !has_adas_z(o) : !has_third(o)) return 0.0;
            return s.adas(axis)(dag[0], ann[0]);
        }
        if (!has_third(o)) return 0.0;
        if (ndag == 2) return s.adds(axis)(dag[0], dag[1]);
        return std::conj(s.adds(axis)(ann[0], ann[1]));
    }
    if (!has_third(o)) return 0.0;
    if (ndag == 3) return s.addd()(dag[0], dag[1], dag[2]);
    if (nann == 3) return std::conj(s.addd()(ann[0], ann[1], ann[2]));
    if (ndag == 2) return s.adda()(dag[0], dag[1], ann[0]);
    // one dagger, two annihilations: <a_n^dag a_p a_q>_c = conj(<a_p^dag a_q^dag a_n>_c)
    return std::conj(s.adda()(ann[0], ann[1], dag[0]));
}

cxd expand_cumulants(const MomentState& s, std::span<const Op> ops) {
    const int k = static_cast<int>(ops.size());
    if (k == 0 || k > 4) throw ConfigError("expand_cumulants: unsupported operator count");
    cxd sum = 0.0;
    std::vector<Op> block;
    for (const auto& part : partitions(k)) {
        cxd prod = 1.0;
        for (const auto& idx : part) {
            block.clear();
            for (int i : idx) block.push_back(ops[i]);
            prod *= cumulant_lookup(s, block);
            if (prod == 0.0) break;
        }
        sum += prod;
    }
    return sum;
}

} // namespace cqed::moments
