// Configuration value types for the key-rate toolkit: the partially
// characterized detector box, the protocol knobs, the epsilon budget and
// the channel model. All types are immutable-by-convention value types.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace qkd {

// Detector indices follow the fixed polarization encoding: the reflected
// (1-s) branch carries the Z basis and the transmitted s branch the X basis.
enum Detector : int { Z0 = 0, Z1 = 1, X0 = 2, X1 = 3 };

// The box of admissible detector parameters. Certificates must hold for
// every point inside it.
struct ParamRanges {
    std::array<double, 4> eta_lo{};  // efficiency interval, per detector
    std::array<double, 4> eta_hi{};
    std::array<double, 4> d_lo{};    // dark-count probability interval
    std::array<double, 4> d_hi{};
    double s_center = 0.0;           // X-branch beam-splitting ratio s*
    double s_halfwidth = 0.0;        // theta

    double s_lo() const { return s_center - s_halfwidth; }
    double s_hi() const { return s_center + s_halfwidth; }

    double eta_min() const {
        double v = 1.0;
        for (double e : eta_lo) v = std::min(v, e);
        return v;
    }
    double eta_max() const {
        double v = 0.0;
        for (double e : eta_hi) v = std::max(v, e);
        return v;
    }
    double d_min() const {
        double v = 1.0;
        for (double d : d_lo) v = std::min(v, d);
        return v;
    }
    double d_max() const {
        double v = 0.0;
        for (double d : d_hi) v = std::max(v, d);
        return v;
    }
};

// One fully specified detector realization inside a box.
struct ParamPoint {
    std::array<double, 4> eta{};
    std::array<double, 4> d{};
    double s = 0.0;
};

// The single-width shorthand: every efficiency in
// [eta0*(1-delta), eta0*(1+delta)], dark counts and s likewise.
inline ParamRanges make_delta_box(double eta0, double d0, double s0, double delta) {
    ParamRanges r;
    for (int i = 0; i < 4; ++i) {
        r.eta_lo[i] = eta0 * (1.0 - delta);
        r.eta_hi[i] = std::min(1.0, eta0 * (1.0 + delta));
        r.d_lo[i] = d0 * (1.0 - delta);
        r.d_hi[i] = d0 * (1.0 + delta);
    }
    r.s_center = s0;
    r.s_halfwidth = s0 * delta;
    return r;
}

inline ParamPoint center_point(const ParamRanges& r) {
    ParamPoint p;
    for (int i = 0; i < 4; ++i) {
        p.eta[i] = 0.5 * (r.eta_lo[i] + r.eta_hi[i]);
        p.d[i] = 0.5 * (r.d_lo[i] + r.d_hi[i]);
    }
    p.s = r.s_center;
    return p;
}

struct ProtocolConfig {
    double p_x_alice = 0.3;
    std::array<double, 3> mu{0.5, 0.1, 0.0};   // mu1 > mu2 + mu3, mu2 > mu3 >= 0
    std::array<double, 3> p_mu{1.0 / 3, 1.0 / 3, 1.0 / 3};
    double n_rounds = 1e12;                    // expected-count mode is real-valued
    int photon_cutoff = 1;                     // M; the delta pipeline needs M = 1
    int l_c = 0;                               // correlation length (rounds)
    double f_ec = 1.16;                        // error-correction inefficiency

    double p_z_alice() const { return 1.0 - p_x_alice; }
};

struct EpsilonBudget {
    double eps_az_a = 1e-12;
    double eps_az_b = 1e-12;
    double eps_pne = 1e-12;
    double eps_0 = 1e-12;
    double eps_at_d = 1e-12;
    double eps_ev = 1e-12;
    double eps_pa = 1e-12;
};

// eps_at^2 = eps_az_a^2 + eps_az_b^2 + eps_pne^2 + eps_0^2 + 9 eps_at_d^2;
// the protocol is (2 eps_at + eps_pa + eps_ev)-secure.
inline std::pair<double, double> total_security(const EpsilonBudget& e) {
    double at2 = e.eps_az_a * e.eps_az_a + e.eps_az_b * e.eps_az_b +
                 e.eps_pne * e.eps_pne + e.eps_0 * e.eps_0 +
                 9.0 * e.eps_at_d * e.eps_at_d;
    double at = std::sqrt(at2);
    return {at, 2.0 * at + e.eps_pa + e.eps_ev};
}

struct ChannelConfig {
    double loss_db = 0.0;
    double misalignment_deg = 0.0;
    ParamPoint true_point;   // device realization used by the simulator

    double transmittance() const { return std::pow(10.0, -loss_db / 10.0); }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

inline ValidationReport validate_config(const ParamRanges& r,
                                        const ProtocolConfig& proto,
                                        const EpsilonBudget& eps) {
    ValidationReport rep;
    auto bad = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    for (int i = 0; i < 4; ++i) {
        if (!(0.0 <= r.eta_lo[i] && r.eta_lo[i] <= r.eta_hi[i] && r.eta_hi[i] <= 1.0))
            bad("/ranges/eta[" + std::to_string(i) + "]: need 0 <= lo <= hi <= 1");
        if (!(0.0 <= r.d_lo[i] && r.d_lo[i] <= r.d_hi[i] && r.d_hi[i] < 1.0))
            bad("/ranges/d[" + std::to_string(i) + "]: need 0 <= lo <= hi < 1");
    }
    if (!(r.s_lo() > 0.0 && r.s_hi() < 1.0))
        bad("/ranges/s: s interval leaves (0,1)");

    if (!(proto.p_x_alice > 0.0 && proto.p_x_alice < 1.0))
        bad("/protocol/p_x_alice: need 0 < p < 1");
    if (!(proto.mu[0] > proto.mu[1] + proto.mu[2]))
        bad("/protocol/mu: mu1 > mu2 + mu3 violated");
    if (!(proto.mu[1] > proto.mu[2]))
        bad("/protocol/mu: mu2 > mu3 violated");
    if (!(proto.mu[2] >= 0.0))
        bad("/protocol/mu: mu3 >= 0 violated");
    double psum = proto.p_mu[0] + proto.p_mu[1] + proto.p_mu[2];
    if (std::abs(psum - 1.0) > 1e-12)
        bad("/protocol/p_mu: probabilities must sum to 1");
    if (!(proto.n_rounds >= 1.0)) bad("/protocol/n_rounds: need >= 1");
    if (proto.photon_cutoff < 1) bad("/protocol/photon_cutoff: need M >= 1");
    if (proto.l_c < 0) bad("/protocol/l_c: need >= 0");
    if (!(proto.f_ec >= 1.0)) bad("/protocol/f_ec: need >= 1");

    auto check_eps = [&bad](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0))
            bad(std::string("/epsilons/") + name + ": need 0 < eps < 1");
    };
    check_eps(eps.eps_az_a, "eps_az_a");
    check_eps(eps.eps_az_b, "eps_az_b");
    check_eps(eps.eps_pne, "eps_pne");
    check_eps(eps.eps_0, "eps_0");
    check_eps(eps.eps_at_d, "eps_at_d");
    check_eps(eps.eps_ev, "eps_ev");
    check_eps(eps.eps_pa, "eps_pa");
    return rep;
}

}  // namespace qkd
