// Closed-form expected outcome statistics for a coherent-pulse source, a
// lossy misaligned channel and the passive detection setup. A coherent
// pulse splits into independent coherent states on the four detector arms,
// so click patterns are exactly independent Bernoulli events.
#pragma once

#include "qkd/config.hpp"
#include "qkd/decoy.hpp"

#include <array>
#include <cmath>

namespace qkd {

enum Outcome : int { OutZ0 = 0, OutZ1 = 1, OutX0 = 2, OutX1 = 3, OutMC = 4, OutNC = 5 };

// Squared overlaps of the (misaligned) transmitted polarization with the
// four analyzer modes, for Alice basis b (0 = Z, 1 = X) and bit x.
inline std::array<double, 4> arm_overlaps(int basis, int bit, double align_rad) {
    // State after rotation by align_rad: R(a)|phi>.
    double c = std::cos(align_rad), s = std::sin(align_rad);
    double a0, a1;  // Z-basis amplitudes of the sent state
    if (basis == 0) {
        a0 = bit == 0 ? c : -s;
        a1 = bit == 0 ? s : c;
    } else {
        double r = 1.0 / std::sqrt(2.0);
        a0 = bit == 0 ? r * (c - s) : r * (c + s);
        a1 = bit == 0 ? r * (s + c) : r * (s - c);
    }
    double plus = 0.5 * (a0 + a1) * (a0 + a1);
    double minus = 0.5 * (a0 - a1) * (a0 - a1);
    return {a0 * a0, a1 * a1, plus, minus};  // indexed by Detector
}

struct OutcomeDistribution {
    // p[basis][bit][intensity][outcome]
    double p[2][2][3][6] = {};
    double p_no_click = 0;  // marginal over Alice's choices
};

inline OutcomeDistribution expected_frequencies(const ParamPoint& point,
                                                const ChannelConfig& ch,
                                                const ProtocolConfig& proto) {
    OutcomeDistribution dist;
    double eta_ch = ch.transmittance();
    double align = ch.misalignment_deg * M_PI / 180.0;
    double branch[4] = {(1 - point.s) * point.eta[Z0], (1 - point.s) * point.eta[Z1],
                        point.s * point.eta[X0], point.s * point.eta[X1]};

    for (int basis = 0; basis < 2; ++basis)
        for (int bit = 0; bit < 2; ++bit) {
            auto ov = arm_overlaps(basis, bit, align);
            for (int k = 0; k < 3; ++k) {
                double pulse = proto.mu[k] * eta_ch;
                double pc[4];  // click probability per detector
                for (int m = 0; m < 4; ++m) {
                    double nu = pulse * branch[m] * ov[m];
                    pc[m] = 1.0 - (1.0 - point.d[m]) * std::exp(-nu);
                }
                double nc = (1 - pc[0]) * (1 - pc[1]) * (1 - pc[2]) * (1 - pc[3]);
                double singles = 0;
                for (int m = 0; m < 4; ++m) {
                    double one = pc[m];
                    for (int m2 = 0; m2 < 4; ++m2)
                        if (m2 != m) one *= (1 - pc[m2]);
                    dist.p[basis][bit][k][m] = one;
                    singles += one;
                }
                dist.p[basis][bit][k][OutNC] = nc;
                dist.p[basis][bit][k][OutMC] = 1.0 - nc - singles;

                double p_alice = (basis == 1 ? proto.p_x_alice : proto.p_z_alice()) *
                                 0.5 * proto.p_mu[k];
                dist.p_no_click += p_alice * nc;
            }
        }
    return dist;
}

// Sift the expected outcome distribution into the protocol's classical
// record. Correlated mode scales every count by (p_no_click)^l_c, the
// survival probability of the keep filter.
inline Observations observations_from_frequencies(const OutcomeDistribution& dist,
                                                  const ProtocolConfig& proto,
                                                  bool correlated) {
    Observations o;
    double n = proto.n_rounds;
    double scale = correlated ? std::pow(dist.p_no_click, proto.l_c) : 1.0;
    double err_total = 0;

    for (int k = 0; k < 3; ++k) {
        double w_x = n * proto.p_mu[k] * proto.p_x_alice * 0.5 * scale;
        double w_z = n * proto.p_mu[k] * proto.p_z_alice() * 0.5 * scale;
        o.n_x_mu[k] = w_x * (dist.p[1][0][k][OutX0] + dist.p[1][0][k][OutX1] +
                             dist.p[1][1][k][OutX0] + dist.p[1][1][k][OutX1]);
        o.n_xneq_mu[k] = w_x * (dist.p[1][0][k][OutX1] + dist.p[1][1][k][OutX0]);
        o.n_k_mu[k] = w_z * (dist.p[0][0][k][OutZ0] + dist.p[0][0][k][OutZ1] +
                             dist.p[0][1][k][OutZ0] + dist.p[0][1][k][OutZ1]);
        err_total += w_z * (dist.p[0][0][k][OutZ1] + dist.p[0][1][k][OutZ0]);

        for (int basis = 0; basis < 2; ++basis) {
            double w = n * proto.p_mu[k] * 0.5 * scale *
                       (basis == 1 ? proto.p_x_alice : proto.p_z_alice());
            o.n_mc += w * (dist.p[basis][0][k][OutMC] + dist.p[basis][1][k][OutMC]);
        }
    }
    double nk = o.n_k_total();
    o.e_z_obs = nk > 0 ? err_total / nk : 0.0;
    o.n_rounds = n;
    return o;
}

}  // namespace qkd
