// Decoy-state estimation: bounds on the counts associated with Alice
// sending single photons, from the per-intensity observed counts.
// Three intensities mu1 > mu2 + mu3, mu2 > mu3 >= 0 are required.
#pragma once

#include "qkd/config.hpp"

#include <array>
#include <cmath>

namespace qkd {

// The protocol's classical record. In expected-count mode the "counts" are
// real-valued frequencies times n; the Monte Carlo mode fills in integers.
struct Observations {
    std::array<double, 3> n_x_mu{};     // X-basis matched single clicks
    std::array<double, 3> n_k_mu{};     // Z-basis (key) matched single clicks
    std::array<double, 3> n_xneq_mu{};  // X-basis disagreements
    double n_mc = 0;                    // multi-click outcomes, all rounds
    double e_z_obs = 0;                 // Z-basis error rate among key rounds
    double n_rounds = 0;                // kept rounds in the correlated protocol

    double n_x_total() const { return n_x_mu[0] + n_x_mu[1] + n_x_mu[2]; }
    double n_k_total() const { return n_k_mu[0] + n_k_mu[1] + n_k_mu[2]; }
    double n_xneq_total() const { return n_xneq_mu[0] + n_xneq_mu[1] + n_xneq_mu[2]; }
};

struct DecoyBounds {
    double b_max1_xneq = 0;
    double b_max1_x = 0;
    double b_min1_k = 0;
    double tau0 = 0, tau1 = 0;
    bool vacuous = false;
};

// tau_m: probability that Alice sends m photons, Poisson mixture.
inline double tau(int m, const ProtocolConfig& proto) {
    double t = 0;
    for (int k = 0; k < 3; ++k) {
        double mu = proto.mu[k];
        t += proto.p_mu[k] * std::exp(-mu) * std::pow(mu, m) / std::tgamma(m + 1.0);
    }
    return t;
}

// n^{+/-}_{O,mu_k} = (e^{mu_k}/p_{mu_k}) (n_{O,mu_k} +/- sqrt((n_O/2) ln(2/eps^2))).
inline double n_pm(const std::array<double, 3>& counts, const ProtocolConfig& proto,
                   int k, int sign, double eps_at_d) {
    double n_o = counts[0] + counts[1] + counts[2];
    double dev = std::sqrt(0.5 * n_o * std::log(2.0 / (eps_at_d * eps_at_d)));
    return std::exp(proto.mu[k]) / proto.p_mu[k] * (counts[k] + sign * dev);
}

namespace decoy_detail {

inline double b_min0(const std::array<double, 3>& c, const ProtocolConfig& proto,
                     double eps, double tau0) {
    double mu2 = proto.mu[1], mu3 = proto.mu[2];
    return tau0 * (mu2 * n_pm(c, proto, 2, -1, eps) - mu3 * n_pm(c, proto, 1, +1, eps)) /
           (mu2 - mu3);
}

inline double b_min1(const std::array<double, 3>& c, const ProtocolConfig& proto,
                     double eps, double tau0, double tau1) {
    double mu1 = proto.mu[0], mu2 = proto.mu[1], mu3 = proto.mu[2];
    double den = mu1 * (mu2 - mu3) - mu2 * mu2 + mu3 * mu3;
    double pref = mu1 * tau1 / den;
    return pref * (n_pm(c, proto, 1, -1, eps) - n_pm(c, proto, 2, +1, eps) -
                   (mu2 * mu2 - mu3 * mu3) / (mu1 * mu1) *
                       (n_pm(c, proto, 0, +1, eps) - b_min0(c, proto, eps, tau0) / tau0));
}

inline double b_max1(const std::array<double, 3>& c, const ProtocolConfig& proto,
                     double eps, double tau1) {
    double mu2 = proto.mu[1], mu3 = proto.mu[2];
    return tau1 * (n_pm(c, proto, 1, +1, eps) - n_pm(c, proto, 2, -1, eps)) / (mu2 - mu3);
}

}  // namespace decoy_detail

// Total failure probability of the three estimates together: 9 eps_at_d^2.
inline DecoyBounds decoy_bounds(const Observations& o, const ProtocolConfig& proto,
                                double eps_at_d) {
    DecoyBounds b;
    b.tau0 = tau(0, proto);
    b.tau1 = tau(1, proto);
    double mu1 = proto.mu[0], mu2 = proto.mu[1], mu3 = proto.mu[2];
    if (mu1 * (mu2 - mu3) - mu2 * mu2 + mu3 * mu3 <= 0 || mu2 <= mu3) {
        b.vacuous = true;
        return b;
    }
    b.b_min1_k = decoy_detail::b_min1(o.n_k_mu, proto, eps_at_d, b.tau0, b.tau1);
    b.b_max1_x = decoy_detail::b_max1(o.n_x_mu, proto, eps_at_d, b.tau1);
    b.b_max1_xneq = decoy_detail::b_max1(o.n_xneq_mu, proto, eps_at_d, b.tau1);
    return b;
}

}  // namespace qkd
