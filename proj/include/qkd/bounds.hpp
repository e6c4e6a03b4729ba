// Concentration-based finite-size bounds: zero-photon and multi-photon
// caps, the key-round floor B_K, the phase-error ceiling B_imp, and the
// reusable Azuma sampling cap. All logarithms here are natural.
#pragma once

#include "qkd/config.hpp"

#include <cmath>
#include <limits>

namespace qkd {

inline double gamma0(double n, double eps0) {
    return std::sqrt(-std::log(eps0) / n);
}

// Cap on the number of rounds with more than M photons, from the observed
// multi-click count. Failure probability eps_pne^2.
inline double multi_photon_cap(double n_mc, double lambda_min, double eps_pne) {
    if (lambda_min <= 0) return std::numeric_limits<double>::infinity();
    double l = lambda_min;
    double ln_e = -std::log(eps_pne);
    return n_mc / l + std::sqrt(ln_e * (ln_e + 4.0 * l * n_mc)) / (2.0 * l * l) +
           2.0 * ln_e / (4.0 * l * l);
}

// Cap on zero-photon key rounds; the correlated protocol pays a factor 2
// on the finite-size term.
inline double zero_photon_cap(double n, double q_z, double eps0, bool correlated) {
    double g = gamma0(n, eps0);
    return n * (q_z + (correlated ? 2.0 : 1.0) * g);
}

// Floor on the single-photon key rounds: observed key rounds minus the
// zero-photon and multi-photon caps.
inline double b_k(double n_k, double n, double q_z, double lambda_min, double n_mc,
                  const EpsilonBudget& eps, bool correlated) {
    double mc_cap = multi_photon_cap(n_mc, lambda_min, eps.eps_pne);
    double zero_fs = (correlated ? 2.0 : 1.0) * std::sqrt(-std::log(eps.eps_0) * n);
    return n_k - n * q_z - mc_cap - zero_fs;
}

// Lemma-style sampling cap: with per-round operator inequality
// a E_b <= E_a + delta, n_b stays below this with failure eps_a^2 + eps_b^2.
inline double azuma_sampling_cap(double n_a, double n_total, double a, double delta,
                                 double eps_a, double eps_b) {
    double dev_a = std::sqrt(-2.0 * std::log(eps_a * eps_a) * n_total);
    double dev_b = std::sqrt(-2.0 * std::log(eps_b * eps_b) * n_total);
    return (n_a + dev_a + delta * n_total) / a + dev_b;
}

// Phase-error rate ceiling. N is the error-count bound (raw N_X^obs or
// B_max-1 of the X-disagreement counts), n_x the basis-matched count bound,
// b the key-round floor.
inline double b_imp(double n_errors, double n_x, double b, double a, double delta,
                    const EpsilonBudget& eps) {
    if (b <= 0) return std::numeric_limits<double>::infinity();
    double quad = n_x / (b * b) + 1.0 / b;
    return n_errors / (a * b) +
           std::sqrt(-2.0 * std::log(eps.eps_az_a * eps.eps_az_a) / a * quad) +
           (delta / a) * (n_x / b + 1.0) +
           std::sqrt(-2.0 * std::log(eps.eps_az_b * eps.eps_az_b) * quad);
}

}  // namespace qkd
