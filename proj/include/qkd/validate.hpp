// Monte Carlo certification harness: runs repeated sampled protocols and
// checks every concentration bound and the decoy sandwich against the
// hidden ground truth. Any violation of a certified bound is a defect.
#pragma once

#include "qkd/bounds.hpp"
#include "qkd/keyrate.hpp"
#include "qkd/mismatch.hpp"
#include "qkd/montecarlo.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace qkd {

struct ValidationSummary {
    std::int64_t trials = 0;
    std::map<std::string, std::int64_t> violations;  // per bound name
    std::int64_t total_violations() const {
        std::int64_t t = 0;
        for (auto& [k, v] : violations) t += v;
        return t;
    }
};

// Injection hook for negative controls: scales one certificate field.
inline void apply_injection(MismatchCertificate& cert, const std::string& field,
                            double factor) {
    if (field == "lambda_min")
        cert.lambda_min *= factor;
    else if (field == "delta")
        cert.delta *= factor;
    else if (field == "q_z")
        cert.q_z *= factor;
    else if (field == "a_lo")
        cert.a_lo *= factor;
    else
        throw std::invalid_argument("unknown injection field: " + field);
}

inline ValidationSummary run_validation(const FullConfig& cfg,
                                        const MismatchCertificate& cert,
                                        std::int64_t trials, std::int64_t n,
                                        std::uint64_t seed, bool correlated) {
    ValidationSummary sum;
    sum.trials = trials;
    auto& v = sum.violations;
    v["key_round_floor"] = 0;
    v["multi_photon_cap"] = 0;
    v["zero_photon_cap"] = 0;
    v["azuma_phase_cap"] = 0;
    v["decoy_sandwich"] = 0;

    for (std::int64_t t = 0; t < trials; ++t) {
        ProtocolConfig proto = cfg.proto;
        proto.n_rounds = static_cast<double>(n);
        auto [o, gt] = monte_carlo_run(cfg.channel.true_point, cfg.channel, proto, n,
                                       seed + static_cast<std::uint64_t>(t));
        double nn = static_cast<double>(n);

        // (i) floor on single-photon key rounds, from observed counts.
        double floor_k = b_k(o.n_k_total(), nn, cert.q_z, cert.lambda_min, o.n_mc,
                             cfg.eps, correlated);
        if (!(static_cast<double>(gt.single_photon_key_rounds) > floor_k))
            ++v["key_round_floor"];

        // (ii) cap on rounds with more than M photons entering Bob.
        double cap_mc = multi_photon_cap(o.n_mc, cert.lambda_min, cfg.eps.eps_pne);
        double multi = static_cast<double>(correlated ? gt.multi_photon_clicked
                                                      : gt.multi_photon_rounds);
        if (!(multi <= cap_mc)) ++v["multi_photon_cap"];

        // (iii) cap on zero-photon key rounds.
        double cap_0 = zero_photon_cap(nn, cert.q_z, cfg.eps.eps_0, correlated);
        if (!(static_cast<double>(gt.zero_photon_key_rounds) < cap_0))
            ++v["zero_photon_cap"];

        // (iv) phase errors among single-photon rounds vs the sampling cap
        // with the certified (a, delta).
        double n_total = static_cast<double>(gt.single_photon_x_rounds +
                                             gt.single_photon_key_rounds);
        double cap_az = azuma_sampling_cap(
            static_cast<double>(gt.single_photon_x_errors), n_total, cert.a_lo,
            cert.delta, cfg.eps.eps_az_a, cfg.eps.eps_az_b);
        if (!(static_cast<double>(gt.single_photon_phase_errors) <= cap_az))
            ++v["azuma_phase_cap"];

        // Decoy sandwich on Alice-side single-photon truth.
        DecoyBounds db = decoy_bounds(o, proto, cfg.eps.eps_at_d);
        if (!db.vacuous) {
            bool ok = db.b_min1_k <= static_cast<double>(gt.alice_single_key_rounds) &&
                      db.b_max1_x >= static_cast<double>(gt.alice_single_x_rounds) &&
                      db.b_max1_xneq >= static_cast<double>(gt.alice_single_xneq_rounds);
            if (!ok) ++v["decoy_sandwich"];
        }
    }
    return sum;
}

}  // namespace qkd
