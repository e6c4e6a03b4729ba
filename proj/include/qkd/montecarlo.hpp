// Round-by-round Monte Carlo sampler. Besides the protocol's observable
// record it keeps hidden ground truth (photon-number classes, counterfactual
// phase errors, Alice-side single-photon counts) so every statistical bound
// can be checked against the truth it constrains.
#pragma once

#include "qkd/channel.hpp"
#include "qkd/config.hpp"
#include "qkd/decoy.hpp"
#include "qkd/povm.hpp"

#include <array>
#include <cstdint>
#include <random>

namespace qkd {

struct GroundTruth {
    // Classification is by photons entering Bob (post-channel survival),
    // tallied over kept rounds.
    std::int64_t zero_photon_key_rounds = 0;
    std::int64_t single_photon_key_rounds = 0;
    std::int64_t single_photon_x_rounds = 0;   // basis-matched X single clicks
    std::int64_t single_photon_x_errors = 0;
    std::int64_t single_photon_phase_errors = 0;  // counterfactual, key rounds
    std::int64_t multi_photon_rounds = 0;         // > M photons, kept
    std::int64_t multi_photon_clicked = 0;        // of those, any click
    std::int64_t alice_single_key_rounds = 0;     // source sent exactly 1 photon
    std::int64_t alice_single_x_rounds = 0;
    std::int64_t alice_single_xneq_rounds = 0;
    std::int64_t kept_rounds = 0;
};

namespace mcdetail {

// Conditional phase-error probability for a key round carrying exactly one
// photon into Bob: complete the two-step measurement after the Z-branch
// outcome and read off the disagreement weight.
inline std::array<double, 2> phase_error_table(const ParamPoint& p,
                                               const ChannelConfig& ch,
                                               double p_x_alice) {
    JointOps1 j = build_joint_ops_1(p, p_x_alice);
    Mat sqrt_fsc = psd_sqrt(j.f_sc);
    Mat sqrt_ftz = psd_sqrt(j.f_tilde_z);
    double align = ch.misalignment_deg * M_PI / 180.0;

    std::array<double, 2> q{};
    for (int bit = 0; bit < 2; ++bit) {
        Vec alice = Vec::Zero(2);
        alice(bit) = 1.0;
        Vec bob(2);
        double c = std::cos(align), s = std::sin(align);
        if (bit == 0) {
            bob << c, s;
        } else {
            bob << -s, c;
        }
        Mat rho = kron2(alice * alice.adjoint(), bob * bob.adjoint());
        Mat sigma = sqrt_fsc * rho * sqrt_fsc;
        Mat tau_z = sqrt_ftz * sigma * sqrt_ftz;
        double w = tau_z.trace().real();
        q[bit] = w > 0 ? (j.g_tilde_x_neq * tau_z).trace().real() / w : 0.0;
    }
    return q;
}

}  // namespace mcdetail

inline std::pair<Observations, GroundTruth> monte_carlo_run(const ParamPoint& point,
                                                            const ChannelConfig& ch,
                                                            const ProtocolConfig& proto,
                                                            std::int64_t n,
                                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::poisson_distribution<int> poisson[3] = {
        std::poisson_distribution<int>(proto.mu[0]),
        std::poisson_distribution<int>(proto.mu[1]),
        std::poisson_distribution<int>(proto.mu[2])};

    double eta_ch = ch.transmittance();
    double align = ch.misalignment_deg * M_PI / 180.0;
    double branch[4] = {(1 - point.s) * point.eta[Z0], (1 - point.s) * point.eta[Z1],
                        point.s * point.eta[X0], point.s * point.eta[X1]};

    // Per (basis, bit): cumulative routing probabilities over the four
    // detectors; the remainder is loss inside the setup.
    double route[2][2][4];
    for (int basis = 0; basis < 2; ++basis)
        for (int bit = 0; bit < 2; ++bit) {
            auto ov = arm_overlaps(basis, bit, align);
            double acc = 0;
            for (int m = 0; m < 4; ++m) {
                acc += branch[m] * ov[m];
                route[basis][bit][m] = acc;
            }
        }

    double p_any_dark =
        1.0 - (1 - point.d[0]) * (1 - point.d[1]) * (1 - point.d[2]) * (1 - point.d[3]);
    auto q_phase = mcdetail::phase_error_table(point, ch, proto.p_x_alice);

    Observations o;
    GroundTruth gt;
    int no_click_streak = proto.l_c;  // start memory-free

    for (std::int64_t round = 0; round < n; ++round) {
        double u = unif(rng);
        int k = u < proto.p_mu[0] ? 0 : (u < proto.p_mu[0] + proto.p_mu[1] ? 1 : 2);
        int basis = unif(rng) < proto.p_x_alice ? 1 : 0;
        int bit = unif(rng) < 0.5 ? 1 : 0;

        int m_src = poisson[k](rng);
        int m_bob = 0;
        for (int i = 0; i < m_src; ++i)
            if (unif(rng) < eta_ch) ++m_bob;

        bool clicked[4] = {false, false, false, false};
        for (int i = 0; i < m_bob; ++i) {
            double r = unif(rng);
            for (int m = 0; m < 4; ++m) {
                if (r < route[basis][bit][m]) {
                    clicked[m] = true;
                    break;
                }
            }
        }
        if (unif(rng) < p_any_dark) {
            // Rare path: resolve the actual dark-count pattern, conditioned
            // on at least one dark count having fired.
            bool any = false;
            while (!any) {
                for (int m = 0; m < 4; ++m) {
                    if (unif(rng) < point.d[m]) {
                        clicked[m] = true;
                        any = true;
                    }
                }
            }
        }

        int nclicks = clicked[0] + clicked[1] + clicked[2] + clicked[3];
        int outcome;
        if (nclicks == 0)
            outcome = OutNC;
        else if (nclicks > 1)
            outcome = OutMC;
        else
            outcome = clicked[0] ? OutZ0 : clicked[1] ? OutZ1 : clicked[2] ? OutX0 : OutX1;

        bool kept = proto.l_c == 0 || no_click_streak >= proto.l_c;
        no_click_streak = outcome == OutNC ? no_click_streak + 1 : 0;
        if (!kept) continue;
        ++gt.kept_rounds;

        bool key_round = basis == 0 && (outcome == OutZ0 || outcome == OutZ1);
        bool x_round = basis == 1 && (outcome == OutX0 || outcome == OutX1);

        if (key_round) {
            o.n_k_mu[k] += 1;
            if (outcome != (bit == 0 ? OutZ0 : OutZ1)) o.e_z_obs += 1;  // raw errors
            if (m_src == 1) ++gt.alice_single_key_rounds;
        }
        if (x_round) {
            o.n_x_mu[k] += 1;
            bool err = outcome != (bit == 0 ? OutX0 : OutX1);
            if (err) o.n_xneq_mu[k] += 1;
            if (m_src == 1) {
                ++gt.alice_single_x_rounds;
                if (err) ++gt.alice_single_xneq_rounds;
            }
        }
        if (outcome == OutMC) o.n_mc += 1;

        if (m_bob == 0) {
            if (key_round) ++gt.zero_photon_key_rounds;
        } else if (m_bob <= proto.photon_cutoff) {
            if (m_bob == 1) {
                if (key_round) {
                    ++gt.single_photon_key_rounds;
                    if (unif(rng) < q_phase[bit]) ++gt.single_photon_phase_errors;
                }
                if (x_round) {
                    ++gt.single_photon_x_rounds;
                    if (outcome != (bit == 0 ? OutX0 : OutX1))
                        ++gt.single_photon_x_errors;
                }
            }
        } else {
            ++gt.multi_photon_rounds;
            if (outcome != OutNC) ++gt.multi_photon_clicked;
        }
    }

    double nk = o.n_k_total();
    o.e_z_obs = nk > 0 ? o.e_z_obs / nk : 0.0;
    o.n_rounds = static_cast<double>(gt.kept_rounds);
    return {o, gt};
}

}  // namespace qkd
