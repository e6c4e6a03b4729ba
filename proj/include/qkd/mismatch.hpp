// Basis-mismatch certificates over a detector box: the a interval, the
// closed-form delta upper bound, the exact delta at a point (for testing),
// and the vacuum Z-click weight bound q_Z. Together with lambda_min these
// are the four constants feeding every statistical bound.
#pragma once

#include "qkd/config.hpp"
#include "qkd/lambda_min.hpp"
#include "qkd/povm.hpp"

#include <limits>
#include <map>
#include <string>

namespace qkd {

struct MismatchCertificate {
    double a_lo = 0, a_hi = 0;
    double delta = 0;
    double q_z = 0;
    double lambda_min = 0;
    bool lambda_valid = false;
    std::map<std::string, double> diagnostics;
};

inline std::pair<double, double> choose_a(const ParamRanges& r, double p_x_alice) {
    double p_z = 1.0 - p_x_alice;
    double a_lo = p_x_alice * r.s_lo() / (p_z * (1.0 - r.s_lo()));
    double a_hi = p_x_alice * r.s_hi() / (p_z * (1.0 - r.s_hi()));
    return {a_lo, a_hi};
}

// The paper's heuristic choice at a concrete point.
inline double heuristic_a(const ParamPoint& p, double p_x_alice) {
    return p_x_alice * p.s / ((1.0 - p_x_alice) * (1.0 - p.s));
}

inline double delta_bound(const ParamRanges& r, double p_x_alice,
                          std::map<std::string, double>* diagnostics = nullptr) {
    const double inf = std::numeric_limits<double>::infinity();
    const double p_z = 1.0 - p_x_alice;

    double eta_z_min = std::min(r.eta_lo[Z0], r.eta_lo[Z1]);
    double eta_z_max = std::max(r.eta_hi[Z0], r.eta_hi[Z1]);
    double eta_x_min = std::min(r.eta_lo[X0], r.eta_lo[X1]);
    double eta_x_max = std::max(r.eta_hi[X0], r.eta_hi[X1]);
    double eta_min = r.eta_min(), eta_max = r.eta_max();
    double d_min = r.d_min(), d_max = r.d_max();
    double s_lo = r.s_lo(), s_hi = r.s_hi();

    double dark_lo = (2 * d_min - 2 * d_max * d_max);  // lower bound on d+d'-2dd'
    double dark_hi = (2 * d_max - 2 * d_min * d_min);
    double no_dark_lo3 = std::pow(1 - d_max, 3);
    double no_dark_hi3 = std::pow(1 - d_min, 3);

    double common_l = ((1 - s_hi) * (1 - eta_z_max) + s_lo * (1 - eta_x_max)) *
                      dark_lo * (1 - d_max) * (1 - d_max);
    double l_z = common_l + (1 - s_hi) * eta_z_min * no_dark_lo3;
    double l_x = common_l + s_lo * eta_x_min * no_dark_lo3;

    double common_u = ((1 - s_lo) * (1 - eta_z_min) + s_hi * (1 - eta_x_min)) *
                      dark_hi * (1 - d_min) * (1 - d_min);
    double u_z = common_u + (1 - s_lo) * eta_z_max * no_dark_hi3;
    double u_x = common_u + s_hi * eta_x_max * no_dark_hi3;

    double delta1 = s_hi * (2 * eta_max * no_dark_hi3 -
                            (eta_x_min + eta_z_min) * no_dark_lo3);
    double delta2 = (1.0 / (1 - s_hi)) * (1 - eta_min) * dark_hi *
                    (1 - d_min) * (1 - d_min);
    double zeta = delta1 + delta2;

    double denom = p_x_alice * l_x + p_z * l_z;
    double k2 = denom > 0 ? 1.0 / denom : inf;
    auto [a_lo, a_hi] = choose_a(r, p_x_alice);

    double num = p_x_alice * u_x + p_z * u_z;
    double delta = inf;
    if (denom > 0 && l_z > 0 && l_x > 0 && a_lo > 0) {
        double branch_z = std::sqrt(num / (p_x_alice * l_z));
        double branch_x = std::sqrt(num / (a_lo * p_z * l_x));
        delta = (1 + std::sqrt(a_hi)) * (p_x_alice * zeta * k2 / 2.0) *
                std::max(branch_z, branch_x);
    }

    if (diagnostics) {
        auto& m = *diagnostics;
        m["l_z"] = l_z;
        m["l_x"] = l_x;
        m["u_z"] = u_z;
        m["u_x"] = u_x;
        m["k2"] = k2;
        m["delta1"] = delta1;
        m["delta2"] = delta2;
        m["zeta"] = zeta;
        // Alternative index pairing (l_X under the p_X branch); the summary
        // formula above is the one in force, this is recorded for inspection.
        if (denom > 0 && l_z > 0 && l_x > 0 && a_lo > 0) {
            m["delta_alt_pairing"] =
                (1 + std::sqrt(a_hi)) * (p_x_alice * zeta * k2 / 2.0) *
                std::max(std::sqrt(num / (p_x_alice * l_x)),
                         std::sqrt(num / (a_lo * p_z * l_z)));
        }
    }
    return delta;
}

// Definition of delta evaluated numerically; used to test dominance of the
// closed-form bound.
inline double delta_exact(const ParamPoint& p, double p_x_alice, double a) {
    JointOps1 j = build_joint_ops_1(p, p_x_alice);
    Mat sx = psd_sqrt(j.f_tilde_x);
    Mat sz = psd_sqrt(j.f_tilde_z);
    Mat diff = sx * j.g_tilde_x_neq * sx - a * (sz * j.g_tilde_x_neq * sz);
    return op_norm_inf(hermitize(diff));
}

inline double qz_bound(const ParamRanges& r, double p_z_alice) {
    double d_min = r.d_min(), d_max = r.d_max();
    return p_z_alice * (1 - d_min) * (1 - d_min) * (2 * d_max - 2 * d_min * d_min);
}

inline MismatchCertificate build_certificate(const ParamRanges& r,
                                             const ProtocolConfig& proto,
                                             double grid_step) {
    MismatchCertificate c;
    std::tie(c.a_lo, c.a_hi) = choose_a(r, proto.p_x_alice);
    c.delta = delta_bound(r, proto.p_x_alice, &c.diagnostics);
    c.q_z = qz_bound(r, proto.p_z_alice());
    LambdaMinCertificate lm = lambda_min_box(r, proto.photon_cutoff, grid_step);
    c.lambda_min = lm.value;
    c.lambda_valid = lm.valid;
    c.diagnostics["lambda_s1_max"] = lm.s1_max;
    c.diagnostics["lambda_s2_max"] = lm.s2_max;
    c.diagnostics["lambda_grid_points"] = static_cast<double>(lm.grid_points_evaluated);
    return c;
}

}  // namespace qkd
