// Bob's single-photon POVM elements at a fully specified parameter point,
// the joint Alice (x) Bob operators, and the two-step (filter + completion)
// operators used by the phase-error estimation.
//
// Single-photon model: the photon takes the (1-s) branch to the Z detectors
// or the s branch to the X detectors; detector i absorbs it with probability
// eta_i. Dark counts act as a post-processing map on the dark-count-free
// outcomes: a single click at detector m is either a real click at m with no
// dark count elsewhere, or no real click anywhere and a dark count only at m.
#pragma once

#include "qkd/config.hpp"
#include "qkd/linalg.hpp"

namespace qkd {

inline Mat proj0() { return (Mat(2, 2) << 1, 0, 0, 0).finished(); }
inline Mat proj1() { return (Mat(2, 2) << 0, 0, 0, 1).finished(); }
inline Mat proj_plus() { return (Mat(2, 2) << 0.5, 0.5, 0.5, 0.5).finished(); }
inline Mat proj_minus() { return (Mat(2, 2) << 0.5, -0.5, -0.5, 0.5).finished(); }

struct BobPovm1 {
    Mat gamma_z0, gamma_z1, gamma_x0, gamma_x1;   // single-click elements
    Mat gamma_x_con, gamma_z_con, gamma_con;      // coarse-grained sums
};

inline void check_point(const ParamPoint& p) {
    for (int i = 0; i < 4; ++i) {
        if (!(p.eta[i] >= 0.0 && p.eta[i] <= 1.0 && p.d[i] >= 0.0 && p.d[i] < 1.0))
            throw std::invalid_argument("parameter point outside [0,1]");
    }
    if (!(p.s > 0.0 && p.s < 1.0))
        throw std::invalid_argument("beam-splitting ratio outside (0,1)");
}

inline BobPovm1 build_bob_povm_1(const ParamPoint& p, double p_x_alice = 0.3) {
    check_point(p);
    const double s = p.s;

    // Real-click operators and the no-real-click remainder.
    Mat r[4] = {(1 - s) * p.eta[Z0] * proj0(), (1 - s) * p.eta[Z1] * proj1(),
                s * p.eta[X0] * proj_plus(), s * p.eta[X1] * proj_minus()};
    Mat n_op = (1 - s) * ((1 - p.eta[Z0]) * proj0() + (1 - p.eta[Z1]) * proj1()) +
               s * ((1 - p.eta[X0]) * proj_plus() + (1 - p.eta[X1]) * proj_minus());

    Mat g[4];
    for (int m = 0; m < 4; ++m) {
        double others = 1.0;
        for (int k = 0; k < 4; ++k)
            if (k != m) others *= (1.0 - p.d[k]);
        g[m] = (r[m] + p.d[m] * n_op) * others;
    }

    BobPovm1 out;
    out.gamma_z0 = g[Z0];
    out.gamma_z1 = g[Z1];
    out.gamma_x0 = g[X0];
    out.gamma_x1 = g[X1];
    out.gamma_x_con = g[X0] + g[X1];
    out.gamma_z_con = g[Z0] + g[Z1];
    out.gamma_con = p_x_alice * out.gamma_x_con + (1 - p_x_alice) * out.gamma_z_con;
    return out;
}

// Joint 4-dim operators (Alice qubit tensor Bob single-photon space).
struct JointOps1 {
    Mat f_sc;            // I_A (x) Gamma_con
    Mat f_tilde_x;       // p_X I_A (x) sqrt(G)^+ Gamma_X,con sqrt(G)^+
    Mat f_tilde_z;
    Mat g_tilde_x_neq;   // completion element for "X outcomes disagree"
    Mat gamma1_x_neq;    // p_X (|+><+| (x) Gamma_X1 + |-><-| (x) Gamma_X0)
    bool f_sc_full_support = false;
};

inline Mat kron2(const Mat& a, const Mat& b) {
    Mat out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
}

inline Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

inline JointOps1 build_joint_ops_1(const ParamPoint& p, double p_x_alice) {
    BobPovm1 b = build_bob_povm_1(p, p_x_alice);
    const double p_z = 1.0 - p_x_alice;
    const Mat id2 = Mat::Identity(2, 2);

    Mat gcon_pinv = psd_sqrt_pinv(b.gamma_con);
    Mat sand_x = hermitize(gcon_pinv * b.gamma_x_con * gcon_pinv);
    Mat sand_z = hermitize(gcon_pinv * b.gamma_z_con * gcon_pinv);

    JointOps1 j;
    j.f_sc = kron2(id2, b.gamma_con);
    j.f_tilde_x = p_x_alice * kron2(id2, sand_x);
    j.f_tilde_z = p_z * kron2(id2, sand_z);
    j.gamma1_x_neq = p_x_alice * (kron2(proj_plus(), b.gamma_x1) +
                                  kron2(proj_minus(), b.gamma_x0));
    j.f_sc_full_support = min_eig(j.f_sc) > kRankTol;

    Mat fsc_pinv = psd_sqrt_pinv(j.f_sc);
    Mat ftx_pinv = psd_sqrt_pinv(j.f_tilde_x);
    j.g_tilde_x_neq =
        hermitize(ftx_pinv * fsc_pinv * j.gamma1_x_neq * fsc_pinv * ftx_pinv);
    return j;
}

// Infinity norm of the 0-photon Z single-click weight: only dark counts can
// fire, so the operator is the scalar
//   p_Z (1-d_X0)(1-d_X1)(d_Z0 + d_Z1 - 2 d_Z0 d_Z1)
// times the identity on the vacuum.
inline double zero_photon_key_norm(const ParamPoint& p, double p_z_alice) {
    check_point(p);
    return p_z_alice * (1 - p.d[X0]) * (1 - p.d[X1]) *
           (p.d[Z0] + p.d[Z1] - 2 * p.d[Z0] * p.d[Z1]);
}

}  // namespace qkd
