// Certified lower bound lambda_min on the minimum eigenvalue of the
// multi-click POVM element restricted to the (>M)-photon subspace:
// exact procedure at a parameter point and a grid search with rigorous
// perturbation terms over a parameter box. Dark counts only help the
// multi-click probability, so they are ignored here.
#pragma once

#include "qkd/config.hpp"
#include "qkd/interval.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace qkd {

struct LambdaMinCertificate {
    double value = 0.0;
    double grid_step = 0.0;
    std::int64_t grid_points_evaluated = 0;
    double s1_max = 0.0;
    double s2_max = 0.0;
    bool valid = false;
    std::string message;
};

namespace lmdetail {

// Largest singular value of a real 2x2 matrix, closed form.
inline double sigma_max_2x2(double a, double b, double c, double d) {
    double fro = a * a + b * b + c * c + d * d;
    double det = a * d - b * c;
    double disc = fro * fro - 4.0 * det * det;
    if (disc < 0) disc = 0;
    return std::sqrt(0.5 * (fro + std::sqrt(disc)));
}

struct PointEval {
    // Column-normalized detection matrix V'_d (4x2) and derived quantities.
    double vp[4][2];
    double omega1 = 0, omega2 = 0;
    double sigma1 = 0, sigma2 = 0;  // sigma_max of the Z and X row blocks of V_d
    double col_norm_1 = 0;          // ||V'_d||_(ind,1), max abs column sum
    bool degenerate = false;
};

inline PointEval eval_point(double e1, double e2, double e3, double e4, double s) {
    PointEval r{};
    double cross = 0.5 * s * (e3 + e4);
    double f1sq = (1 - s) * e1 + cross;
    double f2sq = (1 - s) * e2 + cross;
    if (f1sq <= 0 || f2sq <= 0) {
        r.degenerate = true;
        return r;
    }
    double f1 = std::sqrt(f1sq), f2 = std::sqrt(f2sq);

    double c0[4] = {std::sqrt((1 - s) * e1) / f1, 0.0, std::sqrt(0.5 * s * e3) / f1,
                    std::sqrt(0.5 * s * e4) / f1};
    double c1[4] = {0.0, std::sqrt((1 - s) * e2) / f2, std::sqrt(0.5 * s * e3) / f2,
                    -std::sqrt(0.5 * s * e4) / f2};
    for (int i = 0; i < 4; ++i) {
        r.vp[i][0] = c0[i];
        r.vp[i][1] = c1[i];
    }
    double sum0 = 0, sum1 = 0;
    for (int i = 0; i < 4; ++i) {
        sum0 += std::abs(c0[i]);
        sum1 += std::abs(c1[i]);
    }
    r.col_norm_1 = std::max(sum0, sum1);

    // The Gram matrix of V'_d is [[1, g], [g, 1]]: its eigenvectors are the
    // Hadamard columns exactly, so the SVD is closed-form.
    double g = s * (e3 - e4) / (2.0 * f1 * f2);
    double w1sq = 1.0 + g, w2sq = 1.0 - g;
    if (w1sq <= 0 || w2sq <= 0) {
        r.degenerate = true;
        return r;
    }
    r.omega1 = std::sqrt(w1sq);
    r.omega2 = std::sqrt(w2sq);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    double u1[4], u2[4], vd[4][2];
    for (int i = 0; i < 4; ++i) {
        u1[i] = (c0[i] + c1[i]) * inv_sqrt2 / r.omega1;
        u2[i] = (c0[i] - c1[i]) * inv_sqrt2 / r.omega2;
        // V_d = U V^T with V the normalized Hadamard.
        vd[i][0] = (u1[i] + u2[i]) * inv_sqrt2;
        vd[i][1] = (u1[i] - u2[i]) * inv_sqrt2;
    }
    r.sigma1 = sigma_max_2x2(vd[0][0], vd[0][1], vd[1][0], vd[1][1]);
    r.sigma2 = sigma_max_2x2(vd[2][0], vd[2][1], vd[3][0], vd[3][1]);
    return r;
}

// Worst-case element variation of V'_d over a coordinate cell
// [x_i - h_i/2, x_i + h_i/2]: per element, the larger one-sided deviation
// from the center value; s1 is the maximum row sum of those deviations.
inline double s1_bound(const PointEval& center, const std::array<Interval, 4>& eta,
                       Interval s) {
    Interval one(1.0);
    Interval half(0.5);
    Interval cross = half * s * (eta[2] + eta[3]);
    Interval den[2] = {(one - s) * eta[0] + cross, (one - s) * eta[1] + cross};

    // Interval enclosures of the six nonzero elements (magnitudes).
    Interval el[4][2];
    el[0][0] = isqrt(((one - s) * eta[0]) / den[0]);
    el[1][0] = Interval(0.0);
    el[2][0] = isqrt((half * s * eta[2]) / den[0]);
    el[3][0] = isqrt((half * s * eta[3]) / den[0]);
    el[0][1] = Interval(0.0);
    el[1][1] = isqrt(((one - s) * eta[1]) / den[1]);
    el[2][1] = isqrt((half * s * eta[2]) / den[1]);
    el[3][1] = isqrt((half * s * eta[3]) / den[1]);

    double s1 = 0.0;
    for (int i = 0; i < 4; ++i) {
        double row = 0.0;
        for (int j = 0; j < 2; ++j) {
            double c = std::abs(center.vp[i][j]);
            row += std::max(el[i][j].hi - c, c - el[i][j].lo);
        }
        s1 = std::max(s1, row);
    }
    return s1;
}

}  // namespace lmdetail

inline double lambda_min_point(const ParamPoint& p, int cutoff_m) {
    auto r = lmdetail::eval_point(p.eta[Z0], p.eta[Z1], p.eta[X0], p.eta[X1], p.s);
    if (r.degenerate) return 0.0;
    double e = 2.0 * (cutoff_m + 1);
    return std::max(0.0, 1.0 - std::pow(r.sigma1, e) - std::pow(r.sigma2, e));
}

inline LambdaMinCertificate lambda_min_box(const ParamRanges& ranges, int cutoff_m,
                                           double grid_step) {
    LambdaMinCertificate cert;
    cert.grid_step = grid_step;
    if (grid_step <= 0) {
        cert.message = "grid_step must be positive";
        return cert;
    }

    double lo[5] = {ranges.eta_lo[0], ranges.eta_lo[1], ranges.eta_lo[2],
                    ranges.eta_lo[3], ranges.s_lo()};
    double hi[5] = {ranges.eta_hi[0], ranges.eta_hi[1], ranges.eta_hi[2],
                    ranges.eta_hi[3], ranges.s_hi()};
    int ncells[5];
    double cellw[5];
    for (int c = 0; c < 5; ++c) {
        double w = hi[c] - lo[c];
        ncells[c] = w > 0 ? static_cast<int>(std::ceil(w / grid_step)) : 1;
        cellw[c] = w / ncells[c];
    }

    const double expnt = 2.0 * (cutoff_m + 1);
    double worst = 0.0;

    for (int i0 = 0; i0 < ncells[0]; ++i0)
    for (int i1 = 0; i1 < ncells[1]; ++i1)
    for (int i2 = 0; i2 < ncells[2]; ++i2)
    for (int i3 = 0; i3 < ncells[3]; ++i3)
    for (int i4 = 0; i4 < ncells[4]; ++i4) {
        double x[5];
        int idx[5] = {i0, i1, i2, i3, i4};
        for (int c = 0; c < 5; ++c) x[c] = lo[c] + (idx[c] + 0.5) * cellw[c];

        auto pe = lmdetail::eval_point(x[0], x[1], x[2], x[3], x[4]);
        ++cert.grid_points_evaluated;
        if (pe.degenerate) {
            cert.value = 0.0;
            cert.valid = false;
            cert.message = "degenerate column norm inside box";
            return cert;
        }

        std::array<Interval, 4> eta_iv;
        for (int c = 0; c < 4; ++c)
            eta_iv[c] = Interval(x[c] - 0.5 * cellw[c], x[c] + 0.5 * cellw[c]);
        Interval s_iv(x[4] - 0.5 * cellw[4], x[4] + 0.5 * cellw[4]);
        double s1 = lmdetail::s1_bound(pe, eta_iv, s_iv);
        cert.s1_max = std::max(cert.s1_max, s1);

        double s2 = 0.0;
        for (double w : {pe.omega1, pe.omega2}) {
            double gap = w - 2.0 * s1;
            if (gap <= 0) {
                cert.value = 0.0;
                cert.valid = false;
                cert.message = "perturbation too large; refine grid_step";
                return cert;
            }
            double term = 2.0 * std::sqrt(2.0) * s1 * pe.col_norm_1 / (gap * w) +
                          4.0 * std::sqrt(2.0) * s1 / gap;
            s2 = std::max(s2, term);
        }
        cert.s2_max = std::max(cert.s2_max, s2);

        double cand = std::pow(pe.sigma1 + 2.0 * s2, expnt) +
                      std::pow(pe.sigma2 + 2.0 * s2, expnt);
        worst = std::max(worst, cand);
    }

    cert.value = std::max(0.0, 1.0 - worst);
    cert.valid = true;
    return cert;
}

}  // namespace qkd
