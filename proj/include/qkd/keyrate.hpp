// Key-length assembly: combines the mismatch certificate, decoy bounds and
// finite-size bounds into the secret-key length, plus the intensity
// optimizer and the parameter sweeps behind the CLI.
#pragma once

#include "qkd/bounds.hpp"
#include "qkd/channel.hpp"
#include "qkd/config.hpp"
#include "qkd/decoy.hpp"
#include "qkd/mismatch.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qkd {

enum class Status { ok, vacuous_b1, vacuous_lambda_min, saturated_entropy };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::vacuous_b1: return "vacuous_b1";
        case Status::vacuous_lambda_min: return "vacuous_lambda_min";
        case Status::saturated_entropy: return "saturated_entropy";
    }
    return "unknown";
}

// Binary entropy in bits, extended by h(x) = 1 for x > 1/2 so that the
// key-length formula saturates instead of going complex.
inline double binary_entropy(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 0.5) return 1.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

inline double lambda_ec(double n_k, double e_z, double f_ec) {
    return f_ec * n_k * binary_entropy(e_z);
}

struct KeyRateResult {
    double key_length_bits = 0;
    double rate_per_signal = 0;
    double b1 = 0;
    double be = 0;
    double lambda_ec = 0;
    Status status = Status::ok;
    MismatchCertificate cert;
    DecoyBounds decoy;
};

inline KeyRateResult key_length(const Observations& o, const MismatchCertificate& cert,
                                const ProtocolConfig& proto, const EpsilonBudget& eps,
                                bool correlated) {
    KeyRateResult r;
    r.cert = cert;
    double n = proto.n_rounds;
    r.lambda_ec = qkd::lambda_ec(o.n_k_total(), o.e_z_obs, proto.f_ec);

    if (!cert.lambda_valid || cert.lambda_min <= 0) {
        r.status = Status::vacuous_lambda_min;
        return r;
    }

    r.decoy = decoy_bounds(o, proto, eps.eps_at_d);
    r.b1 = b_k(r.decoy.b_min1_k, n, cert.q_z, cert.lambda_min, o.n_mc, eps, correlated);
    if (r.decoy.vacuous || r.b1 <= 0) {
        r.status = Status::vacuous_b1;
        r.b1 = std::min(r.b1, 0.0);
        return r;
    }

    r.be = b_imp(r.decoy.b_max1_xneq, r.decoy.b_max1_x, r.b1, cert.a_lo, cert.delta, eps);
    double h = binary_entropy(r.be);
    double l = r.b1 * (1.0 - h) - r.lambda_ec - 2.0 * std::log2(1.0 / (2.0 * eps.eps_pa)) -
               std::log2(2.0 / eps.eps_ev);
    r.key_length_bits = std::max(l, 0.0);
    r.rate_per_signal = r.key_length_bits / n;
    if (r.be >= 0.5 && r.key_length_bits == 0.0)
        r.status = Status::saturated_entropy;
    return r;
}

// Everything a run needs; mirrors the JSON config sections.
struct SweepConfig {
    std::string axis = "loss";  // loss | delta_width | l_c | repetition_rate
    std::vector<double> values;
    std::vector<double> mu1_grid;
    std::vector<double> mu2_grid;
    double grid_step = 2e-3;        // lambda_min box grid
    bool correlated = false;
    double t_seconds = 100.0;       // repetition_rate axis
    double t_dead_seconds = 1e-9;
};

struct FullConfig {
    ParamRanges ranges;
    ProtocolConfig proto;
    EpsilonBudget eps;
    ChannelConfig channel;
    SweepConfig sweep;
    // Set when the box was given in single-width shorthand; the delta_width
    // sweep axis requires it.
    bool has_shorthand = false;
    double nominal_eta = 0, nominal_d = 0, nominal_s = 0, delta_width = 0;
    bool true_point_is_center = true;
};

struct OptimizeOutcome {
    std::array<double, 3> mu{};
    KeyRateResult result;
    bool boundary_optimum = false;
};

inline KeyRateResult evaluate_at(const FullConfig& cfg, const MismatchCertificate& cert,
                                 const ProtocolConfig& proto, bool correlated) {
    OutcomeDistribution dist =
        expected_frequencies(cfg.channel.true_point, cfg.channel, proto);
    Observations o = observations_from_frequencies(dist, proto, correlated);
    return key_length(o, cert, proto, cfg.eps, correlated);
}

inline OptimizeOutcome optimize_intensities(const FullConfig& cfg,
                                            const MismatchCertificate& cert,
                                            bool correlated) {
    OptimizeOutcome best;
    best.mu = cfg.proto.mu;
    bool found = false;
    size_t bi = 0, bj = 0;
    const auto& g1 = cfg.sweep.mu1_grid;
    const auto& g2 = cfg.sweep.mu2_grid;

    for (size_t i = 0; i < g1.size(); ++i)
        for (size_t j = 0; j < g2.size(); ++j) {
            ProtocolConfig p = cfg.proto;
            p.mu = {g1[i], g2[j], cfg.proto.mu[2]};
            if (!(p.mu[0] > p.mu[1] + p.mu[2] && p.mu[1] > p.mu[2])) continue;
            KeyRateResult r = evaluate_at(cfg, cert, p, correlated);
            if (!found || r.key_length_bits > best.result.key_length_bits) {
                best.result = r;
                best.mu = p.mu;
                bi = i;
                bj = j;
                found = true;
            }
        }
    if (!found) {
        // Degenerate grid: fall back to the configured intensities.
        best.result = evaluate_at(cfg, cert, cfg.proto, correlated);
        return best;
    }
    best.boundary_optimum = best.result.key_length_bits > 0 &&
                            (bi == 0 || bi + 1 == g1.size() || bj == 0 ||
                             bj + 1 == g2.size());
    return best;
}

struct SweepRow {
    double axis_value = 0;
    double loss_db = 0;
    double delta_width = 0;
    int l_c = 0;
    double mu1 = 0, mu2 = 0;
    KeyRateResult result;
};

inline std::vector<SweepRow> sweep(const FullConfig& base) {
    std::vector<SweepRow> rows;
    const std::string& axis = base.sweep.axis;

    // Certificates depend only on the box and the protocol probabilities, so
    // they are computed once unless the axis changes the box itself.
    MismatchCertificate shared_cert;
    bool cert_ready = false;

    for (double v : base.sweep.values) {
        FullConfig cfg = base;
        bool correlated = base.sweep.correlated;
        if (axis == "loss") {
            cfg.channel.loss_db = v;
        } else if (axis == "delta_width") {
            cfg.ranges = make_delta_box(cfg.nominal_eta, cfg.nominal_d, cfg.nominal_s, v);
            cfg.delta_width = v;
            if (cfg.true_point_is_center)
                cfg.channel.true_point = center_point(cfg.ranges);
        } else if (axis == "l_c") {
            cfg.proto.l_c = static_cast<int>(v);
            correlated = cfg.proto.l_c > 0;
        } else if (axis == "repetition_rate") {
            cfg.proto.n_rounds = v * cfg.sweep.t_seconds;
            // Dead time within one round period leaves no correlated rounds.
            double span = v * cfg.sweep.t_dead_seconds;
            cfg.proto.l_c = span <= 1.0 + 1e-9 ? 0
                                               : static_cast<int>(std::ceil(span - 1e-9));
            correlated = cfg.proto.l_c > 0;
        }

        MismatchCertificate cert;
        if (axis == "delta_width") {
            cert = build_certificate(cfg.ranges, cfg.proto, cfg.sweep.grid_step);
        } else {
            if (!cert_ready) {
                shared_cert = build_certificate(cfg.ranges, cfg.proto, cfg.sweep.grid_step);
                cert_ready = true;
            }
            cert = shared_cert;
        }

        OptimizeOutcome opt = optimize_intensities(cfg, cert, correlated);
        SweepRow row;
        row.axis_value = v;
        row.loss_db = cfg.channel.loss_db;
        row.delta_width = cfg.delta_width;
        row.l_c = cfg.proto.l_c;
        row.mu1 = opt.mu[0];
        row.mu2 = opt.mu[1];
        row.result = opt.result;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qkd
