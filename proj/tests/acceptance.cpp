// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits with the number of failures. Expects the repository root (for the
// shipped configs) as argv[1].
#include "qkd/config_io.hpp"
#include "qkd/keyrate.hpp"
#include "qkd/montecarlo.hpp"
#include "qkd/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace qkd;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  (%s)\n", idx, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++failures;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    static auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

FullConfig standard_config(const std::string& root, double delta) {
    FullConfig cfg = load_config(root + "/configs/production.json");
    cfg.ranges = make_delta_box(0.7, 1e-6, 0.3, delta);
    cfg.delta_width = delta;
    cfg.channel.true_point = center_point(cfg.ranges);
    return cfg;
}

ParamPoint sample_in_box(const ParamRanges& r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ParamPoint p;
    for (int i = 0; i < 4; ++i) {
        p.eta[i] = r.eta_lo[i] + (r.eta_hi[i] - r.eta_lo[i]) * u(rng);
        p.d[i] = r.d_lo[i] + (r.d_hi[i] - r.d_lo[i]) * u(rng);
    }
    p.s = r.s_lo() + (r.s_hi() - r.s_lo()) * u(rng);
    return p;
}

double rate_at(const FullConfig& cfg, const MismatchCertificate& cert, double loss,
               bool correlated) {
    FullConfig c = cfg;
    c.channel.loss_db = loss;
    return optimize_intensities(c, cert, correlated).result.rate_per_signal;
}

void criterion1(const std::string& root) {
    bool ok = true;
    std::string detail;
    double worst_point_time = 0.0;
    for (double delta : {0.0, 0.01, 0.05}) {
        FullConfig cfg = standard_config(root, delta);
        auto cert = build_certificate(cfg.ranges, cfg.proto, cfg.sweep.grid_step);
        std::vector<double> losses = delta >= 0.05
                                         ? std::vector<double>{0, 5, 10, 20, 30, 40}
                                         : std::vector<double>{0, 2, 4, 6, 8, 10};
        for (double loss : losses) {
            double t0 = now_s();
            double rate = rate_at(cfg, cert, loss, false);
            worst_point_time = std::max(worst_point_time, now_s() - t0);
            if (delta >= 0.05 ? rate != 0.0 : rate <= 0.0) {
                ok = false;
                detail += "delta=" + std::to_string(delta) +
                          " loss=" + std::to_string(loss) +
                          " rate=" + std::to_string(rate) + "; ";
            }
        }
    }
    if (worst_point_time > 5.0) {
        ok = false;
        detail += "sweep point took " + std::to_string(worst_point_time) + " s; ";
    }
    if (detail.empty())
        detail = "positive rate for width 0 and 0.01 at 0-10 dB, zero for 0.05; "
                 "worst point " +
                 std::to_string(worst_point_time) + " s";
    report(1, ok, detail);
}

void criterion2() {
    bool ok = true;
    for (double s : {0.1, 0.3, 0.5})
        for (int m : {1, 2, 3}) {
            ParamPoint p;
            p.eta = {1, 1, 1, 1};
            p.d = {0, 0, 0, 0};
            p.s = s;
            double expect = 1.0 - std::pow(s, m + 1) - std::pow(1 - s, m + 1);
            if (std::abs(lambda_min_point(p, m) - expect) > 1e-12) ok = false;
            for (double eta : {0.9, 0.5, 0.1}) {
                ParamPoint q = p;
                q.eta = {eta, eta, eta, eta};
                if (std::abs(lambda_min_point(q, m) - expect) > 1e-12) ok = false;
            }
        }
    report(2, ok, "closed form and uniform-efficiency invariance");
}

void criterion3() {
    ParamRanges box = make_delta_box(0.7, 1e-6, 0.3, 0.01);
    auto coarse = lambda_min_box(box, 1, 1e-3);
    bool ok = coarse.valid && coarse.value > 0.0;
    int violations = 0;
    std::mt19937_64 rng(71);
    for (int i = 0; i < 1000; ++i) {
        ParamPoint p = sample_in_box(box, rng);
        if (coarse.value > lambda_min_point(p, 1) + 1e-12) ++violations;
    }
    if (violations > 0) ok = false;
    auto fine = lambda_min_box(box, 1, 0.5e-3);
    if (!fine.valid || fine.value < coarse.value) ok = false;
    report(3, ok,
           "box value " + std::to_string(coarse.value) + ", violations " +
               std::to_string(violations) + ", halved-step value " +
               std::to_string(fine.value));
}

void criterion4() {
    ParamPoint sym;
    sym.eta = {0.7, 0.7, 0.7, 0.7};
    sym.d = {0, 0, 0, 0};
    sym.s = 0.3;
    ParamRanges pb;
    for (int i = 0; i < 4; ++i) {
        pb.eta_lo[i] = pb.eta_hi[i] = sym.eta[i];
        pb.d_lo[i] = pb.d_hi[i] = 0.0;
    }
    pb.s_center = sym.s;
    bool ok = delta_bound(pb, 0.3) == 0.0;

    ParamRanges box = make_delta_box(0.7, 1e-6, 0.3, 0.01);
    double bound = delta_bound(box, 0.3);
    int violations = 0;
    std::mt19937_64 rng(73);
    for (int i = 0; i < 1000; ++i) {
        ParamPoint p = sample_in_box(box, rng);
        if (delta_exact(p, 0.3, heuristic_a(p, 0.3)) > bound + 1e-9) ++violations;
    }
    if (violations > 0) ok = false;
    report(4, ok,
           "symmetric point bound 0, box bound " + std::to_string(bound) +
               ", violations " + std::to_string(violations));
}

void criterion5(const std::string& root) {
    FullConfig cfg = standard_config(root, 0.01);
    auto cert = build_certificate(cfg.ranges, cfg.proto, cfg.sweep.grid_step);
    auto dist = expected_frequencies(cfg.channel.true_point, cfg.channel, cfg.proto);
    Observations o = observations_from_frequencies(dist, cfg.proto, false);
    KeyRateResult mem = key_length(o, cert, cfg.proto, cfg.eps, false);
    KeyRateResult cor = key_length(o, cert, cfg.proto, cfg.eps, true);
    double expect = std::sqrt(-std::log(cfg.eps.eps_0) * cfg.proto.n_rounds);
    double rel = std::abs((mem.b1 - cor.b1) - expect) / expect;
    bool ok = cor.key_length_bits <= mem.key_length_bits && rel < 1e-9;
    report(5, ok,
           "correlated <= memoryless, B difference off by relative " +
               std::to_string(rel));
}

void criterion6(const std::string& root) {
    FullConfig cfg = standard_config(root, 0.01);
    auto cert = build_certificate(cfg.ranges, cfg.proto, cfg.sweep.grid_step);
    const int lcs[4] = {0, 2, 5, 10};

    // All four curves run under the correlated-detector analysis with only
    // l_c varying, which is the comparison the figure makes; the memoryless
    // proof is a different bound and is covered by criterion 5.
    // High loss: rates similar across correlation lengths.  At >= 35 dB the
    // certified bounds leave no key for any l_c (the rates agree at zero), so
    // the non-trivial comparison happens at the highest loss that still keeps
    // all four curves positive.
    bool ok = true;
    std::string detail;
    double hi[4] = {};
    for (double loss : {35.0, 36.0, 37.0, 38.0}) {
        for (int i = 0; i < 4; ++i) {
            FullConfig c = cfg;
            c.proto.l_c = lcs[i];
            hi[i] = rate_at(c, cert, loss, true);
        }
        double mx = *std::max_element(hi, hi + 4);
        double mn = *std::min_element(hi, hi + 4);
        if (mx > 0 && (mx - mn) / mx > 0.05) {
            ok = false;
            detail += "spread " + std::to_string((mx - mn) / mx) + " at " +
                      std::to_string(loss) + " dB; ";
        }
    }

    double high_loss = -1.0;
    for (double loss = 34.0; loss >= 20.0; loss -= 1.0) {
        for (int i = 0; i < 4; ++i) {
            FullConfig c = cfg;
            c.proto.l_c = lcs[i];
            hi[i] = rate_at(c, cert, loss, true);
        }
        if (*std::min_element(hi, hi + 4) > 0) {
            high_loss = loss;
            break;
        }
    }
    if (high_loss < 0) {
        ok = false;
        detail += "no loss in [20, 34] dB keeps all four curves positive; ";
    } else {
        double mx = *std::max_element(hi, hi + 4);
        double mn = *std::min_element(hi, hi + 4);
        if ((mx - mn) / mx > 0.05) {
            ok = false;
            detail += "spread " + std::to_string((mx - mn) / mx) + " at " +
                      std::to_string(high_loss) + " dB; ";
        }
    }

    double lo[4];
    for (int i = 0; i < 4; ++i) {
        FullConfig c = cfg;
        c.proto.l_c = lcs[i];
        lo[i] = rate_at(c, cert, 3.0, true);
    }
    for (int i = 1; i < 4; ++i)
        if (!(lo[i] < lo[i - 1])) {
            ok = false;
            detail += "low-loss rates not strictly decreasing; ";
            break;
        }
    if (detail.empty())
        detail = "agree at 35-38 dB (all zero) and at " +
                 std::to_string(high_loss) +
                 " dB (positive), strictly decreasing at 3 dB";
    report(6, ok, detail);
}

void criterion7(const std::string& root) {
    FullConfig cfg = standard_config(root, 0.01);
    cfg.sweep.axis = "repetition_rate";
    cfg.sweep.values = {1e9, 1e10};
    cfg.sweep.t_seconds = 100.0;
    cfg.sweep.t_dead_seconds = 1e-9;
    cfg.channel.loss_db = 2.0;
    auto rows = sweep(cfg);
    bool shape = rows.size() == 2 && rows[0].l_c == 0 && rows[1].l_c == 10;
    double per_s_1 = rows[0].result.rate_per_signal * 1e9;
    double per_s_10 = rows[1].result.rate_per_signal * 1e10;
    bool ok = shape && per_s_10 > per_s_1 && per_s_1 > 0;
    report(7, ok,
           "key/s at 1 GHz " + std::to_string(per_s_1) + ", at 10 GHz " +
               std::to_string(per_s_10));
}

void criterion8(const std::string& root) {
    FullConfig cfg = load_config(root + "/configs/validation.json");
    auto cert = build_certificate(cfg.ranges, cfg.proto, cfg.sweep.grid_step);
    bool ok = cert.lambda_valid && cert.lambda_min > 0;

    double t0 = now_s();
    ValidationSummary sum = run_validation(cfg, cert, 1000, 100000, 20250824, false);
    double elapsed = now_s() - t0;
    if (sum.total_violations() != 0) ok = false;

    MismatchCertificate bad = cert;
    apply_injection(bad, "lambda_min", 2.0);
    ValidationSummary neg = run_validation(cfg, bad, 20, 100000, 20250824, false);
    if (neg.total_violations() == 0) ok = false;
    if (elapsed > 600.0) ok = false;

    std::string detail = "violations " + std::to_string(sum.total_violations()) +
                         "/1000 trials in " + std::to_string(elapsed) +
                         " s; negative control violations " +
                         std::to_string(neg.total_violations()) + "/20";
    report(8, ok, detail);
}

void criterion9() {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g;
    bool ok = true;
    for (int rep = 0; rep < 4; ++rep) {
        ParamPoint p;
        for (int i = 0; i < 4; ++i) {
            p.eta[i] = 0.3 + 0.7 * u(rng);
            p.d[i] = 0.05 * u(rng);
        }
        p.s = 0.2 + 0.5 * u(rng);
        auto j = build_joint_ops_1(p, 0.3);
        Mat sq_fsc = psd_sqrt(j.f_sc);
        Mat sq_ftx = psd_sqrt(j.f_tilde_x);
        for (int trial = 0; trial < 25; ++trial) {
            Mat a(4, 4);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    a(r, c) = std::complex<double>(g(rng), g(rng));
            Mat rho = a * a.adjoint();
            rho /= rho.trace().real();
            Mat filt = sq_ftx * sq_fsc * rho * sq_fsc * sq_ftx;
            double two_step = (filt * j.g_tilde_x_neq).trace().real();
            double direct = (j.gamma1_x_neq * rho).trace().real();
            if (std::abs(two_step - direct) > 1e-9) ok = false;
        }
    }
    report(9, ok, "two-step reproduction on 100 random states");
}

}  // namespace

int main(int argc, char** argv) {
    std::string root = argc > 1 ? argv[1] : ".";
    criterion1(root);
    criterion2();
    criterion3();
    criterion4();
    criterion5(root);
    criterion6(root);
    criterion7(root);
    criterion8(root);
    criterion9();
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
