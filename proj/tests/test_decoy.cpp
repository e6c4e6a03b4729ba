#include "qkd/decoy.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qkd;

namespace {

double poisson_pmf(double mu, int m) {
    return std::exp(-mu) * std::pow(mu, m) / std::tgamma(m + 1.0);
}

}  // namespace

TEST_CASE("tau matches the Poisson mixture") {
    ProtocolConfig proto;  // mu = (0.5, 0.1, 0), equal p_mu
    CHECK(tau(0, proto) == Catch::Approx(0.83712269258286433).epsilon(1e-12));

    // The vacuum intensity contributes nothing to tau_1.
    double t1 = tau(1, proto);
    double expect = (poisson_pmf(0.5, 1) + poisson_pmf(0.1, 1)) / 3.0;
    CHECK(t1 == Catch::Approx(expect).epsilon(1e-12));

    double sum = 0;
    for (int m = 0; m <= 50; ++m) sum += tau(m, proto);
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("n_pm on zero counts is zero") {
    ProtocolConfig proto;
    std::array<double, 3> zero{0, 0, 0};
    CHECK(n_pm(zero, proto, 0, +1, 1e-12) == 0.0);
    CHECK(n_pm(zero, proto, 2, -1, 1e-12) == 0.0);
}

TEST_CASE("n_pm arithmetic oracle at the vacuum intensity") {
    ProtocolConfig proto;  // mu3 = 0, p = 1/3
    std::array<double, 3> counts{1000, 1000, 1000};
    double v = n_pm(counts, proto, 2, -1, 1e-12);
    CHECK(v == Catch::Approx(2130.8653400838107).epsilon(1e-10));
}

TEST_CASE("n_pm plus/minus gap identity") {
    ProtocolConfig proto;
    std::array<double, 3> counts{123.0, 456.0, 789.0};
    double n_o = counts[0] + counts[1] + counts[2];
    double eps = 1e-12;
    for (int k = 0; k < 3; ++k) {
        double gap = n_pm(counts, proto, k, +1, eps) - n_pm(counts, proto, k, -1, eps);
        double expect = 2.0 * std::exp(proto.mu[k]) / proto.p_mu[k] *
                        std::sqrt(0.5 * n_o * std::log(2.0 / (eps * eps)));
        CHECK(gap == Catch::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("decoy sandwich holds on exact Poisson-mixture expectations") {
    ProtocolConfig proto;
    proto.n_rounds = 1e12;
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    for (int trial = 0; trial < 20; ++trial) {
        // Arbitrary per-photon-number yields shared by all intensities; the
        // decoy argument must sandwich the single-photon contribution.
        double y[21];
        for (int m = 0; m <= 20; ++m) y[m] = u(rng);

        Observations o;
        for (int k = 0; k < 3; ++k) {
            double rate = 0;
            for (int m = 0; m <= 20; ++m) rate += poisson_pmf(proto.mu[k], m) * y[m];
            o.n_k_mu[k] = proto.n_rounds * proto.p_mu[k] * rate;
        }
        double true_single = proto.n_rounds * tau(1, proto) * y[1];

        auto b = decoy_bounds(o, proto, 1e-12);
        REQUIRE_FALSE(b.vacuous);
        CHECK(b.b_min1_k <= true_single);
        // The same estimator applied to the key counts as an upper bound.
        double upper = decoy_detail::b_max1(o.n_k_mu, proto, 1e-12, b.tau1);
        CHECK(upper >= true_single);
        CHECK(b.b_min1_k <= o.n_k_total());
    }
}

TEST_CASE("zero observations make the lower bound vacuous") {
    ProtocolConfig proto;
    Observations o;  // all zero
    auto b = decoy_bounds(o, proto, 1e-12);
    REQUIRE_FALSE(b.vacuous);
    CHECK(b.b_min1_k <= 0.0);
    CHECK(b.b_max1_x >= b.b_min1_k);
}

TEST_CASE("degenerate intensity geometry is flagged vacuous") {
    ProtocolConfig proto;
    proto.mu = {0.3, 0.2, 0.1};  // mu1(mu2-mu3) - mu2^2 + mu3^2 = 0
    Observations o;
    o.n_k_mu = {100, 50, 25};
    auto b = decoy_bounds(o, proto, 1e-12);
    CHECK(b.vacuous);
}

TEST_CASE("b_max1 is at least b_min1 on generated statistics") {
    ProtocolConfig proto;
    proto.n_rounds = 1e10;
    Observations o;
    for (int k = 0; k < 3; ++k) {
        double rate = 0;
        for (int m = 0; m <= 20; ++m)
            rate += poisson_pmf(proto.mu[k], m) * (1.0 - std::exp(-0.5 * m));
        o.n_k_mu[k] = proto.n_rounds * proto.p_mu[k] * rate;
    }
    auto b = decoy_bounds(o, proto, 1e-12);
    REQUIRE_FALSE(b.vacuous);
    double upper = decoy_detail::b_max1(o.n_k_mu, proto, 1e-12, b.tau1);
    CHECK(upper >= b.b_min1_k);
}
