#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "metasir/analytics.hpp"
#include "metasir/errors.hpp"
#include "metasir/mc.hpp"
#include "metasir/model.hpp"
#include "metasir/rng.hpp"
#include "metasir/sampling.hpp"

using namespace metasir;
using namespace metasir::mc;

namespace {

const NetworkParams kNet(1.0, 4.0, 0.5);

McConfig
config(std::size_t n, std::uint64_t seed, unsigned workers = 1)
{
    McConfig c;
    c.n_realizations = n;
    c.master_seed = seed;
    c.worker_hint = workers;
    return c;
}

} // namespace

TEST_CASE("results do not depend on the worker count")
{
    const std::vector<double> xs{0.1, 0.5, 0.9};
    const auto one = estimate_md(kNet, SirThreshold(1.0), xs, config(3000, 5, 1));
    for (unsigned w : {2u, 4u, 8u}) {
        const auto many = estimate_md(kNet, SirThreshold(1.0), xs, config(3000, 5, w));
        CHECK(many.curve.values == one.curve.values);
    }
    const auto target = ReliabilityTarget::from_nu(0.9);
    const auto a = paired_thresholds(kNet, target, {InfoMode::full(), InfoMode::k_nearest(3)}, config(1000, 6, 1));
    const auto b = paired_thresholds(kNet, target, {InfoMode::full(), InfoMode::k_nearest(3)}, config(1000, 6, 8));
    CHECK(a.samples == b.samples);
}

TEST_CASE("meta distribution estimate agrees with the inversion")
{
    const std::vector<double> xs{0.1, 0.3, 0.5, 0.7, 0.9};
    const auto mc = estimate_md(kNet, SirThreshold(1.0), xs, config(8000, 7));
    CHECK(mc.n == 8000);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double p = analytics::md_gil_pelaez(kNet, SirThreshold(1.0), xs[i]).value;
        const double se = std::sqrt(p * (1.0 - p) / 8000.0);
        CHECK(std::abs(mc.curve.values[i] - p) <= 4.0 * se);
    }
}

TEST_CASE("standard errors shrink with the sample size")
{
    const auto a = estimate_success_probability(kNet, SirThreshold(1.0), config(4000, 8));
    const auto b = estimate_success_probability(kNet, SirThreshold(1.0), config(8000, 9));
    CHECK(a.std_error / b.std_error == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("window truncation biases the success probability upward")
{
    // With exact far field the radial sampler draws the same points in the
    // same order, so the loose window sees a prefix of the tight one.
    const int n = 5000;
    const SirThreshold theta(1.0);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto seed = stream_seed(10, static_cast<std::uint64_t>(i));
        const auto tight = sampling::SamplingConfig::for_tolerance(kNet, 1e-4, seed);
        const auto loose = sampling::SamplingConfig::for_tolerance(kNet, 1e-2, seed);
        const double d = conditional_success(sampling::sample_typical_profile(kNet, loose), kNet, theta) -
                         conditional_success(sampling::sample_typical_profile(kNet, tight), kNet, theta);
        REQUIRE(d >= 0.0);
        sum += d;
        sum_sq += d * d;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(mean > 10.0 * se);
    // The removed interference has mean 0.0099 R^-4; to first order the
    // success probability rises by about theta R^4 times that, times p_s.
    CHECK(mean == doctest::Approx(0.0099 * std::exp(-std::numbers::pi * std::numbers::pi / 8.0)).epsilon(0.3));

    const auto est = estimate_success_probability(kNet, theta, config(20000, 10));
    CHECK(std::abs(est.value - std::exp(-std::numbers::pi * std::numbers::pi / 8.0)) <= 3.0 * est.std_error);
}

TEST_CASE("duality holds on paired realizations")
{
    for (double theta : {0.5, 4.0}) {
        const auto r = verify_duality(kNet, SirThreshold(theta), ReliabilityTarget::from_nu(0.9), config(2000, 11));
        CHECK(r.n == 2000);
        CHECK(r.violations == 0);
    }
}

TEST_CASE("rate control meets the target on every realization")
{
    const auto est = estimate_throughput(kNet, ReliabilityTarget::from_epsilon(0.01), {0.1, 1.0}, config(2000, 12));
    CHECK(est.max_reliability_gap <= 1e-9);
    CHECK(est.rate_control_S.value == doctest::Approx(est.rate_control_S_rel.value * 0.99).epsilon(1e-12));
    CHECK(est.deterministic_S.size() == 2);
}

TEST_CASE("realizations without enough interferers are redrawn")
{
    // Sparse network: many realizations have fewer than 3 interferers.
    const NetworkParams sparse(0.05, 4.0, 0.5);
    auto cfg = config(500, 13);
    cfg.truncation_tol = 5e-4;
    cfg.far_field = sampling::FarField::exact;
    const auto curve =
        estimate_threshold_ccdf(sparse, ReliabilityTarget::from_nu(0.9), {0.1, 1.0}, cfg, InfoMode::k_nearest(3));
    CHECK(curve.n == 500);
    CHECK(curve.resample_count > 0);
}

TEST_CASE("bound check reports violations for partial knowledge")
{
    const auto checks = check_bound_dominance(kNet, ReliabilityTarget::from_nu(0.9), {1, 3}, config(500, 14));
    REQUIRE(checks.size() == 2);
    CHECK(checks[0].k == 1);
    CHECK(checks[0].violations > 0);
    CHECK(checks[0].max_ratio > 1.0);
}

TEST_CASE("interference samples follow the Levy law")
{
    const std::vector<double> xs{1.0, 5.0, 20.0, 100.0};
    const auto curve = estimate_interference_ccdf(kNet, xs, config(5000, 15));
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(std::abs(curve.curve.values[i] - analytics::levy_interference_ccdf(kNet, xs[i])) < 0.03);
}

TEST_CASE("realization report")
{
    const auto links =
        realization_report(kNet, SirThreshold(1.0), ReliabilityTarget::from_nu(0.9), sampling::Rectangle{4.0, 4.0}, 3);
    CHECK_FALSE(links.empty());
    for (const auto& l : links) {
        CHECK(l.reliability > 0.0);
        CHECK(l.reliability <= 1.0);
        CHECK(l.threshold > 0.0);
    }
}

TEST_CASE("figure data shapes")
{
    const std::vector<double> ts{0.01, 0.1};
    const auto fig2 =
        figure2_data(kNet, ReliabilityTarget::from_nu(0.9), {0.25, 1.0}, {1, 3}, ts, config(300, 16));
    REQUIRE(fig2.size() == 2);
    CHECK(fig2[0].density == 0.25);
    CHECK(fig2[1].k_nearest.size() == 2);
    CHECK(fig2[1].exact.values.size() == 2);

    const auto fig3 = figure3_data(kNet, ReliabilityTarget::from_epsilon(0.01), {0.01, 1.0}, config(300, 17));
    REQUIRE(fig3.size() == 2);
    CHECK(fig3[0].rate_control.S == fig3[1].rate_control.S);
    CHECK(fig3[0].rate_control_S_mc.value == fig3[1].rate_control_S_mc.value);
}

TEST_CASE("invalid Monte Carlo settings")
{
    CHECK_THROWS_AS(estimate_md(kNet, SirThreshold(1.0), {0.5}, config(0, 1)), InvalidArgument);
    CHECK_THROWS_AS(estimate_md(kNet, SirThreshold(1.0), {}, config(10, 1)), InvalidArgument);
    CHECK_THROWS_AS(estimate_md(kNet, SirThreshold(1.0), {0.5, 0.1}, config(10, 1)), InvalidArgument);
}
