#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "metasir/errors.hpp"
#include "metasir/model.hpp"
#include "metasir/rng.hpp"
#include "metasir/sampling.hpp"

using namespace metasir;

namespace {

const NetworkParams kNet(1.0, 4.0, 0.5);

// Direct evaluation of the product form, no series or log-domain tricks.
double
product_success(const std::vector<double>& r, double alpha, double R, double t)
{
    double p = 1.0;
    for (double ri : r)
        p /= 1.0 + t * std::pow(R / ri, alpha);
    return p;
}

std::vector<InterfererProfile>
random_profiles(std::size_t count, std::uint64_t seed)
{
    std::vector<InterfererProfile> out;
    for (std::size_t i = 0; i < count; ++i) {
        auto cfg = sampling::SamplingConfig::for_tolerance(kNet, 1e-3, stream_seed(seed, i));
        out.push_back(sampling::sample_realization(kNet, cfg).profile());
    }
    return out;
}

} // namespace

TEST_CASE("conditional success matches the direct product")
{
    const std::vector<double> r{0.3, 0.8, 1.5, 7.0, 40.0, 300.0};
    for (double t : {1e-3, 0.1, 1.0, 10.0}) {
        for (double alpha : {3.0, 4.0}) {
            const NetworkParams p(1.0, alpha, 0.5);
            const InterfererProfile prof(r, alpha);
            CHECK(conditional_success(prof, p, SirThreshold(t)) ==
                  doctest::Approx(product_success(r, alpha, 0.5, t)).epsilon(1e-13));
        }
    }
}

TEST_CASE("far interferers through the series branch stay accurate")
{
    std::vector<double> r;
    for (int i = 1; i <= 2000; ++i)
        r.push_back(0.5 + 0.01 * i);
    const InterfererProfile prof(r, 4.0);
    const double direct = [&] {
        double g = 0.0;
        for (double ri : r)
            g += std::log1p(std::pow(0.5 / ri, 4.0));
        return g;
    }();
    CHECK(neg_log_conditional_success(prof, kNet, SirThreshold(1.0)) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("empty profile succeeds with probability one and has no threshold")
{
    const InterfererProfile empty({}, 4.0);
    CHECK(conditional_success(empty, kNet, SirThreshold(5.0)) == 1.0);
    CHECK_THROWS_AS(threshold_for_reliability(empty, kNet, ReliabilityTarget::from_nu(0.9)), EmptyRealization);
}

TEST_CASE("single interferer threshold in closed form")
{
    const double r = 0.8;
    const InterfererProfile prof({r}, 4.0);
    for (double nu : {0.5, 0.9, 0.99}) {
        const double expected = (1.0 / nu - 1.0) * std::pow(r / 0.5, 4.0);
        const double t = threshold_for_reliability(prof, kNet, ReliabilityTarget::from_nu(nu)).value();
        CHECK(t == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("conditional success decreases in the threshold")
{
    for (const auto& prof : random_profiles(50, 11)) {
        if (prof.empty())
            continue;
        double prev = 1.0;
        for (double t : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0}) {
            const double p = conditional_success(prof, kNet, SirThreshold(t));
            CHECK(p < prev);
            prev = p;
        }
    }
}

TEST_CASE("threshold round trip")
{
    for (const auto& prof : random_profiles(50, 12)) {
        if (prof.empty())
            continue;
        for (double nu : {0.5, 0.9, 0.99, 1.0 - 1e-6}) {
            const auto t = threshold_for_reliability(prof, kNet, ReliabilityTarget::from_nu(nu));
            CHECK(std::abs(conditional_success(prof, kNet, t) - nu) < 1e-9);
            CHECK(conditional_success(prof, kNet, t) >= nu);
        }
    }
}

TEST_CASE("duality indicator per realization")
{
    std::size_t compared = 0;
    for (const auto& prof : random_profiles(200, 13)) {
        if (prof.empty())
            continue;
        for (double theta : {0.05, 0.5, 1.0, 4.0}) {
            for (double nu : {0.5, 0.9, 0.99}) {
                const double ps = conditional_success(prof, kNet, SirThreshold(theta));
                if (std::abs(ps - nu) < 1e-9)
                    continue;
                const double t = threshold_for_reliability(prof, kNet, ReliabilityTarget::from_nu(nu)).value();
                CHECK((ps > nu) == (t > theta));
                ++compared;
            }
        }
    }
    CHECK(compared > 2000);
}

TEST_CASE("scaling every distance leaves reliability and threshold unchanged")
{
    const std::vector<double> r{0.4, 0.9, 2.0, 3.3};
    const InterfererProfile base(r, 4.0);
    const auto target = ReliabilityTarget::from_nu(0.9);
    for (double c : {0.1, 3.0, 250.0}) {
        std::vector<double> scaled;
        for (double ri : r)
            scaled.push_back(c * ri);
        const NetworkParams p(1.0, 4.0, 0.5 * c);
        const InterfererProfile prof(scaled, 4.0);
        CHECK(conditional_success(prof, p, SirThreshold(0.7)) ==
              doctest::Approx(conditional_success(base, kNet, SirThreshold(0.7))).epsilon(1e-13));
        CHECK(threshold_for_reliability(prof, p, target).value() ==
              doctest::Approx(threshold_for_reliability(base, kNet, target).value()).epsilon(1e-9));
    }
}

TEST_CASE("small outage limit of the threshold")
{
    const std::vector<double> r{0.4, 0.9, 2.0, 3.3, 10.0};
    const InterfererProfile prof(r, 4.0);
    const double interference = interference_no_fading(prof).value;
    const double eps = 1e-5;
    const double t = threshold_for_reliability(prof, kNet, ReliabilityTarget::from_epsilon(eps)).value();
    const double ratio = t * interference / (eps * std::pow(0.5, -4.0));
    CHECK(ratio > 0.99);
    CHECK(ratio < 1.01);
}

TEST_CASE("k-nearest bound")
{
    const auto target = ReliabilityTarget::from_nu(0.9);

    SUBCASE("equality for a single interferer")
    {
        const InterfererProfile prof({0.8}, 4.0);
        const double exact = threshold_for_reliability(prof, kNet, target).value();
        const double bound = threshold_lower_bound_k(prof, kNet, target, 1).value();
        CHECK(std::abs(bound - exact) <= 1e-9 * exact);
    }

    SUBCASE("lower bound when k covers every interferer")
    {
        for (const auto& prof : random_profiles(200, 14)) {
            if (prof.empty())
                continue;
            const double exact = threshold_for_reliability(prof, kNet, target).value();
            const double bound = threshold_lower_bound_k(prof, kNet, target, prof.size()).value();
            CHECK(bound <= exact);
        }
    }

    SUBCASE("ignored interferers can push the exact threshold below it")
    {
        // Two equal interferers: with k = 1 the second one is dropped.
        const InterfererProfile prof({1.0, 1.0}, 4.0);
        const double exact = threshold_for_reliability(prof, kNet, target).value();
        const double bound = threshold_lower_bound_k(prof, kNet, target, 1).value();
        CHECK(exact == doctest::Approx(std::sqrt(1.0 / 0.9) * 16.0 - 16.0).epsilon(1e-9));
        CHECK(bound == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
        CHECK(bound > exact);
    }

    SUBCASE("too few interferers")
    {
        const InterfererProfile prof({0.8, 1.2}, 4.0);
        CHECK_THROWS_AS(threshold_lower_bound_k(prof, kNet, target, 3), InsufficientInterferers);
    }
}

TEST_CASE("partial-information threshold is a lower bound")
{
    const auto target = ReliabilityTarget::from_nu(0.9);
    for (const auto& prof : random_profiles(200, 15)) {
        if (prof.empty())
            continue;
        const double exact = threshold_for_reliability(prof, kNet, target).value();
        const double approx = threshold_partial_info(interference_no_fading(prof), kNet, target).value();
        CHECK(approx <= exact);
    }
    CHECK_THROWS_AS(threshold_partial_info(InterferencePower{0.0}, kNet, target), ZeroInterference);
}

TEST_CASE("nearest-k interference")
{
    const InterfererProfile prof({1.0, 2.0, 4.0}, 4.0);
    CHECK(interference_nearest_k(prof, 2).value == doctest::Approx(1.0 + 1.0 / 16.0));
    CHECK(interference_no_fading(prof).value == doctest::Approx(1.0 + 1.0 / 16.0 + 1.0 / 256.0));
    CHECK(link_rate(SirThreshold(std::exp(1.0) - 1.0)) == doctest::Approx(1.0));
}
