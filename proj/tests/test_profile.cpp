#include <doctest.h>

#include <cmath>
#include <vector>

#include "metasir/errors.hpp"
#include "metasir/profile.hpp"
#include "metasir/realization.hpp"

using namespace metasir;

TEST_CASE("profile rejects malformed distances")
{
    CHECK_THROWS_AS(InterfererProfile({2.0, 1.0}, 4.0), InvalidArgument);
    CHECK_THROWS_AS(InterfererProfile({0.0, 1.0}, 4.0), InvalidArgument);
    CHECK_THROWS_AS(InterfererProfile({1.0}, 2.0), InvalidArgument);
    CHECK_NOTHROW(InterfererProfile({}, 4.0));
}

TEST_CASE("profile from unsorted distances")
{
    const auto p = InterfererProfile::from_unsorted({3.0, 1.0, 2.0}, 4.0);
    REQUIRE(p.size() == 3);
    CHECK(p.distances()[0] == 1.0);
    CHECK(p.distances()[2] == 3.0);
    CHECK(p.path_gains()[1] == doctest::Approx(1.0 / 16.0));
    CHECK_FALSE(p.empty());
    CHECK(InterfererProfile({}, 4.0).empty());
}

TEST_CASE("suffix power sums match direct sums")
{
    const std::vector<double> r{0.7, 1.1, 1.9, 2.5, 4.0};
    for (double alpha : {3.0, 4.0, 5.5}) {
        const InterfererProfile p(r, alpha);
        for (std::size_t order = 1; order <= 4; ++order) {
            for (std::size_t first = 0; first <= r.size(); ++first) {
                double direct = 0.0;
                for (std::size_t i = first; i < r.size(); ++i)
                    direct += std::pow(r[i], -alpha * static_cast<double>(order));
                CHECK(p.suffix_power_sum(first, order) == doctest::Approx(direct).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("tail moments are added to suffix sums")
{
    TailMoments tail;
    tail.sums = {0.5, 0.25, 0.125, 0.0625};
    tail.inner_radius = 3.0;
    const InterfererProfile p({1.0, 2.0}, 4.0, tail);
    CHECK(p.suffix_power_sum(2, 1) == doctest::Approx(0.5));
    CHECK(p.suffix_power_sum(1, 2) == doctest::Approx(std::pow(2.0, -8.0) + 0.25));
    CHECK_THROWS_AS(InterfererProfile({1.0, 4.0}, 4.0, tail), InvalidArgument);
}

TEST_CASE("realization validates its points")
{
    CHECK_THROWS_AS(Realization({{0.0, 0.0}}, 5.0, 4.0), InvalidArgument);
    CHECK_THROWS_AS(Realization({{6.0, 0.0}}, 5.0, 4.0), InvalidArgument);
    const Realization r({{3.0, 4.0}, {0.0, -1.0}}, 10.0, 4.0);
    REQUIRE(r.size() == 2);
    CHECK(r.sorted_distances()[0] == doctest::Approx(1.0));
    CHECK(r.sorted_distances()[1] == doctest::Approx(5.0));
    CHECK(Realization({}, 1.0, 4.0).empty());
}
