#include "metasir/profile.hpp"

#include <algorithm>
#include <cmath>

#include "metasir/errors.hpp"

namespace metasir {

namespace {

double
inverse_power(double r, double alpha)
{
    if (alpha == 4.0) {
        const double inv2 = 1.0 / (r * r);
        return inv2 * inv2;
    }
    return std::pow(r, -alpha);
}

} // namespace

InterfererProfile::InterfererProfile(std::vector<double> sorted_distances, double alpha, TailMoments tail)
  : distances_(std::move(sorted_distances)), tail_(tail), alpha_(alpha)
{
    if (!(alpha > 2.0))
        throw InvalidArgument("path_loss_exponent must exceed 2");
    for (std::size_t i = 0; i < distances_.size(); ++i) {
        const double r = distances_[i];
        if (!(std::isfinite(r) && r > 0.0))
            throw InvalidArgument("interferer distances must be positive and finite");
        if (i > 0 && r < distances_[i - 1])
            throw InvalidArgument("interferer distances must be sorted ascending");
    }
    if (!tail_.empty() && !distances_.empty() && tail_.inner_radius < distances_.back())
        throw InvalidArgument("tail moments must lie beyond the listed interferers");

    gains_.resize(distances_.size());
    for (std::size_t i = 0; i < distances_.size(); ++i)
        gains_[i] = inverse_power(distances_[i], alpha_);

    suffix_.resize(distances_.size() + 1);
    suffix_.back() = tail_.sums;
    for (std::size_t i = distances_.size(); i-- > 0;) {
        const double g = gains_[i];
        double p = g;
        for (std::size_t k = 0; k < TailMoments::kOrders; ++k) {
            suffix_[i][k] = suffix_[i + 1][k] + p;
            p *= g;
        }
    }
}

InterfererProfile
InterfererProfile::from_unsorted(std::vector<double> distances, double alpha)
{
    std::sort(distances.begin(), distances.end());
    return InterfererProfile(std::move(distances), alpha);
}

double
InterfererProfile::suffix_power_sum(std::size_t first, std::size_t order) const
{
    if (order < 1 || order > TailMoments::kOrders)
        throw InvalidArgument("power-sum order must lie in 1..4");
    if (suffix_.empty())
        return tail_.sums[order - 1];
    first = std::min(first, distances_.size());
    return suffix_[first][order - 1];
}

} // namespace metasir
