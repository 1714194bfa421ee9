#include "metasir/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metasir/errors.hpp"

namespace metasir {

namespace {

constexpr double kSeriesCutoff = 1e-3;

} // namespace

double
neg_log_conditional_success(const InterfererProfile& profile, const NetworkParams& params, SirThreshold t)
{
    const double scale = t.value() * params.link_gain_inverse();
    if (scale == 0.0 || profile.empty())
        return 0.0;
    if (std::isinf(scale))
        return std::numeric_limits<double>::infinity();

    const auto gains = profile.path_gains();
    const double gain_cut = kSeriesCutoff / scale;
    const auto split = std::partition_point(gains.begin(), gains.end(),
                                            [gain_cut](double g) { return g > gain_cut; });
    const auto first_far = static_cast<std::size_t>(split - gains.begin());

    // log1p(x) = x - x^2/2 + x^3/3 - x^4/4 + O(x^5)
    const double s1 = profile.suffix_power_sum(first_far, 1);
    const double s2 = profile.suffix_power_sum(first_far, 2);
    const double s3 = profile.suffix_power_sum(first_far, 3);
    const double s4 = profile.suffix_power_sum(first_far, 4);
    double acc = scale * (s1 - scale * (s2 / 2.0 - scale * (s3 / 3.0 - scale * s4 / 4.0)));

    for (std::size_t n = first_far; n-- > 0;)
        acc += std::log1p(scale * gains[n]);
    return acc;
}

double
conditional_success(const InterfererProfile& profile, const NetworkParams& params, SirThreshold t)
{
    return std::exp(-neg_log_conditional_success(profile, params, t));
}

double
conditional_success(const Realization& realization, const NetworkParams& params, SirThreshold t)
{
    return conditional_success(realization.profile(), params, t);
}

SirThreshold
threshold_for_reliability(const InterfererProfile& profile, const NetworkParams& params,
                          const ReliabilityTarget& target)
{
    if (profile.empty())
        throw EmptyRealization();

    const double level = target.log_inverse_nu();
    auto excess = [&](double t) {
        return neg_log_conditional_success(profile, params, SirThreshold(t)) - level;
    };

    double lo = 0.0;
    double hi = 1.0;
    if (excess(hi) <= 0.0) {
        lo = hi;
        do {
            hi *= 2.0;
            if (!std::isfinite(hi))
                throw NumericalFailure("threshold bracket diverged");
            if (excess(hi) > 0.0)
                break;
            lo = hi;
        } while (true);
    } else {
        // Shrink from above so the relative tolerance is reached quickly
        // for targets near one.
        while (hi > std::numeric_limits<double>::min()) {
            const double half = hi / 2.0;
            if (excess(half) <= 0.0) {
                lo = half;
                break;
            }
            hi = half;
        }
    }

    while (hi - lo > kThresholdRelTol * hi) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi)
            break;
        if (excess(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return SirThreshold(lo);
}

SirThreshold
threshold_for_reliability(const Realization& realization, const NetworkParams& params,
                          const ReliabilityTarget& target)
{
    return threshold_for_reliability(realization.profile(), params, target);
}

InterferencePower
interference_no_fading(const InterfererProfile& profile)
{
    return {profile.suffix_power_sum(0, 1)};
}

InterferencePower
interference_no_fading(const Realization& realization)
{
    return interference_no_fading(realization.profile());
}

InterferencePower
interference_nearest_k(const InterfererProfile& profile, std::size_t k)
{
    if (k == 0)
        throw InvalidArgument("k must be positive");
    if (profile.size() < k)
        throw InsufficientInterferers("realization has " + std::to_string(profile.size()) +
                                      " interferers, fewer than k = " + std::to_string(k));
    const auto gains = profile.path_gains();
    double sum = 0.0;
    for (std::size_t n = k; n-- > 0;)
        sum += gains[n];
    return {sum};
}

SirThreshold
threshold_lower_bound_k(const InterfererProfile& profile, const NetworkParams& params,
                        const ReliabilityTarget& target, std::size_t k)
{
    const double local = interference_nearest_k(profile, k).value;
    const double kd = static_cast<double>(k);
    const double numerator = kd * std::expm1(target.log_inverse_nu() / kd);
    return SirThreshold(numerator / (params.link_gain_inverse() * local));
}

SirThreshold
threshold_lower_bound_k(const Realization& realization, const NetworkParams& params,
                        const ReliabilityTarget& target, std::size_t k)
{
    return threshold_lower_bound_k(realization.profile(), params, target, k);
}

SirThreshold
threshold_partial_info(InterferencePower interference, const NetworkParams& params,
                       const ReliabilityTarget& target)
{
    if (!(interference.value > 0.0))
        throw ZeroInterference();
    return SirThreshold(target.log_inverse_nu() / (params.link_gain_inverse() * interference.value));
}

double
link_rate(SirThreshold t)
{
    return std::log1p(t.value());
}

} // namespace metasir
