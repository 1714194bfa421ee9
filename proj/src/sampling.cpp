#include "metasir/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "metasir/errors.hpp"
#include "metasir/rng.hpp"

namespace metasir::sampling {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCompletionNoiseFraction = 0.1;

void
check_config(const SamplingConfig& config)
{
    if (!(config.window_radius > 0.0) || !std::isfinite(config.window_radius))
        throw InvalidArgument("window radius must be positive");
    if (!(config.truncation_tol > 0.0))
        throw InvalidArgument("truncation tolerance must be positive");
}

std::int64_t
poisson_count(StreamRng& rng, double mean)
{
    if (mean <= 0.0)
        return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

Point2
uniform_in_disk(StreamRng& rng, double radius)
{
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * kPi * rng.uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
}

Point2
offset(Point2 p, double length, double phi)
{
    return {p.x + length * std::cos(phi), p.y + length * std::sin(phi)};
}

} // namespace

SamplingConfig
SamplingConfig::for_tolerance(const NetworkParams& params, double truncation_tol, std::uint64_t seed,
                              FarField far_field)
{
    return {required_window_radius(params, truncation_tol), truncation_tol, seed, far_field};
}

double
required_window_radius(const NetworkParams& params, double truncation_tol)
{
    if (!(truncation_tol > 0.0))
        throw InvalidArgument("truncation tolerance must be positive");
    const double a = params.path_loss_exponent();
    const double base = 2.0 * kPi * params.density() * params.link_gain_inverse() / ((a - 2.0) * truncation_tol);
    return std::pow(base, 1.0 / (a - 2.0));
}

double
completion_radius(const NetworkParams& params, double truncation_tol, double window_radius)
{
    if (!(truncation_tol > 0.0))
        throw InvalidArgument("truncation tolerance must be positive");
    // Var of sum r^{-a} over r > rho is pi lambda rho^{2-2a} / (a - 1).
    const double a = params.path_loss_exponent();
    const double sigma = kCompletionNoiseFraction * truncation_tol / params.link_gain_inverse();
    const double rho = std::pow(kPi * params.density() / ((a - 1.0) * sigma * sigma), 1.0 / (2.0 * a - 2.0));
    return std::min(rho, window_radius);
}

TailMoments
annulus_moments(const NetworkParams& params, double inner_radius, double outer_radius)
{
    TailMoments tail;
    tail.inner_radius = inner_radius;
    if (!(outer_radius > inner_radius))
        return tail;
    if (!(inner_radius > 0.0))
        throw InvalidArgument("annulus inner radius must be positive");
    const double a = params.path_loss_exponent();
    for (std::size_t k = 1; k <= TailMoments::kOrders; ++k) {
        const double e = 2.0 - a * static_cast<double>(k);
        tail.sums[k - 1] = 2.0 * kPi * params.density() *
                           (std::pow(inner_radius, e) - std::pow(outer_radius, e)) / (-e);
    }
    return tail;
}

Realization
sample_realization(const NetworkParams& params, const SamplingConfig& config)
{
    check_config(config);
    StreamRng rng(config.seed);
    const double w = config.window_radius;
    const auto count = poisson_count(rng, params.density() * kPi * w * w);
    std::vector<Point2> points;
    points.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        const Point2 p = uniform_in_disk(rng, w);
        // The origin itself has probability zero; redraw if it appears.
        if (p.x == 0.0 && p.y == 0.0) {
            --i;
            continue;
        }
        points.push_back(p);
    }
    return Realization(std::move(points), w, params.path_loss_exponent());
}

std::vector<Link>
sample_bipolar_links(const NetworkParams& params, const SamplingConfig& config)
{
    check_config(config);
    StreamRng rng(config.seed);
    const double w = config.window_radius;
    const auto count = poisson_count(rng, params.density() * kPi * w * w);
    std::vector<Link> links;
    links.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        const Point2 tx = uniform_in_disk(rng, w);
        links.push_back({tx, offset(tx, params.link_distance(), 2.0 * kPi * rng.uniform())});
    }
    return links;
}

std::vector<Link>
sample_bipolar_links(const NetworkParams& params, const Rectangle& window, std::uint64_t seed)
{
    if (!(window.width > 0.0 && window.height > 0.0))
        throw InvalidArgument("rectangle window must have positive sides");
    StreamRng rng(seed);
    const auto count = poisson_count(rng, params.density() * window.width * window.height);
    std::vector<Link> links;
    links.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        const Point2 tx{(rng.uniform() - 0.5) * window.width, (rng.uniform() - 0.5) * window.height};
        links.push_back({tx, offset(tx, params.link_distance(), 2.0 * kPi * rng.uniform())});
    }
    return links;
}

std::vector<double>
nearest_k_distances(const InterfererProfile& profile, std::size_t k)
{
    if (k == 0)
        throw InvalidArgument("k must be positive");
    if (profile.size() < k)
        throw InsufficientInterferers("realization has " + std::to_string(profile.size()) +
                                      " interferers, fewer than k = " + std::to_string(k));
    const auto d = profile.distances();
    return {d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::vector<double>
nearest_k_distances(const Realization& realization, std::size_t k)
{
    return nearest_k_distances(realization.profile(), k);
}

InterfererProfile
sample_typical_profile(const NetworkParams& params, const SamplingConfig& config)
{
    check_config(config);
    const double window = config.window_radius;
    const double exact_radius = config.far_field == FarField::exact
                                    ? window
                                    : completion_radius(params, config.truncation_tol, window);

    StreamRng rng(config.seed);
    const double rate = params.density() * kPi;
    const double limit = exact_radius * exact_radius;
    std::vector<double> distances;
    distances.reserve(static_cast<std::size_t>(rate * limit * 1.1) + 16);
    double squared = 0.0;
    while (true) {
        squared += rng.exponential() / rate;
        if (squared > limit)
            break;
        distances.push_back(std::sqrt(squared));
    }
    return InterfererProfile(std::move(distances), params.path_loss_exponent(),
                             annulus_moments(params, exact_radius, window));
}

} // namespace metasir::sampling
