#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "metasir/params.hpp"
#include "metasir/profile.hpp"
#include "metasir/realization.hpp"

namespace metasir::sampling {

/// How interferers beyond the exact-sampling radius are represented by the
/// typical-link sampler.
enum class FarField
{
    /// Every point inside the window is drawn.
    exact,
    /// Points are drawn out to completion_radius(); the annulus out to the
    /// window edge enters through its Campbell-mean power sums.
    mean_completion,
};

struct SamplingConfig
{
    double window_radius = 0.0;
    double truncation_tol = 1e-4;
    std::uint64_t seed = 0;
    FarField far_field = FarField::exact;

    /// Window sized by required_window_radius(params, tol).
    static SamplingConfig for_tolerance(const NetworkParams& params, double truncation_tol,
                                        std::uint64_t seed, FarField far_field = FarField::exact);
};

inline constexpr double kDefaultTruncationTol = 1e-4;
inline constexpr double kUltrareliableTruncationTol = 1e-6;

/// Radius beyond which the mean interference of the plane equals
/// tol * R^{-alpha}:  (2 pi lambda R^a / ((a - 2) tol))^{1/(a-2)}.
double required_window_radius(const NetworkParams& params, double truncation_tol);

/// Radius beyond which replacing the points of a PPP annulus by the mean of
/// its interference leaves a zero-mean error whose standard deviation is at
/// most a tenth of tol * R^{-alpha}. Clipped to the window radius.
double completion_radius(const NetworkParams& params, double truncation_tol, double window_radius);

/// Campbell means of sum r^{-alpha k}, k = 1..4, over a PPP annulus.
TailMoments annulus_moments(const NetworkParams& params, double inner_radius, double outer_radius);

/// N ~ Poisson(lambda pi W^2) interferers uniform in the disk of radius W
/// around the typical receiver.
Realization sample_realization(const NetworkParams& params, const SamplingConfig& config);

struct Link
{
    Point2 tx;
    Point2 rx;
};

/// Transmitters in the disk window, each with a receiver at distance R in
/// an independent uniform direction.
std::vector<Link> sample_bipolar_links(const NetworkParams& params, const SamplingConfig& config);

/// Axis-aligned rectangle centred on the origin.
struct Rectangle
{
    double width = 0.0;
    double height = 0.0;
};

std::vector<Link> sample_bipolar_links(const NetworkParams& params, const Rectangle& window,
                                       std::uint64_t seed);

std::vector<double> nearest_k_distances(const InterfererProfile& profile, std::size_t k);
std::vector<double> nearest_k_distances(const Realization& realization, std::size_t k);

/// Interferer distances of the typical receiver, generated radially (the
/// squared distances of a planar PPP are the arrival times of a Poisson
/// process of rate lambda pi), so they come out sorted. Same law as the
/// distances of sample_realization for FarField::exact.
InterfererProfile sample_typical_profile(const NetworkParams& params, const SamplingConfig& config);

} // namespace metasir::sampling
