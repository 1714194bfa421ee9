#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace metasir {

/// Power sums  sum r^{-alpha k}, k = 1..4, of interferers that are not
/// listed individually (all farther than `inner_radius`).
struct TailMoments
{
    static constexpr std::size_t kOrders = 4;

    std::array<double, kOrders> sums{};
    double inner_radius = 0.0;

    bool empty() const { return sums[0] == 0.0; }
};

/// Interferer distances seen from a receiver at the origin, sorted
/// ascending, with cached path gains r^{-alpha} and suffix power sums.
///
/// The suffix sums are accumulated from the farthest interferer inwards so
/// the small terms are added first. They let far interferers enter the
/// log-domain success probability through a short series instead of one
/// log1p per point.
class InterfererProfile
{
  public:
    InterfererProfile() = default;
    InterfererProfile(std::vector<double> sorted_distances, double alpha, TailMoments tail = {});

    static InterfererProfile from_unsorted(std::vector<double> distances, double alpha);

    std::span<const double> distances() const { return distances_; }
    /// r_n^{-alpha}, non-increasing.
    std::span<const double> path_gains() const { return gains_; }
    const TailMoments& tail() const { return tail_; }
    double alpha() const { return alpha_; }

    /// Number of individually listed interferers.
    std::size_t size() const { return distances_.size(); }
    /// True when there is no interference at all (no points, no tail).
    bool empty() const { return distances_.empty() && tail_.empty(); }

    /// sum_{n >= first} gain_n^order + tail.sums[order - 1], order in 1..4.
    double suffix_power_sum(std::size_t first, std::size_t order) const;

  private:
    std::vector<double> distances_;
    std::vector<double> gains_;
    std::vector<std::array<double, TailMoments::kOrders>> suffix_;
    TailMoments tail_;
    double alpha_ = 4.0;
};

} // namespace metasir
