#pragma once

#include <span>
#include <vector>

#include "metasir/profile.hpp"

namespace metasir {

struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

double norm(Point2 p);
double distance(Point2 a, Point2 b);

/// One sampled interferer configuration around the typical receiver at the
/// origin. The typical transmitter at (R, 0) is not part of it.
class Realization
{
  public:
    Realization(std::vector<Point2> interferer_points, double window_radius, double alpha);

    std::span<const Point2> interferer_points() const { return points_; }
    double window_radius() const { return window_radius_; }
    std::span<const double> sorted_distances() const { return profile_.distances(); }
    const InterfererProfile& profile() const { return profile_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

  private:
    std::vector<Point2> points_;
    double window_radius_;
    InterfererProfile profile_;
};

/// Interference without fading, sum r^{-alpha}.
struct InterferencePower
{
    double value = 0.0;
};

/// One transmitter-receiver pair of the all-links report.
struct LinkRecord
{
    Point2 tx;
    Point2 rx;
    double reliability = 0.0;
    double threshold = 0.0;
};

} // namespace metasir
