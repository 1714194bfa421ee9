#include "metasir/realization.hpp"

#include <cmath>

#include "metasir/errors.hpp"

namespace metasir {

double
norm(Point2 p)
{
    return std::hypot(p.x, p.y);
}

double
distance(Point2 a, Point2 b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

std::vector<double>
norms_of(const std::vector<Point2>& points, double window_radius)
{
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        const double r = norm(p);
        if (!(r > 0.0))
            throw InvalidArgument("interferer located at the typical receiver");
        if (r > window_radius * (1.0 + 1e-12))
            throw InvalidArgument("interferer outside the sampling window");
        out.push_back(r);
    }
    return out;
}

} // namespace

Realization::Realization(std::vector<Point2> interferer_points, double window_radius, double alpha)
  : points_(std::move(interferer_points)), window_radius_(window_radius)
{
    if (!(window_radius > 0.0))
        throw InvalidArgument("window radius must be positive");
    profile_ = InterfererProfile::from_unsorted(norms_of(points_, window_radius_), alpha);
}

} // namespace metasir
