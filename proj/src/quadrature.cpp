#include "metasir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "metasir/errors.hpp"

namespace metasir::quad {

namespace {

// Nodes on [0, 1] of the half-rule; index 0 is the centre.
constexpr std::array<double, 8> kKronrodNodes = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};

constexpr std::array<double, 8> kKronrodWeights = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};

// Gauss weights for the centre and the even-indexed Kronrod nodes.
constexpr std::array<double, 4> kGaussWeights = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct Panel
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel
integrate_panel(const std::function<double(double)>& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = kKronrodWeights[0] * fc;
    double gauss = kGaussWeights[0] * fc;
    for (std::size_t i = 1; i < kKronrodNodes.size(); ++i) {
        const double dx = half * kKronrodNodes[i];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 0)
            gauss += kGaussWeights[i / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace

QuadResult
gauss_kronrod(const std::function<double(double)>& f, std::span<const double> breakpoints, double abs_tol,
              std::size_t max_intervals)
{
    if (breakpoints.size() < 2)
        throw InvalidArgument("quadrature needs at least two breakpoints");

    std::vector<Panel> initial;
    initial.reserve(breakpoints.size() - 1);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i]))
            throw InvalidArgument("quadrature breakpoints must be strictly ascending");
        initial.push_back(integrate_panel(f, breakpoints[i], breakpoints[i + 1]));
    }

    double value = 0.0;
    double error = 0.0;
    for (const auto& p : initial) {
        value += p.value;
        error += p.error;
    }
    std::priority_queue<Panel> queue(std::less<Panel>(), std::move(initial));

    while (error > abs_tol && queue.size() < max_intervals) {
        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            break;
        queue.pop();
        const Panel left = integrate_panel(f, worst.a, mid);
        const Panel right = integrate_panel(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum in a fixed order; the running totals drift after many updates.
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    QuadResult result;
    for (const auto& p : panels) {
        result.value += p.value;
        result.error += p.error;
    }
    result.intervals = panels.size();
    result.converged = result.error <= abs_tol;
    return result;
}

} // namespace metasir::quad
