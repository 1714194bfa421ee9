#include "metasir/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "metasir/errors.hpp"

namespace metasir::special {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k - 1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

constexpr double kStirlingMinModulus = 17.0;

Complex
stirling(Complex w)
{
    const Complex inv = 1.0 / w;
    const Complex inv2 = inv * inv;
    Complex series = 0.0;
    for (std::size_t k = kStirling.size(); k-- > 0;)
        series = series * inv2 + kStirling[k];
    series *= inv;
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series;
}

} // namespace

Complex
log_gamma(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("log_gamma argument must be finite");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("log_gamma pole at a non-positive integer");

    // log Gamma(z) = log Gamma(z + n) - sum_{k<n} log(z + k), valid on the
    // plane cut along the negative real axis.
    Complex shifted = z;
    Complex correction = 0.0;
    while (std::abs(shifted) < kStirlingMinModulus || shifted.real() < 0.0) {
        correction += std::log(shifted);
        shifted += 1.0;
    }
    return stirling(shifted) - correction;
}

Complex
gamma_ratio(Complex z, double shift)
{
    return std::exp(log_gamma(z + shift) - log_gamma(z));
}

double
erf_real(double x)
{
    return std::erf(x);
}

double
erfc_real(double x)
{
    return std::erfc(x);
}

double
dawson(double x)
{
    const double ax = std::abs(x);
    if (ax < 0.2) {
        // F(x) = sum_n (-1)^n 2^n x^{2n+1} / (2n+1)!!
        const double x2 = x * x;
        double term = x;
        double sum = x;
        for (int n = 1; n < 30; ++n) {
            term *= -2.0 * x2 / (2.0 * n + 1.0);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum))
                break;
        }
        return sum;
    }
    if (ax > 50.0) {
        // Asymptotic 1/(2x) sum (2n-1)!! / (2x^2)^n; ten terms are exact to
        // double precision at this range.
        const double inv = 1.0 / (2.0 * x * x);
        double term = 1.0;
        double sum = 1.0;
        for (int n = 1; n < 10; ++n) {
            term *= (2.0 * n - 1.0) * inv;
            sum += term;
        }
        return sum / (2.0 * x);
    }

    // Rybicki: F(x) = lim_{h->0} pi^{-1/2} sum_{n odd} exp(-(x - n h)^2) / n,
    // centred on the even multiple of h nearest x. The discretization
    // error is of order exp(-(pi / 2h)^2).
    constexpr double h = 0.2;
    constexpr int kTerms = 40;
    const int n0 = 2 * static_cast<int>(std::lround(0.5 * ax / h));
    const double xp = ax - n0 * h;
    double sum = 0.0;
    for (int i = kTerms; i >= 1; --i) {
        const int odd = 2 * i - 1;
        const double up = std::exp(-(xp - odd * h) * (xp - odd * h));
        const double down = std::exp(-(xp + odd * h) * (xp + odd * h));
        sum += up / (n0 + odd) + down / (n0 - odd);
    }
    const double value = sum / std::sqrt(kPi);
    return x < 0.0 ? -value : value;
}

double
erfi(double x)
{
    return 2.0 * std::exp(x * x) * dawson(x) / std::sqrt(kPi);
}

SeriesValue
hyp2f2_11_3half2(double z)
{
    if (!std::isfinite(z))
        throw InvalidArgument("2F2 argument must be finite");
    // term_{n+1} / term_n = (n + 1) z / ((n + 3/2)(n + 2))
    double term = 1.0;
    double sum = 1.0;
    double compensation = 0.0;
    for (int n = 0; n < 100000; ++n) {
        term *= (n + 1.0) * z / ((n + 1.5) * (n + 2.0));
        const double y = term - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-16 * std::abs(sum) && n > std::abs(z))
            break;
    }
    return {sum, z > kHyp2f2TrustedLimit};
}

} // namespace metasir::special
