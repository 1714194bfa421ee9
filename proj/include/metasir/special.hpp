#pragma once

#include <complex>

namespace metasir::special {

using Complex = std::complex<double>;

/// Principal branch of log Gamma(z), continuous from the positive real
/// axis. Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

/// Gamma(z + shift) / Gamma(z) via log_gamma differences.
Complex gamma_ratio(Complex z, double shift);

double erf_real(double x);
double erfc_real(double x);

/// Dawson's integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

/// Imaginary error function, 2 exp(x^2) F(x) / sqrt(pi).
double erfi(double x);

struct SeriesValue
{
    double value = 0.0;
    /// Set when the argument is outside the range where the series is
    /// trusted (z > 20): its terms grow before they shrink.
    bool accuracy_loss = false;
};

/// 2F2([1, 1], [3/2, 2]; z) by its power series.
SeriesValue hyp2f2_11_3half2(double z);

inline constexpr double kHyp2f2TrustedLimit = 20.0;

} // namespace metasir::special
