#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "metasir/params.hpp"

namespace metasir::analytics {

using ComplexScalar = std::complex<double>;

/// A sampled distribution curve. `values` are probabilities; `std_errors`
/// is filled for Monte Carlo curves and empty otherwise.
struct DistributionCurve
{
    std::string label;
    std::vector<double> abscissa;
    std::vector<double> values;
    std::vector<double> std_errors;
};

/// A clamped probability together with what the method produced before
/// clamping and its error estimate.
struct ProbabilityEstimate
{
    double value = 0.0;
    double raw = 0.0;
    double error_estimate = 0.0;
};

struct ThroughputDensities
{
    double S = 0.0;
    double S_rel = 0.0;
};

/// exp(-lambda pi R^2 theta^delta Gamma(1 + delta) Gamma(1 - delta)).
double standard_success_probability(const NetworkParams& params, SirThreshold theta);

/// E[P_s(theta)^b] = exp(-lambda pi R^2 theta^delta Gamma(1 - delta)
///                       Gamma(b + delta) / Gamma(b)), with M_0 = 1.
/// The PPP probability generating functional applied to the product form
/// of P_s.
ComplexScalar sir_moment(const NetworkParams& params, SirThreshold theta, ComplexScalar b);

/// Integrand magnitudes below this bound the truncation of the Gil-Pelaez
/// integral.
inline constexpr double kGilPelaezEnvelope = 1e-12;
/// Error estimate (on the probability scale) above which the inversion
/// reports QuadratureFailure.
inline constexpr double kGilPelaezFailure = 1e-4;

/// P(P_s(theta) > x) by Gil-Pelaez inversion of the imaginary moments:
///   1/2 + (1/pi) int_0^inf Im(exp(-ju log x) M_{ju}) / u du.
ProbabilityEstimate md_gil_pelaez(const NetworkParams& params, SirThreshold theta, double x);

struct BinomialMixture
{
    /// beta_{n,k}, k = 0..n.
    std::vector<double> weights;
    double weight_sum = 0.0;
    double min_weight = 0.0;
};

inline constexpr std::size_t kMaxMixtureOrder = 30;
inline constexpr std::size_t kDefaultMixtureOrder = 20;

/// beta_{n,k} = C(n,k) sum_j (-1)^j C(n-k,j) M_{k+j}, the probability that
/// n Bernoulli(P_s) trials give k successes. Throws CancellationError if a
/// weight falls below -1e-6.
BinomialMixture binomial_mixture_weights(const NetworkParams& params, SirThreshold theta, std::size_t n);

/// P(P_s(theta) > x) from the mixture: sum of beta_{n,k} over k > n x,
/// plus half of the weight at k = n x exactly (the mid-distribution value,
/// which is what Gil-Pelaez inversion returns at an atom).
double md_binomial_mixture(const NetworkParams& params, SirThreshold theta, double x, std::size_t n);
double md_binomial_mixture(const BinomialMixture& mixture, double x);

/// ccdf of the interference without fading for alpha = 4 (a Levy law):
///   erf(pi^{3/2} lambda / (2 sqrt(x))).
double levy_interference_ccdf(const NetworkParams& params, double x);

/// Ultrareliable ccdf of the threshold, alpha = 4:
///   erfc(sqrt(t / eps) pi^{3/2} lambda R^2 / 2).
double threshold_ccdf_ultrareliable(const NetworkParams& params, const ReliabilityTarget& target,
                                    SirThreshold t);

/// Same form with eps replaced by log(1/(1-eps)); the ccdf of the
/// partial-information threshold log(1/(1-eps)) R^{-4} / I.
double threshold_ccdf_partial_info(const NetworkParams& params, const ReliabilityTarget& target,
                                   SirThreshold t);

/// C = -(1 / log(1 - eps)) pi^3 lambda^2 R^4 / 4.
double log_rate_constant(const NetworkParams& params, const ReliabilityTarget& target);

enum class LogRateMethod
{
    quadrature,
    closed_form,
};

struct LogRateResult
{
    double value = 0.0;
    LogRateMethod method_used = LogRateMethod::quadrature;
    /// Closed form requested but C exceeded the cancellation guard.
    bool cancellation_fallback = false;
};

/// Closed form is only trusted up to this C.
inline constexpr double kClosedFormLimit = 20.0;

/// (1/sqrt(pi)) int_0^inf u^{-1/2} e^{-u} log(1 + u / C) du with u = v^2.
double log_rate_integral(double C);

/// -2C 2F2([1,1],[3/2,2];C) + pi erfi(sqrt C) - (gamma + 2 log 2 + log C).
/// Equal to log_rate_integral(C) for every C > 0 in exact arithmetic, but
/// the erfi and 2F2 terms both grow like e^C and cancel.
double log_rate_closed_form(double C);

/// E[log(1 + T)] under the partial-information threshold law (alpha = 4).
LogRateResult expected_log_rate(const NetworkParams& params, const ReliabilityTarget& target,
                                LogRateMethod method);

/// S = lambda (1 - eps) E[log(1+T)], S_rel = lambda E[log(1+T)].
ThroughputDensities throughput_rate_control(const NetworkParams& params, const ReliabilityTarget& target);
ThroughputDensities throughput_rate_control(const NetworkParams& params, const ReliabilityTarget& target,
                                            double mean_log_rate);

/// S = lambda log(1+theta) p_s(theta),
/// S_rel = lambda log(1+theta) P(P_s(theta) > 1 - eps).
ThroughputDensities throughput_deterministic(const NetworkParams& params, SirThreshold theta,
                                             const ReliabilityTarget& target);

/// P(P_s(x) > nu) for each x in the grid, the exact ccdf of the threshold T(nu).
DistributionCurve threshold_ccdf_exact(const NetworkParams& params, const ReliabilityTarget& target,
                                       const std::vector<double>& t_grid);

DistributionCurve md_curve_gil_pelaez(const NetworkParams& params, SirThreshold theta,
                                      const std::vector<double>& x_grid);

} // namespace metasir::analytics
