#include "metasir/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metasir/errors.hpp"
#include "metasir/quadrature.hpp"
#include "metasir/special.hpp"

namespace metasir::analytics {

namespace {

constexpr double kPi = std::numbers::pi;

/// Neumaier-compensated running sum.
class CompensatedSum
{
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            compensation_ += (sum_ - t) + x;
        else
            compensation_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

void
require_alpha4(const NetworkParams& params, const char* what)
{
    if (params.path_loss_exponent() != 4.0)
        throw UnsupportedExponent(std::string(what) + " requires path_loss_exponent = 4");
}

/// lambda pi R^2 theta^delta Gamma(1 - delta).
double
moment_scale(const NetworkParams& params, SirThreshold theta)
{
    const double d = params.delta();
    const double r = params.link_distance();
    return params.density() * kPi * r * r * std::pow(theta.value(), d) * std::tgamma(1.0 - d);
}

double
probability_clamp(double p)
{
    return std::clamp(p, 0.0, 1.0);
}

} // namespace

double
standard_success_probability(const NetworkParams& params, SirThreshold theta)
{
    const double d = params.delta();
    return std::exp(-moment_scale(params, theta) * std::tgamma(1.0 + d));
}

ComplexScalar
sir_moment(const NetworkParams& params, SirThreshold theta, ComplexScalar b)
{
    if (b == ComplexScalar(0.0, 0.0))
        return 1.0;
    if (b.real() < 0.0 && b.imag() == 0.0)
        throw InvalidArgument("moment order must have a non-negative real part");
    const ComplexScalar ratio = special::gamma_ratio(b, params.delta());
    return std::exp(-moment_scale(params, theta) * ratio);
}

ProbabilityEstimate
md_gil_pelaez(const NetworkParams& params, SirThreshold theta, double x)
{
    if (!(x > 0.0 && x < 1.0))
        throw InvalidArgument("reliability level x must lie in (0, 1)");
    if (theta.value() == 0.0)
        return {1.0, 1.0, 0.0};

    const double d = params.delta();
    const double kappa = moment_scale(params, theta);
    const double log_x = std::log(x);
    if (!std::isfinite(kappa))
        return {0.0, 0.0, 0.0};

    const double zero_limit = -log_x - kappa * std::tgamma(d);
    auto integrand = [&](double u) {
        if (u < 1e-8)
            return zero_limit;
        const ComplexScalar ratio = special::gamma_ratio(ComplexScalar(0.0, u), d);
        const double amplitude = std::exp(-kappa * ratio.real());
        if (amplitude == 0.0)
            return 0.0;
        return amplitude * std::sin(-u * log_x - kappa * ratio.imag()) / u;
    };

    // |M_{ju}| ~ exp(-kappa cos(pi delta / 2) u^delta) for large u.
    const double decay = kappa * std::cos(kPi * d / 2.0);
    const double upper = std::pow(-std::log(kGilPelaezEnvelope) / decay, 1.0 / d);

    // Geometric panels near the origin, then one panel per oscillation.
    const double natural = std::pow(kappa, -1.0 / d);
    const double period = 2.0 * kPi / (std::abs(log_x) + kappa * std::tgamma(d));
    std::vector<double> breaks{0.0};
    double width = std::min({period / 8.0, natural / 100.0, upper / 16.0});
    while (breaks.back() < upper) {
        breaks.push_back(std::min(breaks.back() + width, upper));
        width = std::min(2.0 * width, period);
    }

    const auto result = quad::gauss_kronrod(integrand, breaks, kPi * 1e-7, breaks.size() + 200000);
    const double raw = 0.5 + result.value / kPi;
    const double err = result.error / kPi;
    if (err > kGilPelaezFailure)
        throw QuadratureFailure("Gil-Pelaez inversion error estimate " + std::to_string(err) +
                                " exceeds " + std::to_string(kGilPelaezFailure));
    return {probability_clamp(raw), raw, err};
}

BinomialMixture
binomial_mixture_weights(const NetworkParams& params, SirThreshold theta, std::size_t n)
{
    if (n < 1 || n > kMaxMixtureOrder)
        throw InvalidArgument("binomial mixture order must lie in 1..30");

    const double d = params.delta();
    const double kappa = moment_scale(params, theta);
    std::vector<long double> moments(n + 1);
    moments[0] = 1.0L;
    for (std::size_t k = 1; k <= n; ++k) {
        const long double kd = static_cast<long double>(k);
        moments[k] = std::exp(-static_cast<long double>(kappa) * std::exp(std::lgamma(kd + d) - std::lgamma(kd)));
    }

    auto choose = [](std::size_t a, std::size_t b) {
        double c = 1.0;
        for (std::size_t i = 1; i <= b; ++i)
            c = c * static_cast<double>(a - b + i) / static_cast<double>(i);
        return std::round(c);
    };

    BinomialMixture mix;
    mix.weights.resize(n + 1);
    CompensatedSum total;
    mix.min_weight = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
        // Extended precision for the alternating sum; the compensated
        // total then checks how much survived the cancellation.
        long double inner = 0.0L;
        long double inner_comp = 0.0L;
        for (std::size_t j = 0; j <= n - k; ++j) {
            const long double sign = (j % 2 == 0) ? 1.0L : -1.0L;
            const long double y = sign * choose(n - k, j) * moments[k + j] - inner_comp;
            const long double t = inner + y;
            inner_comp = (t - inner) - y;
            inner = t;
        }
        const double w = static_cast<double>(choose(n, k) * inner);
        mix.weights[k] = w;
        total.add(w);
        mix.min_weight = std::min(mix.min_weight, w);
    }
    mix.weight_sum = total.value();
    if (mix.min_weight < -1e-6)
        throw CancellationError("binomial mixture weight " + std::to_string(mix.min_weight) +
                                " below -1e-6; reduce the order");
    return mix;
}

double
md_binomial_mixture(const BinomialMixture& mixture, double x)
{
    if (!(x > 0.0 && x < 1.0))
        throw InvalidArgument("reliability level x must lie in (0, 1)");
    const std::size_t n = mixture.weights.size() - 1;
    const double nx = static_cast<double>(n) * x;
    // Grid values such as 0.15 * 20 land a few ulps off the integer.
    const double snapped = std::abs(nx - std::round(nx)) < 1e-9 * std::max(1.0, nx) ? std::round(nx) : nx;
    CompensatedSum tail;
    for (std::size_t k = 0; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        if (kd > snapped)
            tail.add(mixture.weights[k]);
        else if (kd == snapped)
            tail.add(0.5 * mixture.weights[k]);
    }
    return probability_clamp(tail.value());
}

double
md_binomial_mixture(const NetworkParams& params, SirThreshold theta, double x, std::size_t n)
{
    return md_binomial_mixture(binomial_mixture_weights(params, theta, n), x);
}

double
levy_interference_ccdf(const NetworkParams& params, double x)
{
    require_alpha4(params, "Levy interference law");
    if (!(x > 0.0))
        throw InvalidArgument("interference level must be positive");
    return special::erf_real(std::pow(kPi, 1.5) * params.density() / (2.0 * std::sqrt(x)));
}

namespace {

double
threshold_ccdf_erfc(const NetworkParams& params, double t, double outage_scale)
{
    const double r = params.link_distance();
    const double arg = std::sqrt(t / outage_scale) * std::pow(kPi, 1.5) * params.density() * r * r / 2.0;
    return special::erfc_real(arg);
}

} // namespace

double
threshold_ccdf_ultrareliable(const NetworkParams& params, const ReliabilityTarget& target, SirThreshold t)
{
    require_alpha4(params, "ultrareliable threshold law");
    return threshold_ccdf_erfc(params, t.value(), target.epsilon());
}

double
threshold_ccdf_partial_info(const NetworkParams& params, const ReliabilityTarget& target, SirThreshold t)
{
    require_alpha4(params, "partial-information threshold law");
    return threshold_ccdf_erfc(params, t.value(), target.log_inverse_nu());
}

double
log_rate_constant(const NetworkParams& params, const ReliabilityTarget& target)
{
    const double lam = params.density();
    const double r2 = params.link_distance() * params.link_distance();
    return std::pow(kPi, 3) * lam * lam * r2 * r2 / (4.0 * target.log_inverse_nu());
}

double
log_rate_integral(double C)
{
    if (!(C > 0.0))
        throw InvalidArgument("log-rate constant must be positive");
    auto integrand = [C](double v) { return std::exp(-v * v) * std::log1p(v * v / C); };
    std::vector<double> breaks{0.0, 0.5, 1.0, 2.0, 3.0, 4.5, 6.0, 9.0};
    const double s = std::sqrt(C);
    for (double p : {0.25 * s, s, 4.0 * s})
        if (p < 9.0)
            breaks.push_back(p);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const auto result = quad::gauss_kronrod(integrand, breaks, 1e-15);
    if (result.error > 1e-10)
        throw QuadratureFailure("log-rate integral did not converge");
    return 2.0 / std::sqrt(kPi) * result.value;
}

double
log_rate_closed_form(double C)
{
    if (!(C > 0.0))
        throw InvalidArgument("log-rate constant must be positive");
    const double f22 = special::hyp2f2_11_3half2(C).value;
    return -2.0 * C * f22 + kPi * special::erfi(std::sqrt(C)) -
           (std::numbers::egamma + 2.0 * std::numbers::ln2 + std::log(C));
}

LogRateResult
expected_log_rate(const NetworkParams& params, const ReliabilityTarget& target, LogRateMethod method)
{
    require_alpha4(params, "expected log rate");
    const double C = log_rate_constant(params, target);
    if (method == LogRateMethod::closed_form) {
        if (C <= kClosedFormLimit)
            return {log_rate_closed_form(C), LogRateMethod::closed_form, false};
        return {log_rate_integral(C), LogRateMethod::quadrature, true};
    }
    return {log_rate_integral(C), LogRateMethod::quadrature, false};
}

ThroughputDensities
throughput_rate_control(const NetworkParams& params, const ReliabilityTarget& target, double mean_log_rate)
{
    if (!(mean_log_rate >= 0.0))
        throw InvalidArgument("mean log rate must be non-negative");
    const double s_rel = params.density() * mean_log_rate;
    return {s_rel * target.nu(), s_rel};
}

ThroughputDensities
throughput_rate_control(const NetworkParams& params, const ReliabilityTarget& target)
{
    return throughput_rate_control(params, target,
                                   expected_log_rate(params, target, LogRateMethod::quadrature).value);
}

ThroughputDensities
throughput_deterministic(const NetworkParams& params, SirThreshold theta, const ReliabilityTarget& target)
{
    const double rate = params.density() * std::log1p(theta.value());
    if (rate == 0.0)
        return {0.0, 0.0};
    const double ps = standard_success_probability(params, theta);
    const double md = md_gil_pelaez(params, theta, target.nu()).value;
    return {rate * ps, rate * md};
}

DistributionCurve
threshold_ccdf_exact(const NetworkParams& params, const ReliabilityTarget& target,
                     const std::vector<double>& t_grid)
{
    DistributionCurve curve;
    curve.label = "threshold_ccdf_exact";
    curve.abscissa = t_grid;
    curve.values.reserve(t_grid.size());
    for (double t : t_grid)
        curve.values.push_back(md_gil_pelaez(params, SirThreshold(t), target.nu()).value);
    return curve;
}

DistributionCurve
md_curve_gil_pelaez(const NetworkParams& params, SirThreshold theta, const std::vector<double>& x_grid)
{
    DistributionCurve curve;
    curve.label = "md_gil_pelaez";
    curve.abscissa = x_grid;
    curve.values.reserve(x_grid.size());
    for (double x : x_grid)
        curve.values.push_back(md_gil_pelaez(params, theta, x).value);
    return curve;
}

} // namespace metasir::analytics
