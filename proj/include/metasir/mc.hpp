#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "metasir/analytics.hpp"
#include "metasir/params.hpp"
#include "metasir/realization.hpp"
#include "metasir/sampling.hpp"

namespace metasir::mc {

struct McConfig
{
    std::size_t n_realizations = 10000;
    std::uint64_t master_seed = 1;
    double truncation_tol = sampling::kDefaultTruncationTol;
    std::optional<unsigned> worker_hint;
    sampling::FarField far_field = sampling::FarField::mean_completion;
};

struct McEstimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::size_t resample_count = 0;
};

struct McCurve
{
    /// values are empirical ccdf points; std_errors are binomial.
    analytics::DistributionCurve curve;
    std::size_t n = 0;
    std::size_t resample_count = 0;

    McEstimate at(std::size_t i) const;
};

/// Number of worker threads a config resolves to.
unsigned resolve_workers(const McConfig& cfg);

/// Mean of P_s(theta) over typical-link realizations, the standard
/// success probability.
McEstimate estimate_success_probability(const NetworkParams& params, SirThreshold theta, const McConfig& cfg);

/// P(P_s(theta) > x) over typical-link realizations.
McCurve estimate_md(const NetworkParams& params, SirThreshold theta, const std::vector<double>& x_grid,
                    const McConfig& cfg);

/// Which interferer knowledge the per-realization threshold uses.
struct InfoMode
{
    enum class Kind
    {
        full,
        k_nearest,
        partial_info_limit,
    };

    Kind kind = Kind::full;
    std::size_t k = 1;

    static InfoMode full() { return {Kind::full, 1}; }
    static InfoMode k_nearest(std::size_t k) { return {Kind::k_nearest, k}; }
    static InfoMode partial_info_limit() { return {Kind::partial_info_limit, 1}; }
};

/// P(T > t) with T from the chosen estimator. Realizations with fewer than
/// k interferers are resampled and counted.
McCurve estimate_threshold_ccdf(const NetworkParams& params, const ReliabilityTarget& target,
                                const std::vector<double>& t_grid, const McConfig& cfg,
                                InfoMode info = InfoMode::full());

/// Per-realization thresholds for several estimators on the same
/// realizations. samples[m][i] is estimator m on realization i.
struct PairedThresholds
{
    std::vector<InfoMode> modes;
    std::vector<std::vector<double>> samples;
    std::size_t resample_count = 0;
};

PairedThresholds paired_thresholds(const NetworkParams& params, const ReliabilityTarget& target,
                                   const std::vector<InfoMode>& modes, const McConfig& cfg);

/// Guard band around nu inside which the two indicators are not compared.
inline constexpr double kDualityGuardBand = 1e-9;

struct DualityReport
{
    std::size_t n = 0;
    std::size_t violations = 0;
    std::size_t guard_band_exclusions = 0;
    std::size_t resample_count = 0;
};

/// Compares 1{P_s(theta) > nu} with 1{T(nu) > theta} realization by
/// realization.
DualityReport verify_duality(const NetworkParams& params, SirThreshold theta, const ReliabilityTarget& target,
                             const McConfig& cfg);

struct BoundCheck
{
    std::size_t k = 0;
    std::size_t n = 0;
    /// Realizations where the k-nearest value exceeds the exact threshold.
    std::size_t violations = 0;
    /// Largest ratio k-nearest value / exact threshold seen.
    double max_ratio = 0.0;
};

/// Paired comparison of threshold_lower_bound_k against the exact
/// threshold, one entry per k.
std::vector<BoundCheck> check_bound_dominance(const NetworkParams& params, const ReliabilityTarget& target,
                                              const std::vector<std::size_t>& ks, const McConfig& cfg);

struct ThroughputEstimate
{
    McEstimate mean_log_rate;
    analytics::ThroughputDensities rate_control;
    McEstimate rate_control_S;
    McEstimate rate_control_S_rel;
    /// max |P_s(T) - nu| over realizations.
    double max_reliability_gap = 0.0;

    std::vector<double> theta_grid;
    std::vector<McEstimate> deterministic_S;
    std::vector<McEstimate> deterministic_S_rel;
};

/// Monte Carlo throughput densities: rate control with the per-realization
/// threshold, and a deterministic threshold for each theta in the grid.
ThroughputEstimate estimate_throughput(const NetworkParams& params, const ReliabilityTarget& target,
                                       const std::vector<double>& theta_grid, const McConfig& cfg);

/// Interference without fading, one value per realization.
std::vector<double> sample_interference(const NetworkParams& params, const McConfig& cfg);

McCurve estimate_interference_ccdf(const NetworkParams& params, const std::vector<double>& x_grid,
                                   const McConfig& cfg);

/// All links of a rectangular window; each link sees every other
/// transmitter as an interferer. Links near the border see truncated
/// interference. A link with no interferer gets reliability 1 and an
/// infinite threshold.
std::vector<LinkRecord> realization_report(const NetworkParams& params, SirThreshold theta,
                                           const ReliabilityTarget& target, const sampling::Rectangle& window,
                                           std::uint64_t seed);

struct Figure2Series
{
    double density = 0.0;
    analytics::DistributionCurve exact;
    analytics::DistributionCurve partial_info_approx;
    McCurve full_mc;
    std::vector<std::size_t> ks;
    std::vector<McCurve> k_nearest;
};

/// Per density: the exact threshold ccdf by Gil-Pelaez inversion, the
/// partial-information erfc approximation, and empirical ccdfs of the
/// full and k-nearest thresholds on paired realizations.
std::vector<Figure2Series> figure2_data(const NetworkParams& params, const ReliabilityTarget& target,
                                        const std::vector<double>& densities, const std::vector<std::size_t>& ks,
                                        const std::vector<double>& t_grid, const McConfig& cfg);

struct Figure3Row
{
    double theta = 0.0;
    analytics::ThroughputDensities rate_control;
    analytics::ThroughputDensities deterministic;
    McEstimate rate_control_S_mc;
    McEstimate rate_control_S_rel_mc;
    McEstimate deterministic_S_mc;
    McEstimate deterministic_S_rel_mc;
};

std::vector<Figure3Row> figure3_data(const NetworkParams& params, const ReliabilityTarget& target,
                                     const std::vector<double>& theta_grid, const McConfig& cfg);

} // namespace metasir::mc
