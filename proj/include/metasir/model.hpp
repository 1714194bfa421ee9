#pragma once

#include <cstddef>

#include "metasir/params.hpp"
#include "metasir/profile.hpp"
#include "metasir/realization.hpp"

namespace metasir {

/// -log P_s(t) = sum_n log1p(t R^a r_n^{-a}). Terms with t R^a r_n^{-a} below
/// 1e-3 (and the tail moments) are summed through the four-term log1p
/// series, which is exact to double precision there.
double neg_log_conditional_success(const InterfererProfile& profile, const NetworkParams& params,
                               SirThreshold t);

/// Conditional success probability of the typical link given the
/// interferers, with Rayleigh fading averaged out. 1 at t = 0.
double conditional_success(const InterfererProfile& profile, const NetworkParams& params,
                           SirThreshold t);
double conditional_success(const Realization& realization, const NetworkParams& params,
                           SirThreshold t);

/// The SIR threshold at which the conditional success probability equals
/// nu. Bisection on the log-domain equation; the returned value is the
/// lower end of the final bracket, so the reliability at it is >= nu.
/// Throws EmptyRealization when there is nothing to interfere.
SirThreshold threshold_for_reliability(const InterfererProfile& profile, const NetworkParams& params,
                                       const ReliabilityTarget& target);
SirThreshold threshold_for_reliability(const Realization& realization, const NetworkParams& params,
                                       const ReliabilityTarget& target);

/// Relative width of the final bisection bracket.
inline constexpr double kThresholdRelTol = 1e-10;

InterferencePower interference_no_fading(const InterfererProfile& profile);
InterferencePower interference_no_fading(const Realization& realization);

/// Interference from the k nearest interferers only.
InterferencePower interference_nearest_k(const InterfererProfile& profile, std::size_t k);

/// Threshold from the arithmetic/geometric-mean relaxation over the k
/// nearest interferers:
///   k R^{-a} ((1/(1-eps))^{1/k} - 1) / sum_{n<=k} R_n^{-a}.
/// A guaranteed lower bound on the exact threshold when k covers every
/// interferer; for smaller k the ignored interferers can push the exact
/// threshold below it, and the value is an approximation.
SirThreshold threshold_lower_bound_k(const InterfererProfile& profile, const NetworkParams& params,
                                     const ReliabilityTarget& target, std::size_t k);
SirThreshold threshold_lower_bound_k(const Realization& realization, const NetworkParams& params,
                                     const ReliabilityTarget& target, std::size_t k);

/// log(1/(1-eps)) R^{-a} / I. Always a lower bound on the exact threshold
/// when I is the full interference.
SirThreshold threshold_partial_info(InterferencePower interference, const NetworkParams& params,
                                    const ReliabilityTarget& target);

/// Spectral efficiency log(1 + t) in nats.
double link_rate(SirThreshold t);

} // namespace metasir
