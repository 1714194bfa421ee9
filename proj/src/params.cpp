#include "metasir/params.hpp"

#include <cmath>
#include <string>

#include "metasir/errors.hpp"

namespace metasir {

NetworkParams::NetworkParams(double density, double path_loss_exponent, double link_distance)
  : density_(density), alpha_(path_loss_exponent), link_distance_(link_distance)
{
    if (!(std::isfinite(density) && density > 0.0))
        throw InvalidArgument("density must be positive");
    if (!(std::isfinite(path_loss_exponent) && path_loss_exponent > 2.0))
        throw InvalidArgument("path_loss_exponent must exceed 2");
    if (!(std::isfinite(link_distance) && link_distance > 0.0))
        throw InvalidArgument("link_distance must be positive");
}

double
NetworkParams::link_gain_inverse() const
{
    return std::pow(link_distance_, alpha_);
}

NetworkParams
NetworkParams::with_density(double density) const
{
    return NetworkParams(density, alpha_, link_distance_);
}

ReliabilityTarget
ReliabilityTarget::from_nu(double nu)
{
    if (!(nu > 0.0 && nu < 1.0))
        throw InvalidArgument("nu must lie in (0, 1)");
    return ReliabilityTarget(nu, 1.0 - nu);
}

ReliabilityTarget
ReliabilityTarget::from_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgument("epsilon must lie in (0, 1)");
    return ReliabilityTarget(1.0 - epsilon, epsilon);
}

double
ReliabilityTarget::log_inverse_nu() const
{
    return -std::log1p(-epsilon_);
}

SirThreshold::SirThreshold(double value)
  : value_(value)
{
    if (!(value >= 0.0) || std::isnan(value))
        throw InvalidArgument("SIR threshold must be non-negative");
}

SirThreshold
SirThreshold::from_db(double db)
{
    if (!std::isfinite(db))
        throw InvalidArgument("SIR threshold in dB must be finite");
    return SirThreshold(std::pow(10.0, db / 10.0));
}

} // namespace metasir
