#pragma once

namespace metasir {

/// Poisson bipolar network: transmitter density, path-loss exponent and
/// link distance. Validated on construction.
class NetworkParams
{
  public:
    NetworkParams(double density, double path_loss_exponent, double link_distance);

    double density() const { return density_; }
    double path_loss_exponent() const { return alpha_; }
    double link_distance() const { return link_distance_; }
    /// 2 / alpha, always in (0, 1).
    double delta() const { return 2.0 / alpha_; }

    /// R^alpha, the inverse of the mean desired-signal power.
    double link_gain_inverse() const;

    NetworkParams with_density(double density) const;

  private:
    double density_;
    double alpha_;
    double link_distance_;
};

/// Target reliability nu = 1 - epsilon. Either side may be the primary
/// input; the other is derived, which keeps tiny outages exact.
class ReliabilityTarget
{
  public:
    static ReliabilityTarget from_nu(double nu);
    static ReliabilityTarget from_epsilon(double epsilon);

    double nu() const { return nu_; }
    double epsilon() const { return epsilon_; }
    /// log(1 / (1 - epsilon)), accurate for epsilon near zero.
    double log_inverse_nu() const;

  private:
    ReliabilityTarget(double nu, double epsilon) : nu_(nu), epsilon_(epsilon) {}

    double nu_;
    double epsilon_;
};

/// SIR threshold on the linear scale.
class SirThreshold
{
  public:
    explicit SirThreshold(double value);
    static SirThreshold from_db(double db);

    double value() const { return value_; }

    friend bool operator==(SirThreshold, SirThreshold) = default;

  private:
    double value_;
};

} // namespace metasir
