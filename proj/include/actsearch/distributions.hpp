#pragma once

#include <string>
#include <variant>
#include <vector>

#include "actsearch/random.hpp"

namespace actsearch {

struct Exponential {
  double rate;
};

struct Gaussian {
  double mean;
  double variance;
};

struct Bernoulli {
  double p;
};

// Finite support {0, 1, ..., n-1}.
struct FiniteDiscrete {
  std::vector<double> probs;
};

// Observation distribution of one cell. Parameters are validated on
// construction; a DistributionSpec is immutable afterwards.
class DistributionSpec {
 public:
  using Family = std::variant<Exponential, Gaussian, Bernoulli, FiniteDiscrete>;

  DistributionSpec(Exponential e);
  DistributionSpec(Gaussian g);
  DistributionSpec(Bernoulli b);
  DistributionSpec(FiniteDiscrete d);

  const Family& family() const noexcept { return family_; }
  bool is_discrete() const noexcept;
  std::string name() const;

  // Parameter-wise equality within `tol`.
  bool approx_equal(const DistributionSpec& other, double tol = 1e-12) const;

 private:
  Family family_;
};

// Natural-log density (continuous) or mass (discrete) at y.
// Discrete families require y to be an integer index in the support and
// throw DomainError otherwise. Zero-mass outcomes give -infinity.
double log_density(const DistributionSpec& spec, double y);

double sample(const DistributionSpec& spec, RandomStream& rng);

// D(p || q) in nats. Closed forms are used for same-family pairs, exact
// summation for discrete pairs and adaptive quadrature for continuous
// cross-family pairs. Throws AbsoluteContinuityError when infinite.
double kl_divergence(const DistributionSpec& p, const DistributionSpec& q);

// Always takes the generic route (quadrature or summation); exposed so the
// closed forms can be checked against it.
double kl_divergence_numeric(const DistributionSpec& p, const DistributionSpec& q);

// One cell's absent/present pair (f_m, g_m) with both divergences cached.
class ProcessModel {
 public:
  // Throws AbsoluteContinuityError unless f and g are mutually
  // absolutely continuous.
  ProcessModel(DistributionSpec absent, DistributionSpec present);

  const DistributionSpec& absent() const noexcept { return absent_; }
  const DistributionSpec& present() const noexcept { return present_; }
  double d_gf() const noexcept { return d_gf_; }  // D(g || f)
  double d_fg() const noexcept { return d_fg_; }  // D(f || g)

  // log g(y) - log f(y)
  double llr(double y) const;

 private:
  DistributionSpec absent_;
  DistributionSpec present_;
  double d_gf_;
  double d_fg_;
};

}  // namespace actsearch
