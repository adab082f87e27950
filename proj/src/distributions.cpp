#include "actsearch/distributions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "actsearch/errors.hpp"

namespace actsearch {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const Exponential& e) {
  if (!(e.rate > 0.0) || !std::isfinite(e.rate)) throw ConfigError("exponential rate must be positive and finite");
}

void validate(const Gaussian& g) {
  if (!std::isfinite(g.mean)) throw ConfigError("gaussian mean must be finite");
  if (!(g.variance > 0.0) || !std::isfinite(g.variance)) throw ConfigError("gaussian variance must be positive and finite");
}

void validate(const Bernoulli& b) {
  if (!(b.p > 0.0 && b.p < 1.0)) throw ConfigError("bernoulli p must lie in (0, 1)");
}

void validate(const FiniteDiscrete& d) {
  if (d.probs.empty()) throw ConfigError("discrete distribution needs at least one outcome");
  double total = 0.0;
  for (double p : d.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("discrete probabilities must be nonnegative and finite");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("discrete probabilities must sum to 1");
}

// Probability vector for the discrete families.
std::vector<double> masses(const DistributionSpec& spec) {
  return std::visit(Overloaded{[](const Bernoulli& b) { return std::vector<double>{1.0 - b.p, b.p}; },
                               [](const FiniteDiscrete& d) { return d.probs; },
                               [](const auto&) -> std::vector<double> { throw DomainError("not a discrete family"); }},
                    spec.family());
}

std::size_t outcome_index(double y, std::size_t support_size) {
  if (!std::isfinite(y) || y != std::floor(y) || y < 0.0 || y >= static_cast<double>(support_size)) {
    std::ostringstream os;
    os << "observation " << y << " outside discrete support of size " << support_size;
    throw DomainError(os.str());
  }
  return static_cast<std::size_t>(y);
}

double kl_discrete(const std::vector<double>& p, const std::vector<double>& q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    const double qi = i < q.size() ? q[i] : 0.0;
    if (qi == 0.0) throw AbsoluteContinuityError("p has mass where q has none");
    d += p[i] * std::log(p[i] / qi);
  }
  return std::max(d, 0.0);
}

// Range carrying all but ~e^-60 of p's mass; the integrand is negligible
// outside it.
std::pair<double, double> effective_support(const DistributionSpec& p) {
  return std::visit(Overloaded{[](const Exponential& e) { return std::pair{0.0, 60.0 / e.rate}; },
                               [](const Gaussian& g) {
                                 const double sd = std::sqrt(g.variance);
                                 return std::pair{g.mean - 12.0 * sd, g.mean + 12.0 * sd};
                               },
                               [](const auto&) -> std::pair<double, double> { throw DomainError("not a continuous family"); }},
                    p.family());
}

double kl_quadrature(const DistributionSpec& p, const DistributionSpec& q) {
  const bool p_real_line = std::holds_alternative<Gaussian>(p.family());
  const bool q_half_line = std::holds_alternative<Exponential>(q.family());
  if (p_real_line && q_half_line) throw AbsoluteContinuityError("p has density on the negative half-line where q has none");

  auto integrand = [&](double x) {
    const double lp = log_density(p, x);
    if (lp < -700.0) return 0.0;
    return std::exp(lp) * (lp - log_density(q, x));
  };
  const auto [lo, hi] = effective_support(p);
  // Split into panels so the adaptive rule sees the bulk of the mass.
  constexpr int kPanels = 16;
  const double width = (hi - lo) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == kPanels) ? hi : a + width;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 20, 1e-12);
  }
  return std::max(total, 0.0);
}

}  // namespace

DistributionSpec::DistributionSpec(Exponential e) : family_(e) { validate(e); }
DistributionSpec::DistributionSpec(Gaussian g) : family_(g) { validate(g); }
DistributionSpec::DistributionSpec(Bernoulli b) : family_(b) { validate(b); }
DistributionSpec::DistributionSpec(FiniteDiscrete d) : family_(std::move(d)) { validate(std::get<FiniteDiscrete>(family_)); }

bool DistributionSpec::is_discrete() const noexcept {
  return std::holds_alternative<Bernoulli>(family_) || std::holds_alternative<FiniteDiscrete>(family_);
}

std::string DistributionSpec::name() const {
  return std::visit(Overloaded{[](const Exponential&) { return std::string("exponential"); },
                               [](const Gaussian&) { return std::string("gaussian"); },
                               [](const Bernoulli&) { return std::string("bernoulli"); },
                               [](const FiniteDiscrete&) { return std::string("discrete"); }},
                    family_);
}

bool DistributionSpec::approx_equal(const DistributionSpec& other, double tol) const {
  if (family_.index() != other.family_.index()) return false;
  auto close = [tol](double a, double b) { return std::abs(a - b) <= tol; };
  return std::visit(
      Overloaded{[&](const Exponential& e) { return close(e.rate, std::get<Exponential>(other.family_).rate); },
                 [&](const Gaussian& g) {
                   const auto& h = std::get<Gaussian>(other.family_);
                   return close(g.mean, h.mean) && close(g.variance, h.variance);
                 },
                 [&](const Bernoulli& b) { return close(b.p, std::get<Bernoulli>(other.family_).p); },
                 [&](const FiniteDiscrete& d) {
                   const auto& e = std::get<FiniteDiscrete>(other.family_);
                   if (d.probs.size() != e.probs.size()) return false;
                   for (std::size_t i = 0; i < d.probs.size(); ++i)
                     if (!close(d.probs[i], e.probs[i])) return false;
                   return true;
                 }},
      family_);
}

double log_density(const DistributionSpec& spec, double y) {
  return std::visit(Overloaded{[y](const Exponential& e) { return y < 0.0 ? kNegInf : std::log(e.rate) - e.rate * y; },
                               [y](const Gaussian& g) {
                                 const double z = y - g.mean;
                                 return -0.5 * std::log(2.0 * std::numbers::pi * g.variance) - z * z / (2.0 * g.variance);
                               },
                               [y](const Bernoulli& b) {
                                 return outcome_index(y, 2) == 1 ? std::log(b.p) : std::log1p(-b.p);
                               },
                               [y](const FiniteDiscrete& d) {
                                 const double p = d.probs[outcome_index(y, d.probs.size())];
                                 return p == 0.0 ? kNegInf : std::log(p);
                               }},
                    spec.family());
}

double sample(const DistributionSpec& spec, RandomStream& rng) {
  return std::visit(Overloaded{[&](const Exponential& e) { return -std::log(rng.uniform_open0()) / e.rate; },
                               [&](const Gaussian& g) {
                                 const double r = std::sqrt(-2.0 * std::log(rng.uniform_open0()));
                                 const double z = r * std::cos(2.0 * std::numbers::pi * rng.uniform());
                                 return g.mean + std::sqrt(g.variance) * z;
                               },
                               [&](const Bernoulli& b) { return rng.uniform() < b.p ? 1.0 : 0.0; },
                               [&](const FiniteDiscrete& d) {
                                 const double u = rng.uniform();
                                 double acc = 0.0;
                                 std::size_t last = 0;
                                 for (std::size_t i = 0; i < d.probs.size(); ++i) {
                                   if (d.probs[i] == 0.0) continue;
                                   last = i;
                                   acc += d.probs[i];
                                   if (u < acc) return static_cast<double>(i);
                                 }
                                 return static_cast<double>(last);
                               }},
                    spec.family());
}

double kl_divergence_numeric(const DistributionSpec& p, const DistributionSpec& q) {
  if (p.is_discrete() != q.is_discrete())
    throw AbsoluteContinuityError("KL between a discrete and a continuous distribution is infinite");
  if (p.is_discrete()) return kl_discrete(masses(p), masses(q));
  return kl_quadrature(p, q);
}

double kl_divergence(const DistributionSpec& p, const DistributionSpec& q) {
  const auto& pf = p.family();
  const auto& qf = q.family();
  if (const auto* a = std::get_if<Exponential>(&pf)) {
    if (const auto* b = std::get_if<Exponential>(&qf))
      return std::max(0.0, std::log(a->rate) - std::log(b->rate) + b->rate / a->rate - 1.0);
  }
  if (const auto* a = std::get_if<Gaussian>(&pf)) {
    if (const auto* b = std::get_if<Gaussian>(&qf)) {
      const double dm = a->mean - b->mean;
      return std::max(0.0, 0.5 * std::log(b->variance / a->variance) + (a->variance + dm * dm) / (2.0 * b->variance) - 0.5);
    }
  }
  if (const auto* a = std::get_if<Bernoulli>(&pf)) {
    if (const auto* b = std::get_if<Bernoulli>(&qf))
      return std::max(0.0, a->p * std::log(a->p / b->p) + (1.0 - a->p) * std::log((1.0 - a->p) / (1.0 - b->p)));
  }
  return kl_divergence_numeric(p, q);
}

ProcessModel::ProcessModel(DistributionSpec absent, DistributionSpec present)
    : absent_(std::move(absent)),
      present_(std::move(present)),
      d_gf_(kl_divergence(present_, absent_)),
      d_fg_(kl_divergence(absent_, present_)) {}

double ProcessModel::llr(double y) const { return log_density(present_, y) - log_density(absent_, y); }

}  // namespace actsearch
