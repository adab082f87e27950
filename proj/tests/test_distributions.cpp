#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "actsearch/distributions.hpp"
#include "actsearch/errors.hpp"
#include "test_support.hpp"

using namespace actsearch;
using actsearch::testing::rel_err;

TEST_SUITE("observation-models") {
  TEST_CASE("log_density matches hand-evaluated values") {
    CHECK(log_density(Exponential{1.0}, 0.0) == doctest::Approx(0.0));
    CHECK(log_density(Gaussian{0.0, 1.0}, 0.0) == doctest::Approx(-0.9189385332046727).epsilon(1e-12));
    CHECK(log_density(Bernoulli{0.25}, 1.0) == doctest::Approx(-1.3862943611198906).epsilon(1e-12));
    CHECK(log_density(Exponential{2.0}, -1.0) == -std::numeric_limits<double>::infinity());
  }

  TEST_CASE("discrete outcomes outside the support are domain errors") {
    CHECK_THROWS_AS(log_density(Bernoulli{0.5}, 2.0), DomainError);
    CHECK_THROWS_AS(log_density(Bernoulli{0.5}, 0.5), DomainError);
    CHECK_THROWS_AS(log_density(FiniteDiscrete{{0.2, 0.8}}, 2.0), DomainError);
    CHECK_THROWS_AS(log_density(FiniteDiscrete{{0.2, 0.8}}, -1.0), DomainError);
    CHECK(log_density(FiniteDiscrete{{0.0, 1.0}}, 0.0) == -std::numeric_limits<double>::infinity());
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DistributionSpec(Exponential{0.0}), ConfigError);
    CHECK_THROWS_AS(DistributionSpec(Gaussian{0.0, -1.0}), ConfigError);
    CHECK_THROWS_AS(DistributionSpec(Bernoulli{1.0}), ConfigError);
    CHECK_THROWS_AS(DistributionSpec(FiniteDiscrete{{0.5, 0.4}}), ConfigError);
    CHECK_THROWS_AS(DistributionSpec(FiniteDiscrete{{}}), ConfigError);
    CHECK_NOTHROW(DistributionSpec(FiniteDiscrete{{0.5, 0.5 + 5e-13}}));
  }

  TEST_CASE("sampling") {
    RandomStream rng(7);
    for (int i = 0; i < 100; ++i) CHECK(sample(FiniteDiscrete{{1.0}}, rng) == 0.0);

    const double rate = 2.5;
    double sum = 0.0;
    constexpr int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += sample(Exponential{rate}, rng);
    CHECK(rel_err(sum / n, 1.0 / rate) < 0.01);

    RandomStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) REQUIRE(sample(Gaussian{1.0, 2.0}, a) == sample(Gaussian{1.0, 2.0}, b));
  }

  TEST_CASE("KL closed forms") {
    // Quadrature oracle (scipy): 5.2783635021
    CHECK(kl_divergence(Exponential{10.0}, Exponential{0.0188}) == doctest::Approx(5.2783635021).epsilon(1e-9));
    CHECK(kl_divergence(Gaussian{0.3, 2.0}, Gaussian{0.3, 2.0}) == 0.0);
    CHECK(kl_divergence(FiniteDiscrete{{0.5, 0.5}}, FiniteDiscrete{{0.25, 0.75}}) ==
          doctest::Approx(0.14384103622589042).epsilon(1e-12));
  }

  TEST_CASE("KL of the exponential pair agrees with a Monte Carlo mean log-ratio") {
    const ProcessModel model(Exponential{0.0188}, Exponential{10.0});
    RandomStream rng(2024);
    double sum = 0.0;
    constexpr int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += model.llr(sample(model.present(), rng));
    CHECK(rel_err(sum / n, model.d_gf()) < 0.01);
  }

  TEST_CASE("cross-family KL by quadrature") {
    // scipy quad oracle: D(Exp(1) || N(1,1)) = 0.4189385332
    CHECK(kl_divergence(Exponential{1.0}, Gaussian{1.0, 1.0}) == doctest::Approx(0.4189385332046727).epsilon(1e-8));
    CHECK_THROWS_AS(kl_divergence(Gaussian{0.0, 1.0}, Exponential{1.0}), AbsoluteContinuityError);
    CHECK_THROWS_AS(kl_divergence(Bernoulli{0.5}, Gaussian{0.0, 1.0}), AbsoluteContinuityError);
    CHECK_THROWS_AS(kl_divergence(FiniteDiscrete{{0.5, 0.5}}, FiniteDiscrete{{1.0, 0.0}}), AbsoluteContinuityError);
    CHECK(kl_divergence(Bernoulli{0.3}, FiniteDiscrete{{0.7, 0.3}}) == doctest::Approx(0.0));
  }

  TEST_CASE("closed forms agree with the generic route on random same-family pairs") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> rate(0.1, 10.0), mean(-3.0, 3.0), var(0.2, 5.0), prob(0.02, 0.98);
    for (int i = 0; i < 100; ++i) {
      const DistributionSpec pairs[][2] = {
          {Exponential{rate(gen)}, Exponential{rate(gen)}},
          {Gaussian{mean(gen), var(gen)}, Gaussian{mean(gen), var(gen)}},
          {Bernoulli{prob(gen)}, Bernoulli{prob(gen)}},
      };
      for (const auto& pq : pairs) {
        const double closed = kl_divergence(pq[0], pq[1]);
        const double numeric = kl_divergence_numeric(pq[0], pq[1]);
        INFO(pq[0].name() << " closed=" << closed << " numeric=" << numeric);
        CHECK(std::abs(closed - numeric) <= 1e-3 * closed + 1e-8);
      }
    }
  }

  TEST_CASE("KL is nonnegative and zero only for equal specs") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> rate(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
      const DistributionSpec p = Exponential{rate(gen)};
      const DistributionSpec q = Exponential{rate(gen)};
      const double d = kl_divergence(p, q);
      CHECK(d >= 0.0);
      CHECK((d == 0.0) == p.approx_equal(q));
      CHECK(kl_divergence(p, p) == 0.0);
    }
  }

  TEST_CASE("ProcessModel caches both divergences") {
    const ProcessModel m(Gaussian{0.0, 1.0}, Gaussian{1.5, 2.0});
    CHECK(m.d_gf() == doctest::Approx(kl_divergence(m.present(), m.absent())).epsilon(1e-10));
    CHECK(m.d_fg() == doctest::Approx(kl_divergence(m.absent(), m.present())).epsilon(1e-10));
    CHECK(m.d_gf() > 0.0);
    CHECK_THROWS_AS(ProcessModel(Exponential{1.0}, Gaussian{0.0, 1.0}), AbsoluteContinuityError);
    CHECK_THROWS_AS(ProcessModel(FiniteDiscrete{{0.5, 0.5, 0.0}}, FiniteDiscrete{{0.2, 0.3, 0.5}}), AbsoluteContinuityError);
  }
}
