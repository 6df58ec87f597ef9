#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "nao/chi_prior.hpp"
#include "nao/errors.hpp"
#include "support/oracles.hpp"

using namespace nao;

namespace {

// High-resolution argmax of log_pdf via golden-section refinement of a
// coarse grid scan. Independent of the mode_radius formula, but limited to
// about sqrt(machine-eps) relative precision: near a quadratic peak the
// function values themselves cannot separate radii any finer.
double argmax_log_pdf(const PriorSpec& spec, double lo, double hi) {
  const int coarse = 4096;
  double best_r = lo;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= coarse; ++i) {
    const double r = lo + (hi - lo) * i / coarse;
    const double v = log_pdf(spec, r);
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  double a = best_r - (hi - lo) / coarse;
  double b = best_r + (hi - lo) / coarse;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  while (b - a > 1e-13 * best_r) {
    const double c = b - gr * (b - a);
    const double d = a + gr * (b - a);
    if (log_pdf(spec, c) < log_pdf(spec, d))
      a = c;
    else
      b = d;
  }
  return 0.5 * (a + b);
}

// Root of the radial derivative of the displayed density's log,
// (d-1)/r - r, located by bisection. Hand-derived from the density itself,
// so it localizes the peak to machine precision where the value-based
// argmax cannot.
double derivative_zero_radius(std::int64_t d, double lo, double hi) {
  auto slope = [&](double r) { return double(d - 1) / r - r; };
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("chi_prior") {

TEST_CASE("PriorSpec rejects d < 2") {
  CHECK_THROWS_AS(PriorSpec::make(1), Error);
  CHECK_THROWS_AS(PriorSpec::make(0), Error);
  CHECK_THROWS_AS(PriorSpec::make(-3), Error);
}

TEST_CASE("log_normalizer is finite up to d = 2^20") {
  for (std::int64_t d : {2L, 350L, 4096L, 1L << 20}) {
    const auto spec = PriorSpec::make(d);
    CHECK(std::isfinite(spec.log_normalizer));
  }
}

TEST_CASE("mode_radius matches the density's argmax") {
  for (std::int64_t d : {2L, 16L, 256L, 4096L, 16384L}) {
    const auto spec = PriorSpec::make(d);
    // Value-based argmax localizes to ~sqrt(eps); the derivative-zero
    // bisection pins the same peak to 1e-12 relative.
    const double found = argmax_log_pdf(spec, 0.5 * spec.mode_radius,
                                        1.5 * spec.mode_radius + 1.0);
    CHECK(oracles::rel_err(spec.mode_radius, found) < 5e-8);
    const double root = derivative_zero_radius(d, 0.5 * spec.mode_radius,
                                               1.5 * spec.mode_radius + 1.0);
    CHECK(oracles::rel_err(spec.mode_radius, root) < 1e-12);
    CHECK(spec.mode_radius ==
          doctest::Approx(std::sqrt(double(d - 1))).epsilon(1e-15));
  }
}

TEST_CASE("log_gamma agrees with the libm route to 1e-12 relative") {
  // Log-spaced sweep of [1, 1e7]; std::lgamma is the independent oracle.
  for (double x = 1.0; x <= 1e7; x *= 1.37) {
    const double got = detail::log_gamma(x);
    const double want = std::lgamma(x);
    CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
  CHECK(detail::log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(detail::log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("log_pdf closed-form values") {
  const auto chi2 = PriorSpec::make(2);
  CHECK(log_pdf(chi2, 1.0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(log_pdf(chi2, 0.0) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(log_pdf(chi2, -1.0), Error);
  CHECK_THROWS_AS(log_pdf(chi2, std::nan("")), Error);
}

TEST_CASE("log_pdf peaks within 0.01 of 128 at d = 16384") {
  const auto spec = PriorSpec::make(16384);
  const double peak = argmax_log_pdf(spec, 120.0, 136.0);
  CHECK(std::abs(peak - 128.0) < 0.01);
}

TEST_CASE("nll values and origin sentinel") {
  const auto chi2 = PriorSpec::make(2);
  Vector unit(2);
  unit << 1.0, 0.0;
  CHECK(nll(chi2, unit) == doctest::Approx(0.5).epsilon(1e-12));
  Vector origin = Vector::Zero(2);
  CHECK(nll(chi2, origin) == std::numeric_limits<double>::infinity());

  const auto big = PriorSpec::make(16384);
  const double w_min = nll_at_radius(big, std::sqrt(16383.0));
  CHECK(w_min > 0.0);
  CHECK(w_min < 2.0);
  // mpmath (50 digits): 0.57235985635122386853...
  CHECK(w_min == doctest::Approx(0.5723598563512239).epsilon(1e-9));
}

TEST_CASE("nll positive over a fine radius grid") {
  for (std::int64_t d : {2L, 4L, 16L, 256L, 4096L, 16384L}) {
    const auto spec = PriorSpec::make(d);
    double min_nll = std::numeric_limits<double>::infinity();
    const double hi = spec.mode_radius + 12.0;
    for (int i = 1; i <= 20000; ++i)
      min_nll = std::min(min_nll, nll_at_radius(spec, hi * i / 20000.0));
    CHECK(min_nll > 0.0);
  }
}

TEST_CASE("normalization: exp(log_pdf) integrates to 1") {
  for (std::int64_t d : {2L, 8L, 64L, 1024L}) {
    const auto spec = PriorSpec::make(d);
    auto density = [&](double r) {
      return r > 0.0 ? std::exp(log_pdf(spec, r)) : 0.0;
    };
    // Split at the mode: the integrand is a sharp spike for large d.
    const double mode = spec.mode_radius;
    const double total = oracles::integrate(density, 0.0, mode, 1e-10) +
                         oracles::integrate(density, mode, mode + 12.0, 1e-10);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("nll_gradient closed-form values") {
  const auto chi2 = PriorSpec::make(2);
  Vector at_mode(2);
  at_mode << 1.0, 0.0;
  CHECK(nll_gradient(chi2, at_mode).norm() == doctest::Approx(0.0));
  Vector outside(2);
  outside << 2.0, 0.0;
  const Vector g = nll_gradient(chi2, outside);
  CHECK(g[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(nll_gradient(chi2, Vector::Zero(2)), Error);
}

TEST_CASE("nll_gradient vanishes on the mode sphere for any d") {
  RngState rng(11);
  for (std::int64_t d : {2L, 7L, 64L, 1023L}) {
    const auto spec = PriorSpec::make(d);
    Vector z = rescale_to_norm(sample_seed(spec, rng), spec.mode_radius);
    CHECK(nll_gradient(spec, z).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("nll_gradient matches central differences") {
  RngState rng(202);
  for (std::int64_t d : {2L, 16L, 256L}) {
    const auto spec = PriorSpec::make(d);
    auto f = [&](const Vector& z) { return nll(spec, z); };
    for (int trial = 0; trial < 100; ++trial) {
      Vector z = sample_seed(spec, rng);
      const Vector analytic = nll_gradient(spec, z);
      const double h = 1e-6 * std::max(1.0, z.norm());
      const Vector numeric = oracles::central_difference_gradient(f, z, h);
      CHECK((analytic - numeric).norm() <=
            1e-6 * std::max(1.0, numeric.norm()));
    }
  }
}

TEST_CASE("sample_seed concentration at d = 16384") {
  const auto spec = PriorSpec::make(16384);
  RngState rng(7);
  const int draws = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double norm = sample_seed(spec, rng).norm();
    CHECK(norm >= 124.0);
    CHECK(norm <= 132.0);
    sum += norm;
    sum_sq += norm * norm;
  }
  const double mean = sum / draws;
  const double sd = std::sqrt(sum_sq / draws - mean * mean);
  CHECK(sd >= 0.6);
  CHECK(sd <= 0.82);
}

TEST_CASE("sample_seed is deterministic per seed") {
  const auto spec = PriorSpec::make(64);
  RngState a(99), b(99);
  const Vector za = sample_seed(spec, a);
  const Vector zb = sample_seed(spec, b);
  CHECK((za.array() == zb.array()).all());
}

TEST_CASE("chi_2 mean norm approaches sqrt(pi/2)") {
  const auto spec = PriorSpec::make(2);
  RngState rng(3);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) sum += sample_seed(spec, rng).norm();
  const double expected = std::sqrt(std::acos(-1.0) / 2.0);
  CHECK(oracles::rel_err(sum / draws, expected) < 0.01);
}

TEST_CASE("rescale_to_norm") {
  Vector z(2);
  z << 3.0, 4.0;
  const Vector scaled = rescale_to_norm(z, 10.0);
  CHECK(scaled[0] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(scaled[1] == doctest::Approx(8.0).epsilon(1e-12));

  const auto spec = PriorSpec::make(16384);
  RngState rng(5);
  Vector seed = rescale_to_norm(sample_seed(spec, rng), 128.0);
  CHECK(oracles::rel_err(rescale_to_norm(seed, 128.0).norm(), 128.0) < 1e-12);
  CHECK((rescale_to_norm(seed, 128.0) - seed).norm() < 1e-9);
  // Away from the mode the prior only gets worse.
  CHECK(nll(spec, rescale_to_norm(seed, 64.0)) > nll(spec, seed));

  CHECK_THROWS_AS(rescale_to_norm(Vector::Zero(3), 1.0), Error);
  CHECK_THROWS_AS(rescale_to_norm(z, 0.0), Error);
}

}  // TEST_SUITE
