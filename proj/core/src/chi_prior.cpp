#include "nao/chi_prior.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nao/errors.hpp"

namespace nao {

namespace detail {

double log_gamma(double x) {
  // Lanczos, g = 607/128, N = 15 (Godfrey's coefficients).
  static constexpr double kG = 607.0 / 128.0;
  static constexpr double kCoeffs[15] = {
      0.99999999999999709182,     57.156235665862923517,
      -59.597960355475491248,     14.136097974741747174,
      -0.49191381609762019978,    0.33994649984811888699e-4,
      0.46523628927048575665e-4,  -0.98374475304879564677e-4,
      0.15808870322491248884e-3,  -0.21026444172410488319e-3,
      0.21743961811521264320e-3,  -0.16431810653676389022e-3,
      0.84418223983852743293e-4,  -0.26190838401581408670e-4,
      0.36899182659531622704e-5,
  };
  if (!(x > 0.0)) throw_invalid("log_gamma: argument must be positive");

  double series = kCoeffs[0];
  for (int k = 1; k < 15; ++k) series += kCoeffs[k] / (x - 1.0 + k);
  const double t = x + kG - 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;  // log(2*pi)/2
  return half_log_two_pi + (x - 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace detail

PriorSpec PriorSpec::make(std::int64_t d) {
  if (d < 2) {
    // d = 1 degenerates: the chi_1 density peaks at r = 0 and there is no
    // mode sphere to work with.
    throw_invalid("PriorSpec: dimension must be >= 2");
  }
  const double half_d = 0.5 * static_cast<double>(d);
  PriorSpec spec;
  spec.d = d;
  spec.log_normalizer =
      (half_d - 1.0) * std::numbers::ln2 + detail::log_gamma(half_d);
  spec.mode_radius = std::sqrt(static_cast<double>(d - 1));
  return spec;
}

double log_pdf(const PriorSpec& spec, double r) {
  if (!std::isfinite(r) || r < 0.0)
    throw_invalid("log_pdf: radius must be finite and non-negative");
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  const double dm1 = static_cast<double>(spec.d - 1);
  return dm1 * std::log(r) - 0.5 * r * r - spec.log_normalizer;
}

double nll_at_radius(const PriorSpec& spec, double r) {
  return -log_pdf(spec, r);
}

double nll(const PriorSpec& spec, const Vector& z) {
  return nll_at_radius(spec, z.norm());
}

Vector nll_gradient(const PriorSpec& spec, const Vector& z) {
  const double sq = z.squaredNorm();
  if (sq == 0.0)
    throw_degenerate("nll_gradient: undefined at the origin");
  const double dm1 = static_cast<double>(spec.d - 1);
  return (1.0 - dm1 / sq) * z;
}

Vector sample_seed(const PriorSpec& spec, RngState& rng) {
  Vector z(spec.d);
  for (std::int64_t i = 0; i < spec.d; ++i) z[i] = rng.next_gaussian();
  return z;
}

Vector rescale_to_norm(const Vector& z, double target) {
  if (!(target > 0.0)) throw_invalid("rescale_to_norm: target must be > 0");
  const double norm = z.norm();
  if (norm == 0.0)
    throw_degenerate("rescale_to_norm: zero vector has no direction");
  return z * (target / norm);
}

}  // namespace nao
