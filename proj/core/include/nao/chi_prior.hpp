#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "nao/rng.hpp"

namespace nao {

using Vector = Eigen::VectorXd;

// Chi distribution of the norm of a d-dimensional standard Gaussian:
//   pdf(r) = r^(d-1) exp(-r^2/2) / (2^(d/2-1) Gamma(d/2)).
// The spec of the prior is just the dimension plus two derived constants
// used everywhere downstream.
struct PriorSpec {
  std::int64_t d;          // >= 2
  double log_normalizer;   // log(2^(d/2-1) Gamma(d/2))
  double mode_radius;      // sqrt(d-1), argmax of the pdf

  static PriorSpec make(std::int64_t d);
};

// Log of the chi^d density at radius r, evaluated fully in log space.
// r == 0 yields -infinity.
double log_pdf(const PriorSpec& spec, double r);

// Negative log-likelihood W at radius r; +infinity at r == 0.
double nll_at_radius(const PriorSpec& spec, double r);

// W(z) = -log_pdf(spec, |z|); +infinity for the zero vector.
double nll(const PriorSpec& spec, const Vector& z);

// grad W(z) = (1 - (d-1)/|z|^2) z. Throws for the zero vector.
Vector nll_gradient(const PriorSpec& spec, const Vector& z);

// d i.i.d. standard normal components.
Vector sample_seed(const PriorSpec& spec, RngState& rng);

// z scaled so that |result| == target; direction preserved.
Vector rescale_to_norm(const Vector& z, double target);

namespace detail {
// log Gamma(x) for x > 0 via the Lanczos approximation (Godfrey's
// g = 607/128, 15-term coefficient set); relative accuracy ~1e-14 on
// [1, 1e7]. Used instead of tgamma-then-log, which overflows past x ~ 85.
double log_gamma(double x);
}  // namespace detail

}  // namespace nao
