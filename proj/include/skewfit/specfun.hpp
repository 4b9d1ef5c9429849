#pragma once

#include "skewfit/common.hpp"

namespace skewfit::specfun {

// Result of a series evaluation. `value` is meaningful only when `converged`
// is true; callers that need a guaranteed answer fall back to quadrature.
struct SpecFunResult {
  double value = 0.0;
  bool converged = false;
  int terms_used = 0;
};

// log Gamma(x), x > 0. Relative error <= 1e-13.
double ln_gamma(double x);

// psi(x) = d/dx log Gamma(x), x > 0. Relative error <= 1e-12.
double digamma(double x);

// log of the multivariate gamma function Gamma_p(a), a > (p-1)/2.
double ln_gamma_p(double a, int p);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double reg_inc_beta(double a, double b, double x);

// CDF of the univariate Student-t with `dof` degrees of freedom.
// Exact symmetry: student_t_cdf(-x, dof) == 1 - student_t_cdf(x, dof).
double student_t_cdf(double x, double dof);

// Standard normal CDF and its log (stable far into the left tail).
double norm_cdf(double x);
double norm_logcdf(double x);

// Confluent hypergeometric function M(a, g, z) = sum_k (a)_k z^k / ((g)_k k!).
// Negative z is routed through the Kummer transformation M(a,g,z) =
// e^z M(g-a, g, -z) so the summed series has a positive argument.
SpecFunResult kummer_m(double a, double g, double z);

// Parabolic cylinder function D_p(z) for p <= 0, via the two-term Kummer
// representation, with an asymptotic branch for large positive z where the
// Kummer terms cancel catastrophically.
SpecFunResult parabolic_cylinder_d(double p, double z);

}  // namespace skewfit::specfun
