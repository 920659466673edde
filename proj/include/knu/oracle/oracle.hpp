// Extended-precision ground truth for K_nu and its order-derivatives:
// tanh-sinh quadrature of the integral representation
//   K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
// and, for derivatives, both the differentiated integrand and an
// extended-precision central difference of the value — the two must agree,
// which is the oracle's own health check.

#pragma once

#include <functional>

#include "knu/oracle/bigfloat.hpp"

namespace knu::oracle {

// K_nu(x) to about `digits` significant digits (|nu| <= 50, x > 0).
BigFloat oracle_besselk(double nu, double x, int digits = 50);

// d^k/dnu^k K_nu(x) for k in {1, 2}; computed by quadrature of the
// differentiated integrand and cross-checked against extended-precision
// central differences. Throws if the two methods disagree.
BigFloat oracle_dnu_besselk(double nu, double x, int k, int digits = 50);

// Independent small-x check on the quadrature: the regrouped power series
// evaluated in MPFR (non-integer nu, moderate x).
BigFloat oracle_besselk_series(double nu, double x, int digits = 50);

// Matern covariance composed with the oracle kernel at extended precision.
double oracle_matern_cov(double sigma, double rho, double nu, double d, int digits = 50);

// Generic tanh-sinh quadrature over [a, b] used by the oracle; exposed for
// tests (e.g. the incomplete-gamma pin).
BigFloat tanh_sinh(const std::function<BigFloat(const BigFloat&)>& f, const BigFloat& a,
                   const BigFloat& b, int digits);

}  // namespace knu::oracle
