#pragma once

// Scalar special functions used across the risk engines: standard normal
// pdf/cdf/inverse cdf, regularized incomplete gamma (both tails, plus the
// inverse), regularized incomplete beta and the Student t cdf built on it.
// All routines target ~1e-13 absolute accuracy in double precision, enough
// to resolve confidence levels like 0.9996 deep in the normal tail.

namespace shp {

double norm_pdf(double x);
double norm_cdf(double x);

// Inverse of norm_cdf on (0,1). Acklam's rational approximation refined by
// one Halley step against the erfc-based cdf; max error well below 1e-13
// for u in [1e-300, 1-1e-16].
double norm_cdf_inv(double u);

// Regularized lower/upper incomplete gamma P(a,x), Q(a,x), a > 0, x >= 0.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// x such that P(a,x) = p, for p in [0,1).
double gamma_p_inv(double a, double p);

// Regularized incomplete beta I_x(a,b).
double inc_beta(double a, double b, double x);

// Student t cumulative distribution with nu > 0 degrees of freedom.
double student_t_cdf(double x, double nu);

}  // namespace shp
