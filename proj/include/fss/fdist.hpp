#pragma once

namespace fss::stats {

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction,
// using the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) where it converges faster.
double regularized_beta(double x, double a, double b);

// Snedecor F distribution with d1, d2 degrees of freedom.
double f_cdf(double f, double d1, double d2);
// Upper tail P(F > f), computed without cancellation.
double f_sf(double f, double d1, double d2);

} // namespace fss::stats
