#pragma once

namespace rumorlab {

/// Exponential integral Ei(x), principal value, for x != 0.
double exponential_integral(double x);

/// Regularized incomplete beta function at 1/2, I_{1/2}(a, b), for a, b > 0.
double reg_inc_beta_half(double a, double b);

}  // namespace rumorlab
