#pragma once

// Independent numeric references used by the tests. Nothing here calls into
// the library's own special functions.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

/// Ei(x) by quadrature: γ + ln x + ∫₀ˣ (eᵗ − 1)/t dt for x > 0 and
/// −∫_{−x}^∞ e^{−t}/t dt for x < 0.
inline double ei(double x) {
  if (x > 0) {
    auto f = [](double t) { return t == 0.0 ? 1.0 : std::expm1(t) / t; };
    boost::math::quadrature::tanh_sinh<double> integrator;
    double integral = integrator.integrate(f, 0.0, x, 1e-14);
    return std::numbers::egamma + std::log(x) + integral;
  }
  double z = -x;
  // Shift so the integration runs over [0, ∞) and the leading factor e^{-z}
  // is applied once: ∫_z^∞ e^{-t}/t dt = e^{-z} ∫_0^∞ e^{-u}/(u + z) du.
  auto g = [z](double u) { return std::exp(-u) / (u + z); };
  boost::math::quadrature::exp_sinh<double> integrator;
  return -std::exp(-z) * integrator.integrate(g);
}

/// I_{1/2}(a, b) by quadrature of the Beta density after t = u^{1/a}, which
/// removes the t^{a−1} endpoint singularity.
inline double ibeta_half(double a, double b) {
  auto f = [a, b](double u) {
    double t = std::pow(u, 1.0 / a);
    return std::pow(1.0 - t, b - 1.0) / a;
  };
  double upper = std::pow(0.5, a);
  boost::math::quadrature::tanh_sinh<double> integrator;
  double integral = integrator.integrate(f, 0.0, upper);
  double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return integral * std::exp(-log_beta);
}

/// (θ/d)∫₀^d ρ^{2^x} dx with ρ = (d−1)/(d−1+θ).
inline double trickle_ft_integral(int d, int theta) {
  double rho = static_cast<double>(d - 1) / (d - 1 + theta);
  auto f = [rho](double x) { return std::pow(rho, std::exp2(x)); };
  double tol = 1e-13;
  double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, d, 12, tol);
  return theta / static_cast<double>(d) * integral;
}

/// Probability that the source of a trickle spread first reports at step i:
/// C(N − i, θ − 1) / C(N, θ) with N = d + θ.
inline double first_tap_pmf(int d, int theta, int i) {
  auto choose = [](int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
  };
  int n = d + theta;
  return choose(n - i, theta - 1) / choose(n, theta);
}

inline std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::pow(hi / lo, count == 1 ? 0.0 : static_cast<double>(i) / (count - 1)));
  return out;
}

}  // namespace oracle
