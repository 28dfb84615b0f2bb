#include "rumorlab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rumorlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

double ei_series(double x) {
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= x / k;
    double add = term / k;
    sum += add;
    if (std::fabs(add) < kEps * std::fabs(sum)) break;
  }
  return std::numbers::egamma + std::log(std::fabs(x)) + sum;
}

double ei_asymptotic(double x) {
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    double next = term * k / x;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < kEps * sum) break;
  }
  return std::exp(x) / x * sum;
}

// E1(z) for z > 1 by the modified Lentz continued fraction.
double e1_continued_fraction(double z) {
  double b = z + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h * std::exp(-z);
  }
  throw std::runtime_error("E1 continued fraction did not converge");
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIterations; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double exponential_integral(double x) {
  if (x == 0.0 || std::isnan(x)) throw std::domain_error("Ei(x) is undefined at x = 0");
  if (x > 0.0) return x <= 40.0 ? ei_series(x) : ei_asymptotic(x);
  double z = -x;
  // Ei(x) = -E1(-x); the alternating series loses digits beyond |x| = 1.
  return z <= 1.0 ? ei_series(x) : -e1_continued_fraction(z);
}

double reg_inc_beta_half(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("I_{1/2}(a, b) needs a, b > 0");
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) -
                           (a + b) * std::numbers::ln2;
  const double front = std::exp(log_front);
  // At x = 1/2 the direct fraction converges fastest when b < a; otherwise
  // use the symmetry I_x(a, b) = 1 - I_{1-x}(b, a).
  if (b < a) return front * beta_cf(a, b, 0.5) / a;
  return 1.0 - front * beta_cf(b, a, 0.5) / b;
}

}  // namespace rumorlab
