#include "spinalias/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinalias {
namespace {

constexpr double kDomainSlack = 1e-12;

double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double checked_argument(double t) {
  if (!(std::abs(t) <= 1.0 + kDomainSlack)) {
    throw std::domain_error("jacobi: argument " + std::to_string(t) +
                            " outside [-1, 1]");
  }
  return std::clamp(t, -1.0, 1.0);
}

}  // namespace

void validate(const HarmonicIndex& idx) {
  if (idx.s < 0) {
    throw std::out_of_range("harmonic index: spin weight must be >= 0, got " +
                            std::to_string(idx.s));
  }
  if (idx.ell < std::max(std::abs(idx.m), idx.s)) {
    throw std::out_of_range("harmonic index: need ell >= max(|m|, s), got (" +
                            std::to_string(idx.ell) + ", " +
                            std::to_string(idx.m) + ", " +
                            std::to_string(idx.s) + ")");
  }
}

double jacobi(const JacobiParams& params, double t) {
  if (params.degree < 0) {
    throw std::domain_error("jacobi: negative degree");
  }
  // Extended precision keeps the degree-30 recurrence within ~1 ulp.
  const long double x = checked_argument(t);
  const long double a = params.alpha;
  const long double b = params.beta;

  long double p_prev = 1.0L;
  if (params.degree == 0) {
    return 1.0;
  }
  long double p = (a + 1.0L) + 0.5L * (a + b + 2.0L) * (x - 1.0L);
  for (int n = 2; n <= params.degree; ++n) {
    const long double ab = a + b;
    const long double c = 2.0L * n + ab;
    const long double denom = 2.0L * n * (n + ab) * (c - 2.0L);
    if (denom == 0.0L) {
      throw std::domain_error("jacobi: recurrence degenerates for alpha=" +
                              std::to_string(params.alpha) + ", beta=" +
                              std::to_string(params.beta));
    }
    const long double next =
        ((c - 1.0L) * (c * (c - 2.0L) * x + a * a - b * b) * p -
         2.0L * (n + a - 1.0L) * (n + b - 1.0L) * c * p_prev) /
        denom;
    p_prev = p;
    p = next;
  }
  return static_cast<double>(p);
}

double jacobi_derivative(const JacobiParams& params, double t) {
  if (params.degree == 0) {
    checked_argument(t);
    return 0.0;
  }
  const JacobiParams shifted{params.degree - 1, params.alpha + 1.0,
                             params.beta + 1.0};
  return 0.5 * (params.degree + params.alpha + params.beta + 1.0) *
         jacobi(shifted, t);
}

double jacobi_norm(const JacobiParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  if (!(a > -1.0) || !(b > -1.0)) {
    throw std::domain_error("jacobi_norm: requires alpha > -1 and beta > -1");
  }
  if (params.degree < 0) {
    throw std::domain_error("jacobi_norm: negative degree");
  }
  const int n = params.degree;
  const double log_two = (a + b + 1.0) * std::numbers::ln2;
  if (n == 0) {
    // (a+b+1) Gamma(a+b+1) folded into Gamma(a+b+2) so a+b = -1 stays finite.
    return std::exp(log_two + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
  }
  return std::exp(log_two - std::log(2.0 * n + a + b + 1.0) +
                  std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                  log_factorial(n) - std::lgamma(n + a + b + 1.0));
}

double log_factorial(int n) {
  if (n < 0) {
    throw std::domain_error("log_factorial: negative argument");
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double h_factor(int z1, int z2, int z3) {
  if (z3 - z2 < 0 || z3 + z2 < 0 || z3 + z1 < 0 || z3 - z1 < 0) {
    throw std::domain_error("h_factor: negative factorial argument");
  }
  return std::exp(0.5 * (log_factorial(z3 - z2) + log_factorial(z3 + z2) -
                         log_factorial(z3 + z1) - log_factorial(z3 - z1)));
}

double wigner_d(const HarmonicIndex& idx, double theta) {
  validate(idx);
  if (!(theta >= -kDomainSlack && theta <= std::numbers::pi + kDomainSlack)) {
    throw std::domain_error("wigner_d: theta " + std::to_string(theta) +
                            " outside [0, pi]");
  }
  theta = std::clamp(theta, 0.0, std::numbers::pi);

  // Standard d^j_{m1,m2} with m1 = -s, m2 = m.
  const int j = idx.ell;
  const int m1 = -idx.s;
  const int m2 = idx.m;

  const int k = std::min({j + m2, j - m2, j + m1, j - m1});
  int a = 0;
  int lambda = 0;
  if (k == j + m2) {
    a = m1 - m2;
    lambda = m1 - m2;
  } else if (k == j - m2) {
    a = m2 - m1;
  } else if (k == j + m1) {
    a = m2 - m1;
  } else {
    a = m1 - m2;
    lambda = m1 - m2;
  }
  const int b = 2 * j - 2 * k - a;

  const double log_norm =
      0.5 * (log_binomial(2 * j - k, k + a) - log_binomial(k + b, b));
  const double sign = (lambda % 2 == 0) ? 1.0 : -1.0;
  const double half = 0.5 * theta;
  return sign * std::exp(log_norm) * std::pow(std::sin(half), a) *
         std::pow(std::cos(half), b) *
         jacobi({k, static_cast<double>(a), static_cast<double>(b)},
                std::cos(theta));
}

std::complex<double> spin_sph_harm(const HarmonicIndex& idx, double theta,
                                   double phi) {
  const double d = wigner_d(idx, theta);
  const double norm = std::sqrt((2.0 * idx.ell + 1.0) / (4.0 * std::numbers::pi));
  const double sign = (idx.s % 2 == 0) ? 1.0 : -1.0;
  return sign * norm * d * std::polar(1.0, idx.m * phi);
}

}  // namespace spinalias
