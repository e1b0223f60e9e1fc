#pragma once

#include <complex>

namespace spinalias {

/// Location (ell, m, s) of a spin-weighted harmonic coefficient.
struct HarmonicIndex {
  int ell = 0;
  int m = 0;
  int s = 0;

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;
};

/// Throws std::out_of_range unless s >= 0 and ell >= max(|m|, s).
void validate(const HarmonicIndex& idx);

/// Degree and parameters of a Jacobi polynomial P_degree^{(alpha, beta)}.
struct JacobiParams {
  int degree = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// P_n^{(alpha,beta)}(t) by the three-term recurrence in n.
///
/// Throws std::domain_error for a negative degree, |t| > 1 (beyond a 1e-12
/// slack), or parameters for which the recurrence degenerates (possible
/// only for negative integer alpha + beta).
double jacobi(const JacobiParams& params, double t);

/// d/dt P_n^{(alpha,beta)}(t) = (n + alpha + beta + 1)/2 P_{n-1}^{(alpha+1,beta+1)}(t).
double jacobi_derivative(const JacobiParams& params, double t);

/// Squared norm of P_n^{(alpha,beta)} under the weight (1-t)^alpha (1+t)^beta.
/// Requires alpha > -1 and beta > -1.
double jacobi_norm(const JacobiParams& params);

/// ln(n!) for n >= 0.
double log_factorial(int n);

/// sqrt( (z3-z2)! (z3+z2)! / ((z3+z1)! (z3-z1)!) ), accumulated in log space.
double h_factor(int z1, int z2, int z3);

/// Wigner small-d element d^ell_{m,-s}(theta).
///
/// Evaluated as the standard d^ell_{-s,m}(theta) through the reduced formula
/// with non-negative Jacobi parameters a = |m+s|, b = |m-s| and degree
/// ell - max(|m|, s). On m+s >= 0, m-s >= 0 this coincides term by term with
/// h_s^m(ell) sin^{m+s}(theta/2) cos^{m-s}(theta/2) P_{ell-m}^{(m+s,m-s)}(cos theta).
double wigner_d(const HarmonicIndex& idx, double theta);

/// Y_{ell,m;s}(theta, phi) = sqrt((2 ell+1)/(4 pi)) (-1)^s e^{i m phi} d^ell_{m,-s}(theta).
std::complex<double> spin_sph_harm(const HarmonicIndex& idx, double theta,
                                   double phi);

}  // namespace spinalias
