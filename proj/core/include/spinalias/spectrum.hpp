#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spinalias/sampling.hpp"

namespace spinalias {

/// Per-multipole variances C_{l,E}, C_{l,B} for l = s..l_max.
class AngularPowerSpectrum {
 public:
  /// Throws std::invalid_argument on negative entries, mismatched lengths,
  /// an empty spectrum or s < 0.
  AngularPowerSpectrum(int s, std::vector<double> c_e, std::vector<double> c_b);

  static AngularPowerSpectrum flat(int s, int l_max, double c_e, double c_b);
  static AngularPowerSpectrum zero(int s, int l_max);

  int s() const { return s_; }
  int l_max() const { return s_ + static_cast<int>(c_e_.size()) - 1; }

  /// Accessors throw std::out_of_range outside s..l_max.
  double c_e(int ell) const;
  double c_b(int ell) const;
  double total(int ell) const;

  std::span<const double> c_e_values() const { return c_e_; }
  std::span<const double> c_b_values() const { return c_b_; }
  std::span<const double> total_values() const { return total_; }

 private:
  std::size_t offset(int ell) const;

  int s_;
  std::vector<double> c_e_;
  std::vector<double> c_b_;
  std::vector<double> total_;
};

struct XiFactors {
  int ell = 0;
  int m = 0;
  int ell_prime = 0;
  /// kappa^2 sum of I_N^2 over r != 0.
  double xi = 0.0;
  /// Same sum with r = 0 included.
  double xi0 = 0.0;
  /// m = 0 variant: xi plus the doubled-offset r = 0 term at degree 2l' - l.
  std::optional<double> xi0_m0;
};

/// Requires ell, ell_prime >= s and |m| <= ell.
XiFactors xi_factors(const SamplingGrid& grid, int ell, int m, int ell_prime, int s,
                     ThetaWeighting weighting = ThetaWeighting::kCubature);

struct AliasedSpectrum {
  std::vector<int> ells;
  std::vector<double> values;
  int u_max = 0;
  /// Set when u_max < max(ell) + 2(N - s); the truncated tail may matter.
  bool truncation_warning = false;
};

/// C~_l = (1/(2l+1)) sum_m E|a~_{l,m;s}|^2 with
/// E|a~_{l,m;s}|^2 = sum_{u <= u_max} C_{u;s} xi0(l, m, u).
///
/// u_max defaults to spec.l_max() and must not exceed it.
AliasedSpectrum aliased_spectrum(const SamplingGrid& grid, const AngularPowerSpectrum& spec,
                                 std::span<const int> ells,
                                 std::optional<int> u_max = std::nullopt,
                                 ThetaWeighting weighting = ThetaWeighting::kCubature);

/// kappa(theta) = sum_l (2l+1)/(4 pi) C_{l;s} cos^{2s}(theta/2) P_{l-s}^{(0,2s)}(cos theta).
double circular_covariance(const AngularPowerSpectrum& spec, double theta);

struct BandlimitReport {
  bool passed = false;
  double max_error = 0.0;
  /// N > L0 and Q > L0.
  bool loose_hypothesis = false;
  /// N - s > L0 and Q > L0, which is what exactness of the colatitude rule needs.
  bool sharp_hypothesis = false;
};

inline constexpr double kBandlimitTolerance = 1e-10;

/// Draws flat band-limited coefficients (C_E = C_B = 1/2), synthesizes them on
/// the grid and compares the analyzed coefficients for l <= L0.
/// Throws std::invalid_argument for invalid grid parameters or L0 < s.
BandlimitReport verify_bandlimit(int L0, int s, int N, int Q, std::uint64_t seed,
                                 SamplingScheme scheme = SamplingScheme::kGaussJacobi);

}  // namespace spinalias
