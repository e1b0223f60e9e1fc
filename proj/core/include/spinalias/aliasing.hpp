#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "spinalias/fieldsim.hpp"
#include "spinalias/sampling.hpp"
#include "spinalias/specialfn.hpp"

namespace spinalias {

/// Longitude factor sum_q w_q e^{i (v-m) phi_q} by direct summation.
std::complex<double> h_q(int m, int v, int Q);
/// 2 pi if 2Q divides v - m, else 0.
std::complex<double> h_q_closed(int m, int v, int Q);

/// Colatitude factor sum_p mu_p d^l_{m,-s}(theta_p) d^u_{v,-s}(theta_p).
double i_n(const SamplingGrid& grid, int ell, int m, int u, int v, int s,
           ThetaWeighting weighting = ThetaWeighting::kCubature);

/// I_N(l, m; l, -m) from one half of a symmetric grid, doubled.
/// Throws std::invalid_argument if the grid fails validate_symmetry.
double i_n_half(const SamplingGrid& grid, int ell, int m, int s,
                ThetaWeighting weighting = ThetaWeighting::kCubature);

/// sqrt((2 z1 + 1)(2 z2 + 1)) / 2, i.e. the 1/(4 pi) normalization times H_Q = 2 pi.
double kappa(int z1, int z2);

/// tau_s(l, m; u, v) = kappa_{l,u} I_N when 2Q divides v - m, else exactly 0.
double tau(const SamplingGrid& grid, const HarmonicIndex& source, int u, int v,
           ThetaWeighting weighting = ThetaWeighting::kCubature);

enum class AliasClass { kPrimary, kSecondary };

std::string_view to_string(AliasClass klass);

/// Secondary iff j <= N - s - 1.
AliasClass classify(int j, int N, int s);

struct AliasEntry {
  HarmonicIndex source;
  HarmonicIndex alias;
  int j = 0;
  int r = 0;
  AliasClass klass = AliasClass::kPrimary;
  double tau = 0.0;
  double intensity = 0.0;
  double distance = 0.0;
};

inline constexpr double kIntensityFloor = 1e-12;

struct AliasMap {
  HarmonicIndex source;
  SamplingGrid grid;
  int u_max = 0;
  ThetaWeighting weighting = ThetaWeighting::kCubature;
  /// Sorted by (distance, j, r).
  std::vector<AliasEntry> entries;

  std::size_t count(AliasClass klass) const;
  /// Smallest entry distance, if any entry exists.
  std::optional<double> min_distance() const;
};

/// l + 4(N - s).
int default_u_max(const HarmonicIndex& source, const SamplingGrid& grid);

/// All (j, r) != (0, 0) with s <= l + j <= u_max and |m + 2rQ| <= l + j whose
/// |tau| exceeds kIntensityFloor. Throws std::invalid_argument if u_max < l.
AliasMap enumerate_aliases(const HarmonicIndex& source, const SamplingGrid& grid,
                           std::optional<int> u_max = std::nullopt,
                           ThetaWeighting weighting = ThetaWeighting::kCubature);

/// Minimum alias distance claimed for Q > N - s: sqrt((N - s)^2 + (2N)^2).
double claimed_min_distance(int N, int s);

/// sum_k mu_p w_q T(theta_p, phi_q) conj(Y_{l,m;s}(theta_p, phi_q)), evaluated
/// point by point without separating the axes.
std::complex<double> aliased_coefficient(const FieldSamples& field, const HarmonicIndex& source,
                                         ThetaWeighting weighting = ThetaWeighting::kCubature);

/// ((a_m + conj(a_{-m})) / 2, (a_m - conj(a_{-m})) / 2).
std::pair<std::complex<double>, std::complex<double>> eb_split(std::complex<double> a_m,
                                                               std::complex<double> a_minus_m);

/// Synthesizes coeffs on the grid and splits the aliased (l, +-m) pair into E/B.
std::pair<std::complex<double>, std::complex<double>> aliased_eb(
    const SpinCoefficients& coeffs, const SamplingGrid& grid, int ell, int m,
    ThetaWeighting weighting = ThetaWeighting::kCubature);

}  // namespace spinalias
