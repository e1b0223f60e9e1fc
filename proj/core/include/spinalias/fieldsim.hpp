#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinalias/sampling.hpp"
#include "spinalias/spectrum.hpp"

namespace spinalias {

struct Provenance {
  enum class Kind { kManual, kGaussian };
  Kind kind = Kind::kManual;
  std::uint64_t seed = 0;
};

/// Complex coefficients a_{l,m;s} for s <= l <= l_max, |m| <= l.
class SpinCoefficients {
 public:
  /// All-zero coefficients. Throws std::invalid_argument if s < 0 or l_max < s.
  SpinCoefficients(int s, int l_max);

  int s() const { return s_; }
  int l_max() const { return l_max_; }

  bool contains(int ell, int m) const;
  /// Throws std::out_of_range for indices outside the band.
  std::complex<double>& at(int ell, int m);
  const std::complex<double>& at(int ell, int m) const;

  std::span<std::complex<double>> values() { return values_; }
  std::span<const std::complex<double>> values() const { return values_; }

  const Provenance& provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = p; }

  static std::size_t size_for(int s, int l_max);

 private:
  std::size_t index(int ell, int m) const;

  int s_;
  int l_max_;
  std::vector<std::complex<double>> values_;
  Provenance provenance_;
};

/// Field values on a grid, row-major: values[p * phi_count + q].
class FieldSamples {
 public:
  /// Zero field. The value vector overload throws std::invalid_argument on a
  /// shape mismatch.
  explicit FieldSamples(SamplingGrid grid, std::string meta = {});
  FieldSamples(SamplingGrid grid, std::vector<std::complex<double>> values,
               std::string meta = {});

  const SamplingGrid& grid() const { return grid_; }
  const std::string& meta() const { return meta_; }

  std::complex<double>& at(std::size_t p, std::size_t q);
  const std::complex<double>& at(std::size_t p, std::size_t q) const;

  std::span<std::complex<double>> values() { return values_; }
  std::span<const std::complex<double>> values() const { return values_; }

 private:
  SamplingGrid grid_;
  std::vector<std::complex<double>> values_;
  std::string meta_;
};

/// Precomputed colatitude factors sqrt((2l+1)/4pi) (-1)^s d^l_{m,-s}(theta_p)
/// for one grid and band, shared by repeated synthesis and analysis.
class SpinTransform {
 public:
  SpinTransform(const SamplingGrid& grid, int s, int l_max);

  const SamplingGrid& grid() const { return grid_; }
  int s() const { return s_; }
  int l_max() const { return l_max_; }

  /// Coefficients above l_max() are ignored; missing ones count as zero.
  FieldSamples synthesize(const SpinCoefficients& coeffs) const;
  SpinCoefficients analyze(const FieldSamples& field,
                           ThetaWeighting weighting = ThetaWeighting::kCubature) const;

 private:
  double lambda(int ell, int m, std::size_t p) const;

  SamplingGrid grid_;
  int s_;
  int l_max_;
  std::vector<double> table_;
};

FieldSamples synthesize(const SpinCoefficients& coeffs, const SamplingGrid& grid);

/// a~_{l,m;s} for s <= l <= l_max by the separated discrete sum. Throws
/// std::invalid_argument if l_max < s or s < 0.
SpinCoefficients analyze(const FieldSamples& field, int s, int l_max,
                         ThetaWeighting weighting = ThetaWeighting::kCubature);

/// Independent circular complex Gaussians a_E, a_B per (l, m) with variances
/// C_E, C_B; returns a_s = a_E + i a_B. Throws std::invalid_argument if
/// L0 > spec.l_max() or L0 < spec.s().
SpinCoefficients sample_gaussian_coeffs(const AngularPowerSpectrum& spec, int L0,
                                        std::uint64_t seed);

/// splitmix64 finalizer over (seed, index); per-realization seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

inline constexpr const char* kRngName = "mt19937_64+splitmix64";

struct MonteCarloRow {
  int ell = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double predicted = 0.0;
  /// (mean - predicted) / std_error; 0 when the difference is below 1e-12.
  double z = 0.0;
};

struct MonteCarloReport {
  std::vector<MonteCarloRow> rows;
  int n_real = 0;
  std::uint64_t seed = 0;
  int L0 = 0;
  std::string rng = kRngName;
};

struct MonteCarloOptions {
  int threads = 1;
  ThetaWeighting weighting = ThetaWeighting::kCubature;
};

/// Per realization: draw, synthesize, analyze and record (1/(2l+1)) sum_m |a~|^2.
/// Results are identical for any thread count. Throws std::invalid_argument
/// for n_real < 100 or an ell outside s..L0 range checks of the callees.
MonteCarloReport monte_carlo_spectrum(const AngularPowerSpectrum& spec,
                                      const SamplingGrid& grid, int L0,
                                      std::span<const int> ells, int n_real,
                                      std::uint64_t seed,
                                      const MonteCarloOptions& options = {});

}  // namespace spinalias
