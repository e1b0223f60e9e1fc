#include "spinalias/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spinalias/aliasing.hpp"
#include "spinalias/fieldsim.hpp"
#include "spinalias/specialfn.hpp"

namespace spinalias {
namespace {

void check_entries(const std::vector<double>& values, const char* name) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument(std::string("spectrum: ") + name + " entry " +
                                  std::to_string(i) + " is negative or not finite");
    }
  }
}

// Sum of I_N^2 over the longitude lattice v = m + 2rQ, |v| <= u.
double lattice_sum(const SamplingGrid& grid, int ell, int m, int u, int s,
                   ThetaWeighting weighting, bool include_r0) {
  if (u < s) {
    return 0.0;
  }
  const int step = 2 * grid.Q();
  double sum = 0.0;
  auto add = [&](int v) {
    if (std::abs(v) > u || (v == m && !include_r0)) {
      return;
    }
    const double value = i_n(grid, ell, m, u, v, s, weighting);
    sum += value * value;
  };
  for (int v = m; v <= u; v += step) {
    add(v);
  }
  for (int v = m - step; v >= -u; v -= step) {
    add(v);
  }
  return sum;
}

}  // namespace

AngularPowerSpectrum::AngularPowerSpectrum(int s, std::vector<double> c_e,
                                           std::vector<double> c_b)
    : s_(s), c_e_(std::move(c_e)), c_b_(std::move(c_b)) {
  if (s < 0) {
    throw std::invalid_argument("spectrum: spin must be >= 0");
  }
  if (c_e_.empty() || c_e_.size() != c_b_.size()) {
    throw std::invalid_argument("spectrum: C_E and C_B must be non-empty and equal length");
  }
  check_entries(c_e_, "C_E");
  check_entries(c_b_, "C_B");
  total_.resize(c_e_.size());
  for (std::size_t i = 0; i < c_e_.size(); ++i) {
    total_[i] = c_e_[i] + c_b_[i];
  }
}

AngularPowerSpectrum AngularPowerSpectrum::flat(int s, int l_max, double c_e, double c_b) {
  if (l_max < s) {
    throw std::invalid_argument("spectrum: need l_max >= s");
  }
  const auto n = static_cast<std::size_t>(l_max - s + 1);
  return AngularPowerSpectrum(s, std::vector<double>(n, c_e), std::vector<double>(n, c_b));
}

AngularPowerSpectrum AngularPowerSpectrum::zero(int s, int l_max) {
  return flat(s, l_max, 0.0, 0.0);
}

std::size_t AngularPowerSpectrum::offset(int ell) const {
  if (ell < s_ || ell > l_max()) {
    throw std::out_of_range("spectrum: multipole " + std::to_string(ell) + " outside " +
                            std::to_string(s_) + ".." + std::to_string(l_max()));
  }
  return static_cast<std::size_t>(ell - s_);
}

double AngularPowerSpectrum::c_e(int ell) const { return c_e_[offset(ell)]; }
double AngularPowerSpectrum::c_b(int ell) const { return c_b_[offset(ell)]; }
double AngularPowerSpectrum::total(int ell) const { return total_[offset(ell)]; }

XiFactors xi_factors(const SamplingGrid& grid, int ell, int m, int ell_prime, int s,
                     ThetaWeighting weighting) {
  validate({ell, m, s});
  if (ell_prime < s) {
    throw std::out_of_range("xi_factors: l' must be >= s");
  }
  XiFactors out;
  out.ell = ell;
  out.m = m;
  out.ell_prime = ell_prime;
  const double k2 = kappa(ell, ell_prime) * kappa(ell, ell_prime);
  const double off_lattice = lattice_sum(grid, ell, m, ell_prime, s, weighting, false);
  out.xi = k2 * off_lattice;
  double on_lattice = 0.0;
  if (std::abs(m) <= ell_prime) {
    const double value = i_n(grid, ell, m, ell_prime, m, s, weighting);
    on_lattice = value * value;
  }
  out.xi0 = k2 * (off_lattice + on_lattice);
  if (m == 0) {
    const int doubled = 2 * ell_prime - ell;
    double extra = 0.0;
    if (doubled >= s) {
      const double value = i_n(grid, ell, 0, doubled, 0, s, weighting);
      extra = kappa(ell, doubled) * kappa(ell, doubled) * value * value;
    }
    out.xi0_m0 = out.xi + extra;
  }
  return out;
}

AliasedSpectrum aliased_spectrum(const SamplingGrid& grid, const AngularPowerSpectrum& spec,
                                 std::span<const int> ells, std::optional<int> u_max,
                                 ThetaWeighting weighting) {
  const int s = spec.s();
  const int top = u_max.value_or(spec.l_max());
  if (top > spec.l_max()) {
    throw std::invalid_argument("aliased_spectrum: u_max " + std::to_string(top) +
                                " exceeds spectrum l_max " + std::to_string(spec.l_max()));
  }
  AliasedSpectrum out;
  out.ells.assign(ells.begin(), ells.end());
  out.u_max = top;
  int l_top = s;
  for (int ell : ells) {
    if (ell < s) {
      throw std::out_of_range("aliased_spectrum: multipole " + std::to_string(ell) +
                              " below spin " + std::to_string(s));
    }
    l_top = std::max(l_top, ell);
    double acc = 0.0;
    for (int m = -ell; m <= ell; ++m) {
      double second_moment = 0.0;
      for (int u = s; u <= top; ++u) {
        const double c = spec.total(u);
        if (c == 0.0) {
          continue;
        }
        const double k = kappa(ell, u);
        second_moment += c * k * k * lattice_sum(grid, ell, m, u, s, weighting, true);
      }
      acc += second_moment;
    }
    out.values.push_back(acc / (2.0 * ell + 1.0));
  }
  out.truncation_warning = !ells.empty() && top < l_top + 2 * (grid.N() - grid.s());
  return out;
}

double circular_covariance(const AngularPowerSpectrum& spec, double theta) {
  const int s = spec.s();
  const double c2s = std::pow(std::cos(0.5 * theta), 2 * s);
  const double t = std::cos(theta);
  double sum = 0.0;
  for (int ell = s; ell <= spec.l_max(); ++ell) {
    sum += (2.0 * ell + 1.0) / (4.0 * std::numbers::pi) * spec.total(ell) * c2s *
           jacobi({ell - s, 0.0, 2.0 * s}, t);
  }
  return sum;
}

BandlimitReport verify_bandlimit(int L0, int s, int N, int Q, std::uint64_t seed,
                                 SamplingScheme scheme) {
  if (s < 0 || L0 < s) {
    throw std::invalid_argument("verify_bandlimit: need 0 <= s <= L0, got L0=" +
                                std::to_string(L0) + ", s=" + std::to_string(s));
  }
  const SamplingGrid grid = build_grid(scheme, N, s, Q);
  const SpinCoefficients a =
      sample_gaussian_coeffs(AngularPowerSpectrum::flat(s, L0, 0.5, 0.5), L0, seed);
  const SpinCoefficients at = analyze(synthesize(a, grid), s, L0);
  BandlimitReport report;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    report.max_error = std::max(report.max_error, std::abs(at.values()[i] - a.values()[i]));
  }
  report.passed = report.max_error < kBandlimitTolerance;
  report.loose_hypothesis = N > L0 && Q > L0;
  report.sharp_hypothesis = N - s > L0 && Q > L0;
  return report;
}

}  // namespace spinalias
