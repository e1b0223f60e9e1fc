#include "spinalias/fieldsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "spinalias/specialfn.hpp"

namespace spinalias {
namespace {

constexpr double kRoundoffFloor = 1e-12;

// e^{i k pi / Q} with k reduced mod 2Q, so equal phases are bitwise equal.
std::complex<double> lattice_phase(long long k, int Q) {
  const long long period = 2LL * Q;
  long long r = k % period;
  if (r < 0) {
    r += period;
  }
  return std::polar(1.0, static_cast<double>(r) * std::numbers::pi / Q);
}

}  // namespace

SpinCoefficients::SpinCoefficients(int s, int l_max) : s_(s), l_max_(l_max) {
  if (s < 0) {
    throw std::invalid_argument("coefficients: spin must be >= 0");
  }
  if (l_max < s) {
    throw std::invalid_argument("coefficients: need l_max >= s, got l_max=" +
                                std::to_string(l_max) + ", s=" + std::to_string(s));
  }
  values_.assign(size_for(s, l_max), {0.0, 0.0});
}

std::size_t SpinCoefficients::size_for(int s, int l_max) {
  if (l_max < s) {
    return 0;
  }
  return static_cast<std::size_t>((l_max + 1) * (l_max + 1) - s * s);
}

bool SpinCoefficients::contains(int ell, int m) const {
  return ell >= s_ && ell <= l_max_ && std::abs(m) <= ell;
}

std::size_t SpinCoefficients::index(int ell, int m) const {
  if (!contains(ell, m)) {
    throw std::out_of_range("coefficients: (l=" + std::to_string(ell) + ", m=" +
                            std::to_string(m) + ") outside band s=" + std::to_string(s_) +
                            ", l_max=" + std::to_string(l_max_));
  }
  return static_cast<std::size_t>(ell * ell - s_ * s_ + m + ell);
}

std::complex<double>& SpinCoefficients::at(int ell, int m) { return values_[index(ell, m)]; }

const std::complex<double>& SpinCoefficients::at(int ell, int m) const {
  return values_[index(ell, m)];
}

FieldSamples::FieldSamples(SamplingGrid grid, std::string meta)
    : grid_(std::move(grid)), meta_(std::move(meta)) {
  values_.assign(grid_.theta_count() * grid_.phi_count(), {0.0, 0.0});
}

FieldSamples::FieldSamples(SamplingGrid grid, std::vector<std::complex<double>> values,
                           std::string meta)
    : grid_(std::move(grid)), values_(std::move(values)), meta_(std::move(meta)) {
  if (values_.size() != grid_.theta_count() * grid_.phi_count()) {
    throw std::invalid_argument("field samples: " + std::to_string(values_.size()) +
                                " values for a " + std::to_string(grid_.theta_count()) +
                                " x " + std::to_string(grid_.phi_count()) + " grid");
  }
}

std::complex<double>& FieldSamples::at(std::size_t p, std::size_t q) {
  return values_.at(p * grid_.phi_count() + q);
}

const std::complex<double>& FieldSamples::at(std::size_t p, std::size_t q) const {
  return values_.at(p * grid_.phi_count() + q);
}

SpinTransform::SpinTransform(const SamplingGrid& grid, int s, int l_max)
    : grid_(grid), s_(s), l_max_(l_max) {
  if (s < 0 || l_max < s) {
    throw std::invalid_argument("transform: need 0 <= s <= l_max");
  }
  const auto theta = grid_.theta_nodes();
  const std::size_t n = theta.size();
  table_.resize(SpinCoefficients::size_for(s, l_max) * n);
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;
  for (int ell = s; ell <= l_max; ++ell) {
    const double norm = sign * std::sqrt((2.0 * ell + 1.0) / (4.0 * std::numbers::pi));
    for (int m = -ell; m <= ell; ++m) {
      const std::size_t base = static_cast<std::size_t>(ell * ell - s * s + m + ell) * n;
      for (std::size_t p = 0; p < n; ++p) {
        table_[base + p] = norm * wigner_d({ell, m, s}, theta[p]);
      }
    }
  }
}

double SpinTransform::lambda(int ell, int m, std::size_t p) const {
  const std::size_t base =
      static_cast<std::size_t>(ell * ell - s_ * s_ + m + ell) * grid_.theta_count();
  return table_[base + p];
}

FieldSamples SpinTransform::synthesize(const SpinCoefficients& coeffs) const {
  if (coeffs.s() != s_) {
    throw std::invalid_argument("synthesize: spin mismatch");
  }
  FieldSamples field(grid_, "synthesized");
  const int band = std::min(l_max_, coeffs.l_max());
  const std::size_t n_theta = grid_.theta_count();
  const std::size_t n_phi = grid_.phi_count();
  const int Q = grid_.Q();
  std::vector<std::complex<double>> g(2 * band + 1);
  for (std::size_t p = 0; p < n_theta; ++p) {
    for (int m = -band; m <= band; ++m) {
      std::complex<double> acc{0.0, 0.0};
      for (int ell = std::max(std::abs(m), s_); ell <= band; ++ell) {
        acc += coeffs.at(ell, m) * lambda(ell, m, p);
      }
      g[m + band] = acc;
    }
    for (std::size_t q = 0; q < n_phi; ++q) {
      std::complex<double> value{0.0, 0.0};
      for (int m = -band; m <= band; ++m) {
        value += g[m + band] * lattice_phase(static_cast<long long>(m) * q, Q);
      }
      field.at(p, q) = value;
    }
  }
  return field;
}

SpinCoefficients SpinTransform::analyze(const FieldSamples& field,
                                        ThetaWeighting weighting) const {
  const SamplingGrid& g = field.grid();
  if (g.theta_count() != grid_.theta_count() || g.phi_count() != grid_.phi_count() ||
      g.Q() != grid_.Q() || g.scheme() != grid_.scheme()) {
    throw std::invalid_argument("analyze: field grid does not match the transform grid");
  }
  SpinCoefficients out(s_, l_max_);
  const auto mu = grid_.theta_sum_weights(weighting);
  const auto w_phi = grid_.phi_weights();
  const int Q = grid_.Q();
  std::vector<std::complex<double>> f(2 * l_max_ + 1);
  for (std::size_t p = 0; p < grid_.theta_count(); ++p) {
    for (int m = -l_max_; m <= l_max_; ++m) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t q = 0; q < grid_.phi_count(); ++q) {
        acc += w_phi[q] * field.at(p, q) *
               lattice_phase(-static_cast<long long>(m) * static_cast<long long>(q), Q);
      }
      f[m + l_max_] = acc;
    }
    for (int ell = s_; ell <= l_max_; ++ell) {
      for (int m = -ell; m <= ell; ++m) {
        out.at(ell, m) += mu[p] * lambda(ell, m, p) * f[m + l_max_];
      }
    }
  }
  return out;
}

FieldSamples synthesize(const SpinCoefficients& coeffs, const SamplingGrid& grid) {
  return SpinTransform(grid, coeffs.s(), coeffs.l_max()).synthesize(coeffs);
}

SpinCoefficients analyze(const FieldSamples& field, int s, int l_max,
                         ThetaWeighting weighting) {
  return SpinTransform(field.grid(), s, l_max).analyze(field, weighting);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SpinCoefficients sample_gaussian_coeffs(const AngularPowerSpectrum& spec, int L0,
                                        std::uint64_t seed) {
  if (L0 < spec.s() || L0 > spec.l_max()) {
    throw std::invalid_argument("sample_gaussian_coeffs: need s <= L0 <= l_max, got L0=" +
                                std::to_string(L0));
  }
  SpinCoefficients out(spec.s(), L0);
  out.set_provenance({Provenance::Kind::kGaussian, seed});
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int ell = spec.s(); ell <= L0; ++ell) {
    const double sd_e = std::sqrt(0.5 * spec.c_e(ell));
    const double sd_b = std::sqrt(0.5 * spec.c_b(ell));
    for (int m = -ell; m <= ell; ++m) {
      const double e_re = normal(engine);
      const double e_im = normal(engine);
      const double b_re = normal(engine);
      const double b_im = normal(engine);
      const std::complex<double> a_e{sd_e * e_re, sd_e * e_im};
      const std::complex<double> a_b{sd_b * b_re, sd_b * b_im};
      out.at(ell, m) = a_e + std::complex<double>{0.0, 1.0} * a_b;
    }
  }
  return out;
}

MonteCarloReport monte_carlo_spectrum(const AngularPowerSpectrum& spec,
                                      const SamplingGrid& grid, int L0,
                                      std::span<const int> ells, int n_real,
                                      std::uint64_t seed, const MonteCarloOptions& options) {
  if (n_real < 100) {
    throw std::invalid_argument("monte carlo: need n_real >= 100, got " +
                                std::to_string(n_real));
  }
  if (ells.empty()) {
    throw std::invalid_argument("monte carlo: empty multipole list");
  }
  const int s = spec.s();
  const int l_top = *std::max_element(ells.begin(), ells.end());
  for (int ell : ells) {
    if (ell < s) {
      throw std::invalid_argument("monte carlo: multipole " + std::to_string(ell) +
                                  " below spin " + std::to_string(s));
    }
  }
  if (L0 < s || L0 > spec.l_max()) {
    throw std::invalid_argument("monte carlo: need s <= L0 <= l_max");
  }

  const SpinTransform synth(grid, s, L0);
  const SpinTransform anal(grid, s, l_top);
  const std::size_t n_ell = ells.size();
  std::vector<double> samples(static_cast<std::size_t>(n_real) * n_ell);

  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const SpinCoefficients a =
          sample_gaussian_coeffs(spec, L0, derive_seed(seed, static_cast<std::uint64_t>(i)));
      const SpinCoefficients at = anal.analyze(synth.synthesize(a), options.weighting);
      for (std::size_t k = 0; k < n_ell; ++k) {
        const int ell = ells[k];
        double power = 0.0;
        for (int m = -ell; m <= ell; ++m) {
          power += std::norm(at.at(ell, m));
        }
        samples[static_cast<std::size_t>(i) * n_ell + k] = power / (2.0 * ell + 1.0);
      }
    }
  };

  const int threads = std::clamp(options.threads, 1, n_real);
  if (threads == 1) {
    run_range(0, n_real);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (n_real + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(n_real, begin + chunk);
      if (begin < end) {
        pool.emplace_back(run_range, begin, end);
      }
    }
  }

  AliasedSpectrum predicted = aliased_spectrum(grid, spec, ells, L0, options.weighting);

  MonteCarloReport report;
  report.n_real = n_real;
  report.seed = seed;
  report.L0 = L0;
  for (std::size_t k = 0; k < n_ell; ++k) {
    double sum = 0.0;
    for (int i = 0; i < n_real; ++i) {
      sum += samples[static_cast<std::size_t>(i) * n_ell + k];
    }
    const double mean = sum / n_real;
    double ss = 0.0;
    for (int i = 0; i < n_real; ++i) {
      const double d = samples[static_cast<std::size_t>(i) * n_ell + k] - mean;
      ss += d * d;
    }
    const double se = std::sqrt(ss / (n_real - 1.0) / n_real);
    MonteCarloRow row;
    row.ell = ells[k];
    row.mean = mean;
    row.std_error = se;
    row.predicted = predicted.values[k];
    const double diff = mean - row.predicted;
    // Round-off sized discrepancies (e.g. multipoles the grid reconstructs
    // as zero) carry no statistical signal.
    if (std::abs(diff) <= kRoundoffFloor) {
      row.z = 0.0;
    } else if (se > 0.0) {
      row.z = diff / se;
    } else {
      row.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace spinalias
