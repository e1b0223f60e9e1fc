#include "spinalias/aliasing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace spinalias {
namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

bool lattice_aligned(int m, int v, int Q) { return (v - m) % (2 * Q) == 0; }

}  // namespace

std::complex<double> h_q(int m, int v, int Q) {
  if (Q < 1) {
    throw std::invalid_argument("h_q: need Q >= 1");
  }
  std::complex<double> sum{0.0, 0.0};
  const double weight = std::numbers::pi / Q;
  for (int q = 0; q < 2 * Q; ++q) {
    sum += weight * std::polar(1.0, (v - m) * q * std::numbers::pi / Q);
  }
  return sum;
}

std::complex<double> h_q_closed(int m, int v, int Q) {
  if (Q < 1) {
    throw std::invalid_argument("h_q: need Q >= 1");
  }
  return lattice_aligned(m, v, Q) ? std::complex<double>{2.0 * std::numbers::pi, 0.0}
                                  : std::complex<double>{0.0, 0.0};
}

double i_n(const SamplingGrid& grid, int ell, int m, int u, int v, int s,
           ThetaWeighting weighting) {
  validate({ell, m, s});
  validate({u, v, s});
  const auto theta = grid.theta_nodes();
  const auto mu = grid.theta_sum_weights(weighting);
  double sum = 0.0;
  for (std::size_t p = 0; p < theta.size(); ++p) {
    sum += mu[p] * wigner_d({ell, m, s}, theta[p]) * wigner_d({u, v, s}, theta[p]);
  }
  return sum;
}

double i_n_half(const SamplingGrid& grid, int ell, int m, int s, ThetaWeighting weighting) {
  validate({ell, m, s});
  if (!validate_symmetry(grid).symmetric) {
    throw std::invalid_argument("i_n_half: grid is not symmetric about pi/2");
  }
  const auto theta = grid.theta_nodes();
  const auto mu = grid.theta_sum_weights(weighting);
  double sum = 0.0;
  for (const auto& [p, mirror] : mirror_pairs(grid)) {
    const double term =
        mu[p] * wigner_d({ell, m, s}, theta[p]) * wigner_d({ell, -m, s}, theta[p]);
    sum += (p == mirror) ? term : 2.0 * term;
  }
  return sum;
}

double kappa(int z1, int z2) {
  return 0.5 * std::sqrt((2.0 * z1 + 1.0) * (2.0 * z2 + 1.0));
}

double tau(const SamplingGrid& grid, const HarmonicIndex& source, int u, int v,
           ThetaWeighting weighting) {
  validate(source);
  validate({u, v, source.s});
  if (!lattice_aligned(source.m, v, grid.Q())) {
    return 0.0;
  }
  return kappa(source.ell, u) * i_n(grid, source.ell, source.m, u, v, source.s, weighting);
}

std::string_view to_string(AliasClass klass) {
  return klass == AliasClass::kPrimary ? "primary" : "secondary";
}

AliasClass classify(int j, int N, int s) {
  return j <= N - s - 1 ? AliasClass::kSecondary : AliasClass::kPrimary;
}

std::size_t AliasMap::count(AliasClass klass) const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [klass](const AliasEntry& e) { return e.klass == klass; }));
}

std::optional<double> AliasMap::min_distance() const {
  if (entries.empty()) {
    return std::nullopt;
  }
  return entries.front().distance;
}

int default_u_max(const HarmonicIndex& source, const SamplingGrid& grid) {
  return source.ell + 4 * (grid.N() - grid.s());
}

AliasMap enumerate_aliases(const HarmonicIndex& source, const SamplingGrid& grid,
                           std::optional<int> u_max, ThetaWeighting weighting) {
  validate(source);
  const int top = u_max.value_or(default_u_max(source, grid));
  if (top < source.ell) {
    throw std::invalid_argument("enumerate_aliases: u_max " + std::to_string(top) +
                                " below l=" + std::to_string(source.ell));
  }
  const int Q = grid.Q();
  AliasMap map{source, grid, top, weighting, {}};
  for (int u = source.s; u <= top; ++u) {
    const int j = u - source.ell;
    const int r_lo = ceil_div(-u - source.m, 2 * Q);
    const int r_hi = floor_div(u - source.m, 2 * Q);
    for (int r = r_lo; r <= r_hi; ++r) {
      if (j == 0 && r == 0) {
        continue;
      }
      const int v = source.m + 2 * r * Q;
      const double t =
          kappa(source.ell, u) * i_n(grid, source.ell, source.m, u, v, source.s, weighting);
      if (std::abs(t) <= kIntensityFloor) {
        continue;
      }
      AliasEntry e;
      e.source = source;
      e.alias = {u, v, source.s};
      e.j = j;
      e.r = r;
      e.klass = classify(j, grid.N(), grid.s());
      e.tau = t;
      e.intensity = std::abs(t);
      e.distance = std::hypot(static_cast<double>(j), 2.0 * r * Q);
      map.entries.push_back(e);
    }
  }
  std::sort(map.entries.begin(), map.entries.end(),
            [](const AliasEntry& a, const AliasEntry& b) {
              return std::tie(a.distance, a.j, a.r) < std::tie(b.distance, b.j, b.r);
            });
  return map;
}

double claimed_min_distance(int N, int s) {
  return std::hypot(static_cast<double>(N - s), 2.0 * N);
}

std::complex<double> aliased_coefficient(const FieldSamples& field,
                                         const HarmonicIndex& source,
                                         ThetaWeighting weighting) {
  validate(source);
  const SamplingGrid& grid = field.grid();
  const auto theta = grid.theta_nodes();
  const auto mu = grid.theta_sum_weights(weighting);
  const auto phi = grid.phi_nodes();
  const auto w_phi = grid.phi_weights();
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t p = 0; p < theta.size(); ++p) {
    for (std::size_t q = 0; q < phi.size(); ++q) {
      sum += mu[p] * w_phi[q] * field.at(p, q) *
             std::conj(spin_sph_harm(source, theta[p], phi[q]));
    }
  }
  return sum;
}

std::pair<std::complex<double>, std::complex<double>> eb_split(std::complex<double> a_m,
                                                               std::complex<double> a_minus_m) {
  const std::complex<double> c = std::conj(a_minus_m);
  return {0.5 * (a_m + c), 0.5 * (a_m - c)};
}

std::pair<std::complex<double>, std::complex<double>> aliased_eb(
    const SpinCoefficients& coeffs, const SamplingGrid& grid, int ell, int m,
    ThetaWeighting weighting) {
  const FieldSamples field = synthesize(coeffs, grid);
  const int s = coeffs.s();
  return eb_split(aliased_coefficient(field, {ell, m, s}, weighting),
                  aliased_coefficient(field, {ell, -m, s}, weighting));
}

}  // namespace spinalias
