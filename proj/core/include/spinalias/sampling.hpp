#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace spinalias {

enum class SamplingScheme { kGaussJacobi, kEquiangular };

std::string_view to_string(SamplingScheme scheme);
/// Accepts "gauss" / "gauss-jacobi" and "equiangular".
std::optional<SamplingScheme> parse_scheme(std::string_view text);

/// Node family for the Gauss-Jacobi colatitude rule.
enum class GaussNodeFamily {
  /// N - s Gauss-Legendre nodes (reproduces the published N=6, s=2 table).
  kLegendre,
  /// N roots of P_N^{(s,s)} with the matching Gauss-Jacobi weights.
  kJacobiSpin,
};

/// How colatitude weights enter a discrete sum over theta nodes.
enum class ThetaWeighting {
  /// Per-node cubature measure mu_p with sum_p mu_p g(theta_p) approximating
  /// the integral of g(theta) sin(theta) over [0, pi].
  kCubature,
  /// The stored theta weights alone, with no sin(theta) factor. This is the
  /// convention behind the published aliasing-function table.
  kBare,
};

std::string_view to_string(ThetaWeighting weighting);
std::optional<ThetaWeighting> parse_weighting(std::string_view text);

struct QuadratureNode {
  double node = 0.0;
  double weight = 0.0;
};

/// n-point Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta.
///
/// Nodes come from the Golub-Welsch tridiagonal eigenproblem and are polished
/// by Newton steps on the recurrence; weights use the closed form
/// G~ / ((1 - t^2) P_n'(t)^2). Nodes are returned in increasing order.
std::vector<QuadratureNode> gauss_nodes(int n, double alpha, double beta);

/// Same nodes, weights taken from the first eigenvector components
/// (mu_0 v_0^2). Independent route for cross-checking gauss_nodes.
std::vector<QuadratureNode> gauss_nodes_eigenvector_weights(int n, double alpha,
                                                            double beta);

/// Separable colatitude x longitude sampling grid.
///
/// Longitude nodes are always the 2Q-point trapezoidal rule phi_q = q pi / Q
/// with weights pi / Q. Colatitude nodes and weights are stored as given; the
/// cubature measure is derived from the scheme (w sin(theta) for
/// Gauss-Jacobi, w for equiangular, whose weights already carry sin(theta)).
class SamplingGrid {
 public:
  SamplingGrid(SamplingScheme scheme, int N, int s, int Q,
               std::vector<double> theta_nodes,
               std::vector<double> theta_weights);

  SamplingScheme scheme() const { return scheme_; }
  int N() const { return N_; }
  int s() const { return s_; }
  int Q() const { return Q_; }

  std::span<const double> theta_nodes() const { return theta_nodes_; }
  std::span<const double> theta_weights() const { return theta_weights_; }
  std::span<const double> phi_nodes() const { return phi_nodes_; }
  std::span<const double> phi_weights() const { return phi_weights_; }

  /// Per-node factor multiplying g(theta_p) in a colatitude sum.
  std::span<const double> theta_sum_weights(ThetaWeighting weighting) const;

  std::size_t theta_count() const { return theta_nodes_.size(); }
  std::size_t phi_count() const { return phi_nodes_.size(); }

 private:
  SamplingScheme scheme_;
  int N_;
  int s_;
  int Q_;
  std::vector<double> theta_nodes_;
  std::vector<double> theta_weights_;
  std::vector<double> theta_measure_;
  std::vector<double> phi_nodes_;
  std::vector<double> phi_weights_;
};

/// Gauss-Jacobi colatitude rule. Requires N > s >= 0 and Q >= 1.
SamplingGrid build_grid_gauss(int N, int s, int Q,
                              GaussNodeFamily family = GaussNodeFamily::kLegendre);

/// Equiangular colatitude rule with N' = N - s: theta_p = pi p / (2N'),
/// p = 0..2N'-1. Requires N - s even and positive, Q >= 1.
SamplingGrid build_grid_equiangular(int N, int s, int Q);

SamplingGrid build_grid(SamplingScheme scheme, int N, int s, int Q);

struct SymmetryReport {
  bool symmetric = false;
  double max_deviation = 0.0;
};

/// Checks theta_p + theta_{n-1-p} = pi and w_p = w_{n-1-p} to 1e-12, with a
/// zero-weight node at theta = 0 treated as its own mirror.
SymmetryReport validate_symmetry(const SamplingGrid& grid);

/// Index pairs (p, mirror(p)) implied by the colatitude symmetry; self-mirrored
/// nodes appear as (p, p). Each node appears in exactly one pair.
std::vector<std::pair<std::size_t, std::size_t>> mirror_pairs(
    const SamplingGrid& grid);

}  // namespace spinalias
