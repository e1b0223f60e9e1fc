#include "spinalias/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spinalias/specialfn.hpp"

namespace spinalias {
namespace {

constexpr double kSymmetryTolerance = 1e-12;

void check_gauss_parameters(int n, double alpha, double beta) {
  if (n < 1) {
    throw std::domain_error("gauss_nodes: need n >= 1, got " + std::to_string(n));
  }
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("gauss_nodes: need alpha > -1 and beta > -1");
  }
}

struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::VectorXd first_components;
};

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix of the
// monic recurrence.
Eigensystem jacobi_matrix_eigensystem(int n, double alpha, double beta) {
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (c * (c + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double b2 = 0.0;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double c = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           (c * c * (c + 1.0) * (c - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_nodes: tridiagonal eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors().row(0).transpose()};
}

double polish_root(int n, double alpha, double beta, double t) {
  const JacobiParams p{n, alpha, beta};
  for (int iter = 0; iter < 3; ++iter) {
    const double dp = jacobi_derivative(p, t);
    if (dp == 0.0) {
      break;
    }
    const double step = jacobi(p, t) / dp;
    const double next = std::clamp(t - step, -1.0, 1.0);
    if (next == t) {
      break;
    }
    t = next;
  }
  return t;
}

}  // namespace

std::string_view to_string(SamplingScheme scheme) {
  switch (scheme) {
    case SamplingScheme::kGaussJacobi:
      return "gauss";
    case SamplingScheme::kEquiangular:
      return "equiangular";
  }
  return "unknown";
}

std::optional<SamplingScheme> parse_scheme(std::string_view text) {
  if (text == "gauss" || text == "gauss-jacobi" || text == "gj") {
    return SamplingScheme::kGaussJacobi;
  }
  if (text == "equiangular" || text == "ea") {
    return SamplingScheme::kEquiangular;
  }
  return std::nullopt;
}

std::string_view to_string(ThetaWeighting weighting) {
  switch (weighting) {
    case ThetaWeighting::kCubature:
      return "cubature";
    case ThetaWeighting::kBare:
      return "bare";
  }
  return "unknown";
}

std::optional<ThetaWeighting> parse_weighting(std::string_view text) {
  if (text == "cubature") {
    return ThetaWeighting::kCubature;
  }
  if (text == "bare") {
    return ThetaWeighting::kBare;
  }
  return std::nullopt;
}

std::vector<QuadratureNode> gauss_nodes(int n, double alpha, double beta) {
  check_gauss_parameters(n, alpha, beta);
  const Eigensystem eig = jacobi_matrix_eigensystem(n, alpha, beta);

  const double log_gtilde =
      (alpha + beta + 1.0) * std::numbers::ln2 + std::lgamma(n + alpha + 1.0) +
      std::lgamma(n + beta + 1.0) - log_factorial(n) -
      std::lgamma(n + alpha + beta + 1.0);
  const double gtilde = std::exp(log_gtilde);

  std::vector<QuadratureNode> rule(n);
  for (int k = 0; k < n; ++k) {
    const double t = polish_root(n, alpha, beta, eig.values(k));
    const double dp = jacobi_derivative({n, alpha, beta}, t);
    rule[k] = {t, gtilde / ((1.0 - t * t) * dp * dp)};
  }
  std::sort(rule.begin(), rule.end(),
            [](const QuadratureNode& a, const QuadratureNode& b) { return a.node < b.node; });
  return rule;
}

std::vector<QuadratureNode> gauss_nodes_eigenvector_weights(int n, double alpha,
                                                            double beta) {
  check_gauss_parameters(n, alpha, beta);
  const Eigensystem eig = jacobi_matrix_eigensystem(n, alpha, beta);
  const double mu0 = jacobi_norm({0, alpha, beta});
  std::vector<QuadratureNode> rule(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = eig.first_components(k);
    rule[k] = {polish_root(n, alpha, beta, eig.values(k)), mu0 * v0 * v0};
  }
  std::sort(rule.begin(), rule.end(),
            [](const QuadratureNode& a, const QuadratureNode& b) { return a.node < b.node; });
  return rule;
}

SamplingGrid::SamplingGrid(SamplingScheme scheme, int N, int s, int Q,
                           std::vector<double> theta_nodes,
                           std::vector<double> theta_weights)
    : scheme_(scheme),
      N_(N),
      s_(s),
      Q_(Q),
      theta_nodes_(std::move(theta_nodes)),
      theta_weights_(std::move(theta_weights)) {
  if (Q < 1) {
    throw std::invalid_argument("sampling grid: need Q >= 1, got " + std::to_string(Q));
  }
  if (theta_nodes_.size() != theta_weights_.size()) {
    throw std::invalid_argument("sampling grid: theta nodes and weights differ in length");
  }
  theta_measure_.resize(theta_nodes_.size());
  for (std::size_t p = 0; p < theta_nodes_.size(); ++p) {
    theta_measure_[p] = scheme_ == SamplingScheme::kGaussJacobi
                            ? theta_weights_[p] * std::sin(theta_nodes_[p])
                            : theta_weights_[p];
  }
  const int count = 2 * Q;
  phi_nodes_.resize(count);
  phi_weights_.assign(count, std::numbers::pi / Q);
  for (int q = 0; q < count; ++q) {
    phi_nodes_[q] = q * std::numbers::pi / Q;
  }
}

std::span<const double> SamplingGrid::theta_sum_weights(ThetaWeighting weighting) const {
  return weighting == ThetaWeighting::kCubature ? std::span<const double>(theta_measure_)
                                                : std::span<const double>(theta_weights_);
}

SamplingGrid build_grid_gauss(int N, int s, int Q, GaussNodeFamily family) {
  if (s < 0) {
    throw std::invalid_argument("gauss grid: spin must be >= 0");
  }
  if (N <= s) {
    throw std::invalid_argument("gauss grid: need N > s, got N=" + std::to_string(N) +
                                ", s=" + std::to_string(s));
  }
  if (Q < 1) {
    throw std::invalid_argument("gauss grid: need Q >= 1, got Q=" + std::to_string(Q));
  }
  const std::vector<QuadratureNode> rule =
      family == GaussNodeFamily::kLegendre ? gauss_nodes(N - s, 0.0, 0.0)
                                           : gauss_nodes(N, s, s);
  // Increasing theta means decreasing t.
  std::vector<double> nodes;
  std::vector<double> weights;
  nodes.reserve(rule.size());
  weights.reserve(rule.size());
  for (auto it = rule.rbegin(); it != rule.rend(); ++it) {
    const double theta = std::acos(it->node);
    nodes.push_back(theta);
    weights.push_back(it->weight / std::sin(theta));
  }
  return SamplingGrid(SamplingScheme::kGaussJacobi, N, s, Q, std::move(nodes),
                      std::move(weights));
}

SamplingGrid build_grid_equiangular(int N, int s, int Q) {
  if (s < 0) {
    throw std::invalid_argument("equiangular grid: spin must be >= 0");
  }
  const int half = N - s;
  if (half <= 0 || half % 2 != 0) {
    throw std::invalid_argument("equiangular grid: need N - s even and positive, got N=" +
                                std::to_string(N) + ", s=" + std::to_string(s));
  }
  if (Q < 1) {
    throw std::invalid_argument("equiangular grid: need Q >= 1, got Q=" + std::to_string(Q));
  }
  const int count = 2 * half;
  std::vector<double> nodes(count);
  std::vector<double> weights(count);
  for (int p = 0; p < count; ++p) {
    const double theta = std::numbers::pi * p / count;
    double series = 0.0;
    for (int n = 0; n < half; ++n) {
      series += std::sin((2 * n + 1) * theta) / (2 * n + 1);
    }
    nodes[p] = theta;
    weights[p] = (2.0 / half) * std::sin(theta) * series;
  }
  return SamplingGrid(SamplingScheme::kEquiangular, N, s, Q, std::move(nodes),
                      std::move(weights));
}

SamplingGrid build_grid(SamplingScheme scheme, int N, int s, int Q) {
  return scheme == SamplingScheme::kGaussJacobi ? build_grid_gauss(N, s, Q)
                                                : build_grid_equiangular(N, s, Q);
}

namespace {

// Indices of nodes that take part in the mirror symmetry; a weightless pole
// at theta = 0 is set aside.
std::vector<std::size_t> mirrored_indices(const SamplingGrid& grid, bool* pole_set_aside) {
  const auto nodes = grid.theta_nodes();
  const auto weights = grid.theta_weights();
  std::vector<std::size_t> idx;
  *pole_set_aside = false;
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    if (!*pole_set_aside && std::abs(nodes[p]) <= kSymmetryTolerance &&
        std::abs(weights[p]) <= kSymmetryTolerance) {
      *pole_set_aside = true;
      continue;
    }
    idx.push_back(p);
  }
  return idx;
}

}  // namespace

SymmetryReport validate_symmetry(const SamplingGrid& grid) {
  bool pole = false;
  const std::vector<std::size_t> idx = mirrored_indices(grid, &pole);
  const auto nodes = grid.theta_nodes();
  const auto weights = grid.theta_weights();
  SymmetryReport report;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::size_t p = idx[i];
    const std::size_t q = idx[idx.size() - 1 - i];
    report.max_deviation = std::max(
        {report.max_deviation, std::abs(nodes[p] + nodes[q] - std::numbers::pi),
         std::abs(weights[p] - weights[q])});
  }
  report.symmetric = report.max_deviation <= kSymmetryTolerance;
  return report;
}

std::vector<std::pair<std::size_t, std::size_t>> mirror_pairs(const SamplingGrid& grid) {
  bool pole = false;
  const std::vector<std::size_t> idx = mirrored_indices(grid, &pole);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (pole) {
    pairs.emplace_back(0, 0);
  }
  for (std::size_t i = 0; i < (idx.size() + 1) / 2; ++i) {
    pairs.emplace_back(idx[i], idx[idx.size() - 1 - i]);
  }
  return pairs;
}

}  // namespace spinalias
