#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spinalias/specialfn.hpp"

using namespace spinalias;

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

// Explicit finite-sum form of the Jacobi polynomial.
double jacobi_sum(int n, double a, double b, double t) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    double c1 = std::tgamma(n + a + 1) / (std::tgamma(k + 1) * std::tgamma(n + a - k + 1));
    double c2 = std::tgamma(n + b + 1) / (std::tgamma(n - k + 1) * std::tgamma(b + k + 1));
    sum += c1 * c2 * std::pow((t - 1) / 2, n - k) * std::pow((t + 1) / 2, k);
  }
  return sum;
}

// Wigner's explicit sum for the standard d^j_{m1,m2}(beta).
double wigner_sum(int j, int m1, int m2, double beta) {
  double sum = 0.0;
  for (int k = 0; k <= 2 * j; ++k) {
    const int f1 = j + m2 - k;
    const int f3 = m1 - m2 + k;
    const int f4 = j - m1 - k;
    if (f1 < 0 || f3 < 0 || f4 < 0) {
      continue;
    }
    const double sign = ((m1 - m2 + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign *
           std::sqrt(factorial(j + m1) * factorial(j - m1) * factorial(j + m2) *
                     factorial(j - m2)) /
           (factorial(f1) * factorial(k) * factorial(f3) * factorial(f4)) *
           std::pow(std::cos(beta / 2), 2 * j + m2 - m1 - 2 * k) *
           std::pow(std::sin(beta / 2), m1 - m2 + 2 * k);
  }
  return sum;
}

}  // namespace

TEST(Jacobi, DegreeZeroIsOne) { EXPECT_DOUBLE_EQ(jacobi({0, 2.0, 2.0}, 0.7), 1.0); }

TEST(Jacobi, LegendreDegreeTwo) { EXPECT_NEAR(jacobi({2, 0.0, 0.0}, 0.5), -0.125, 1e-15); }

TEST(Jacobi, ReflectionExample) {
  const double lhs = jacobi({3, 2.0, 1.0}, -0.3);
  EXPECT_NEAR(lhs, -jacobi({3, 1.0, 2.0}, 0.3), 1e-14);
  EXPECT_NEAR(lhs, 0.5815, 1e-14);
}

TEST(Jacobi, MatchesExplicitSum) {
  for (int n = 0; n <= 12; ++n) {
    for (double a : {0.0, 0.5, 2.0, 5.0}) {
      for (double b : {0.0, 1.0, 3.5}) {
        for (double t : {-1.0, -0.81, -0.2, 0.0, 0.33, 0.9, 1.0}) {
          const double ref = jacobi_sum(n, a, b, t);
          EXPECT_NEAR(jacobi({n, a, b}, t), ref, 1e-11 * std::max(1.0, std::abs(ref)));
        }
      }
    }
  }
}

TEST(Jacobi, ParitySweep) {
  for (int n = 0; n <= 30; ++n) {
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; b <= 6; ++b) {
        for (int i = 0; i <= 100; ++i) {
          const double t = -1.0 + 0.02 * i;
          const double lhs = jacobi({n, double(a), double(b)}, -t);
          const double rhs = (n % 2 == 0 ? 1.0 : -1.0) * jacobi({n, double(b), double(a)}, t);
          ASSERT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)))
              << n << " " << a << " " << b << " " << t;
        }
      }
    }
  }
}

TEST(Jacobi, RejectsArgumentOutsideInterval) {
  EXPECT_THROW(jacobi({2, 0.0, 0.0}, 1.001), std::domain_error);
  EXPECT_NO_THROW(jacobi({2, 0.0, 0.0}, 1.0 + 1e-14));
  EXPECT_THROW(jacobi({-1, 0.0, 0.0}, 0.0), std::domain_error);
}

TEST(Jacobi, DerivativeMatchesFiniteDifference) {
  const double h = 1e-6;
  for (int n = 1; n <= 8; ++n) {
    const JacobiParams p{n, 1.0, 2.0};
    const double t = 0.3;
    const double fd = (jacobi(p, t + h) - jacobi(p, t - h)) / (2 * h);
    EXPECT_NEAR(jacobi_derivative(p, t), fd, 1e-6);
  }
}

TEST(JacobiNorm, ClosedValues) {
  EXPECT_NEAR(jacobi_norm({0, 0.0, 0.0}), 2.0, 1e-15);
  EXPECT_NEAR(jacobi_norm({1, 0.0, 0.0}), 2.0 / 3.0, 1e-15);
}

TEST(JacobiNorm, MatchesNumericalIntegration) {
  // Composite Simpson on the weighted square; integrand is a polynomial.
  auto integrate = [](const JacobiParams& p) {
    const int panels = 20000;
    const double h = 2.0 / panels;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
      const double t = -1.0 + i * h;
      const double f = std::pow(1 - t, p.alpha) * std::pow(1 + t, p.beta) *
                       std::pow(jacobi(p, t), 2);
      sum += f * (i == 0 || i == panels ? 1 : (i % 2 ? 4 : 2));
    }
    return sum * h / 3;
  };
  EXPECT_NEAR(jacobi_norm({2, 2.0, 2.0}), 64.0 / 45.0, 1e-13);
  for (const JacobiParams p : {JacobiParams{2, 2, 2}, JacobiParams{3, 1, 4}, JacobiParams{5, 0, 2},
                               JacobiParams{4, 3, 3}}) {
    EXPECT_NEAR(jacobi_norm(p), integrate(p), 1e-10 * jacobi_norm(p));
  }
}

TEST(JacobiNorm, RejectsBadParameters) {
  EXPECT_THROW(jacobi_norm({1, -1.0, 0.0}), std::domain_error);
  EXPECT_THROW(jacobi_norm({1, 0.0, -1.5}), std::domain_error);
}

TEST(HFactor, Values) {
  EXPECT_NEAR(h_factor(0, 0, 5), 1.0, 1e-15);
  EXPECT_NEAR(h_factor(2, 0, 2), std::sqrt(4.0 / 24.0), 1e-15);
  const double exact = std::sqrt(factorial(7) * factorial(13) / (factorial(12) * factorial(8)));
  EXPECT_NEAR(h_factor(2, 3, 10), exact, 1e-14);
  EXPECT_NEAR(h_factor(2, 3, 10), 1.2747548783981962, 1e-14);
}

TEST(HFactor, LargeDegreeStaysFinite) {
  const double v = h_factor(3, 1, 200);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
  EXPECT_NEAR(h_factor(0, 0, 200), 1.0, 1e-12);
}

TEST(HFactor, RejectsNegativeFactorials) { EXPECT_THROW(h_factor(3, 0, 2), std::domain_error); }

TEST(WignerD, TrivialAndFrozenValues) {
  EXPECT_NEAR(wigner_d({0, 0, 0}, 1.234), 1.0, 1e-15);
  EXPECT_NEAR(wigner_d({2, 0, 2}, kPi / 2), std::sqrt(6.0) / 4.0, 1e-15);
  EXPECT_NEAR(wigner_d({5, -3, 1}, 0.7), 0.47255326582222094, 1e-14);
  EXPECT_NEAR(wigner_d({4, 2, 3}, 2.1), -0.0088612937056433090, 1e-14);
  EXPECT_NEAR(wigner_d({6, 0, 2}, 1.1), -0.33228731637222633, 1e-14);
}

TEST(WignerD, ReflectionExample) {
  const double lhs = wigner_d({3, 1, 2}, kPi - 0.8);
  EXPECT_NEAR(lhs, -wigner_d({3, -1, 2}, 0.8), 1e-14);
  EXPECT_NEAR(lhs, -0.52447638550315455, 1e-14);
}

TEST(WignerD, MatchesExplicitSum) {
  for (int ell = 0; ell <= 10; ++ell) {
    for (int s = 0; s <= std::min(ell, 3); ++s) {
      for (int m = -ell; m <= ell; ++m) {
        for (double th : {0.0, 0.2, 1.0, 1.5707963, 2.5, kPi}) {
          EXPECT_NEAR(wigner_d({ell, m, s}, th), wigner_sum(ell, -s, m, th), 1e-12)
              << ell << " " << m << " " << s << " " << th;
        }
      }
    }
  }
}

TEST(WignerD, AgreesWithJacobiFormOnFirstQuadrant) {
  // d = h sin^{m+s}(th/2) cos^{m-s}(th/2) P_{l-m}^{(m+s, m-s)}(cos th) for m >= s.
  for (int ell = 0; ell <= 12; ++ell) {
    for (int s = 0; s <= std::min(ell, 3); ++s) {
      for (int m = s; m <= ell; ++m) {
        for (double th : {0.3, 1.2, 2.0, 2.9}) {
          const double direct = h_factor(-s, m, ell) * std::pow(std::sin(th / 2), m + s) *
                                std::pow(std::cos(th / 2), m - s) *
                                jacobi({ell - m, double(m + s), double(m - s)}, std::cos(th));
          EXPECT_NEAR(wigner_d({ell, m, s}, th), direct, 1e-12);
        }
      }
    }
  }
}

TEST(WignerD, ParitySweep) {
  for (int ell = 0; ell <= 20; ++ell) {
    for (int s = 0; s <= std::min(ell, 3); ++s) {
      for (int m = -ell; m <= ell; ++m) {
        for (int i = 0; i <= 40; ++i) {
          const double th = kPi * i / 40;
          const double sign = ((ell + s) % 2 == 0) ? 1.0 : -1.0;
          ASSERT_NEAR(wigner_d({ell, m, s}, kPi - th), sign * wigner_d({ell, -m, s}, th), 1e-12);
        }
      }
    }
  }
}

TEST(WignerD, RejectsBadInput) {
  EXPECT_THROW(wigner_d({1, 2, 0}, 0.5), std::out_of_range);
  EXPECT_THROW(wigner_d({1, 0, 2}, 0.5), std::out_of_range);
  EXPECT_THROW(wigner_d({2, 0, 0}, -0.1), std::domain_error);
  EXPECT_THROW(wigner_d({2, 0, 0}, kPi + 0.1), std::domain_error);
}

TEST(SpinHarmonic, ConstantMode) {
  EXPECT_NEAR(std::abs(spin_sph_harm({0, 0, 0}, 0.3, 1.1)), 1.0 / std::sqrt(4 * kPi), 1e-15);
  EXPECT_NEAR(spin_sph_harm({0, 0, 0}, 0.3, 1.1).real(), 0.28209479177387814, 1e-15);
}

TEST(SpinHarmonic, ModulusIndependentOfLongitude) {
  const double a = std::abs(spin_sph_harm({2, 1, 2}, kPi / 2, kPi));
  for (double phi : {0.0, 0.4, 2.0, 5.9}) {
    EXPECT_NEAR(std::abs(spin_sph_harm({2, 1, 2}, kPi / 2, phi)), a, 1e-15);
  }
}

TEST(SpinHarmonic, AdditionTheoremAtCoincidentPoints) {
  for (int ell = 0; ell <= 20; ++ell) {
    for (int s = 0; s <= std::min(ell, 3); ++s) {
      for (double th : {0.0, 0.4, 1.3, 2.2, kPi}) {
        double sum = 0.0;
        for (int m = -ell; m <= ell; ++m) {
          sum += std::norm(spin_sph_harm({ell, m, s}, th, 0.77));
        }
        ASSERT_NEAR(sum, (2 * ell + 1) / (4 * kPi), 1e-12);
      }
    }
  }
  double sum = 0.0;
  for (int m = -2; m <= 2; ++m) {
    sum += std::norm(spin_sph_harm({2, m, 2}, 1.0, 2.0));
  }
  EXPECT_NEAR(sum, 0.39788735772973836, 1e-12);
}

TEST(SpinHarmonic, ContinuousOrthonormality) {
  // 64-point Gauss-Legendre in cos(theta) by Newton on the Legendre recurrence,
  // trapezoid in phi; both exact for the integrands below.
  const int n = 64;
  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) {
        double q0 = 1.0;
        double q1 = t;
        for (int k = 2; k <= n; ++k) {
          const double q2 = ((2 * k - 1) * t * q1 - (k - 1) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        const double dq = n * (t * q1 - q0) / (t * t - 1);
        weights[i] = 2 / ((1 - t * t) * dq * dq);
        break;
      }
    }
    nodes[i] = t;
  }
  const int n_phi = 48;
  for (int s = 0; s <= 3; ++s) {
    for (int l1 = s; l1 <= 10; ++l1) {
      for (int l2 = s; l2 <= 10; ++l2) {
        for (int m1 = -std::min(l1, 2); m1 <= std::min(l1, 2); ++m1) {
          for (int m2 = -std::min(l2, 2); m2 <= std::min(l2, 2); ++m2) {
            std::complex<double> sum{0.0, 0.0};
            for (int i = 0; i < n; ++i) {
              const double th = std::acos(nodes[i]);
              for (int q = 0; q < n_phi; ++q) {
                const double phi = 2 * kPi * q / n_phi;
                sum += weights[i] * (2 * kPi / n_phi) * spin_sph_harm({l1, m1, s}, th, phi) *
                       std::conj(spin_sph_harm({l2, m2, s}, th, phi));
              }
            }
            const double expected = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
            ASSERT_NEAR(sum.real(), expected, 1e-10) << l1 << " " << m1 << " " << l2 << " " << m2;
            ASSERT_NEAR(sum.imag(), 0.0, 1e-10);
          }
        }
      }
    }
  }
}
