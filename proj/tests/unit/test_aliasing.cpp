#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "spinalias/aliasing.hpp"
#include "spinalias/fieldsim.hpp"

using namespace spinalias;

namespace {

constexpr double kPi = std::numbers::pi;

SpinCoefficients random_coeffs(int s, int l_max, unsigned seed) {
  SpinCoefficients c(s, l_max);
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : c.values()) {
    v = {u(gen), u(gen)};
  }
  return c;
}

}  // namespace

TEST(HQ, Examples) {
  EXPECT_NEAR(std::abs(h_q(3, 3, 5) - 2 * kPi), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(h_q(0, 2, 1) - 2 * kPi), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(h_q(0, 1, 2)), 0.0, 1e-12);
}

TEST(HQ, KroneckerStructure) {
  for (int Q = 1; Q <= 6; ++Q) {
    for (int m = -10; m <= 10; ++m) {
      for (int v = -10; v <= 10; ++v) {
        const auto direct = h_q(m, v, Q);
        const auto closed = h_q_closed(m, v, Q);
        ASSERT_NEAR(std::abs(direct - closed), 0.0, 1e-12);
        if ((v - m) % (2 * Q) == 0) {
          ASSERT_NEAR(std::abs(direct - 2 * kPi), 0.0, 1e-12);
        } else {
          ASSERT_LT(std::abs(direct), 1e-12);
        }
      }
    }
  }
  EXPECT_THROW(h_q(0, 0, 0), std::invalid_argument);
}

TEST(IN, WorkedExampleBareWeights) {
  const SamplingGrid g = build_grid_gauss(6, 2, 1);
  const double value = i_n(g, 2, 0, 2, 2, 2, ThetaWeighting::kBare);
  EXPECT_NEAR(value, 0.7640 / kappa(2, 2), 0.02 / kappa(2, 2));
  EXPECT_NEAR(value, 0.75946824931666912 / 2.5, 1e-13);
}

TEST(IN, ExactRegimeIsOrthogonalityConstant) {
  for (int s = 0; s <= 3; ++s) {
    for (int N = s + 1; N <= s + 8; ++N) {
      const SamplingGrid g = build_grid_gauss(N, s, 1);
      for (int ell = s; 2 * ell <= 2 * (N - s) - 1; ++ell) {
        for (int m = -ell; m <= ell; ++m) {
          EXPECT_NEAR(i_n(g, ell, m, ell, m, s), 2.0 / (2 * ell + 1), 1e-12);
        }
      }
    }
  }
}

TEST(IN, ParityAnnihilation) {
  for (int s = 0; s <= 3; ++s) {
    for (const SamplingGrid& g :
         {build_grid_gauss(s + 5, s, 1), build_grid_equiangular(s + 4, s, 1),
          build_grid_gauss(s + 2, s, 3), build_grid_equiangular(s + 8, s, 2)}) {
      for (int ell = s; ell <= 8; ++ell) {
        for (int j = 1; j <= 9; j += 2) {
          for (auto w : {ThetaWeighting::kCubature, ThetaWeighting::kBare}) {
            ASSERT_LT(std::abs(i_n(g, ell, 0, ell + j, 0, s, w)), 1e-12);
          }
        }
      }
    }
  }
}

TEST(IN, HalfGridMatchesFullGrid) {
  for (int s = 0; s <= 3; ++s) {
    for (const SamplingGrid& g : {build_grid_gauss(s + 5, s, 1), build_grid_gauss(s + 6, s, 1),
                                  build_grid_equiangular(s + 6, s, 1)}) {
      for (int ell = s; ell <= 9; ++ell) {
        for (int m = -ell; m <= ell; ++m) {
          ASSERT_NEAR(i_n_half(g, ell, m, s), i_n(g, ell, m, ell, -m, s), 1e-12);
        }
      }
    }
  }
  const SamplingGrid skew(SamplingScheme::kGaussJacobi, 4, 2, 1, {0.5, 1.0}, {1.0, 1.0});
  EXPECT_THROW(i_n_half(skew, 2, 0, 2), std::invalid_argument);
}

TEST(Tau, WorkedExamples) {
  const SamplingGrid gj = build_grid_gauss(6, 2, 1);
  const SamplingGrid ea = build_grid_equiangular(6, 2, 1);
  EXPECT_NEAR(tau(gj, {2, 0, 2}, 2, 2, ThetaWeighting::kBare), 0.7640, 0.02);
  EXPECT_NEAR(tau(ea, {2, 0, 2}, 4, 4), 0.8263, 0.005);
  EXPECT_NEAR(tau(ea, {2, 0, 2}, 4, 4), 0.82807867121082535, 1e-13);
  for (const SamplingGrid& g : {gj, ea, build_grid_gauss(6, 2, 4)}) {
    EXPECT_EQ(tau(g, {2, 0, 2}, 3, 1), 0.0);
  }
}

TEST(Tau, Symmetry) {
  for (const SamplingGrid& g : {build_grid_gauss(6, 2, 1), build_grid_equiangular(6, 2, 2),
                                build_grid_gauss(5, 0, 2)}) {
    const int s = g.s();
    for (int ell = s; ell <= 8; ++ell) {
      for (int u = s; u <= 8; ++u) {
        for (int m = -ell; m <= ell; ++m) {
          for (int v = -u; v <= u; ++v) {
            ASSERT_NEAR(tau(g, {ell, m, s}, u, v), tau(g, {u, v, s}, ell, m), 1e-12);
          }
        }
      }
    }
  }
}

TEST(Tau, DiscreteOrthonormality) {
  for (int s = 0; s <= 3; ++s) {
    for (int N = s + 1; N <= s + 7; ++N) {
      const SamplingGrid g = build_grid_gauss(N, s, 1);
      for (int ell = s; ell <= 2 * (N - s) - 1; ++ell) {
        for (int u = s; ell + u <= 2 * (N - s) - 1; ++u) {
          for (int m = -std::min(ell, u); m <= std::min(ell, u); ++m) {
            ASSERT_NEAR(tau(g, {ell, m, s}, u, m), ell == u ? 1.0 : 0.0, 1e-12);
          }
        }
      }
    }
  }
}

TEST(Enumerate, QOneHasSecondaryAliases) {
  const AliasMap map = enumerate_aliases({2, 0, 2}, build_grid_gauss(6, 2, 1), 5);
  auto find = [&](int j, int r) -> const AliasEntry* {
    for (const auto& e : map.entries) {
      if (e.j == j && e.r == r) {
        return &e;
      }
    }
    return nullptr;
  };
  for (int j : {2, 3}) {
    for (int r : {1, -1}) {
      const AliasEntry* e = find(j, r);
      ASSERT_NE(e, nullptr) << j << " " << r;
      EXPECT_EQ(e->klass, AliasClass::kSecondary);
      EXPECT_GT(e->intensity, 0.1);
    }
  }
  const AliasEntry* e = find(0, 1);
  ASSERT_NE(e, nullptr);
  EXPECT_DOUBLE_EQ(e->distance, 2.0);
}

TEST(Enumerate, QTwoStillHasSecondaryAliases) {
  // Oversampling in longitude does not remove every secondary cell when
  // l + |m| is large compared to N - s.
  const AliasMap map = enumerate_aliases({2, 0, 2}, build_grid_gauss(6, 2, 2), 5);
  EXPECT_EQ(map.count(AliasClass::kSecondary), 4u);
  for (const auto& e : map.entries) {
    ASSERT_EQ(std::abs(e.r), 1);
    if (e.j == 2) {
      EXPECT_NEAR(e.tau, 0.82807867121082535, 1e-12);
    } else {
      EXPECT_EQ(e.j, 3);
      EXPECT_NEAR(std::abs(e.tau), 0.44948950635863688, 1e-12);
    }
  }
}

TEST(Enumerate, Invariants) {
  for (const SamplingGrid& g : {build_grid_gauss(6, 2, 1), build_grid_equiangular(6, 2, 2),
                                build_grid_gauss(5, 1, 3)}) {
    const int s = g.s();
    for (int ell = s; ell <= 5; ++ell) {
      for (int m = -ell; m <= ell; ++m) {
        const AliasMap map = enumerate_aliases({ell, m, s}, g);
        EXPECT_EQ(map.u_max, ell + 4 * (g.N() - s));
        std::set<std::pair<int, int>> cells;
        for (std::size_t i = 0; i < map.entries.size(); ++i) {
          const AliasEntry& e = map.entries[i];
          EXPECT_TRUE(cells.insert({e.j, e.r}).second);
          EXPECT_FALSE(e.j == 0 && e.r == 0);
          EXPECT_GT(e.intensity, kIntensityFloor);
          EXPECT_EQ(e.intensity, std::abs(e.tau));
          EXPECT_LE(std::abs(e.alias.m), e.alias.ell);
          EXPECT_EQ(e.alias.ell, ell + e.j);
          EXPECT_EQ(e.alias.m, m + 2 * e.r * g.Q());
          EXPECT_DOUBLE_EQ(e.distance, std::hypot(double(e.j), 2.0 * e.r * g.Q()));
          EXPECT_EQ(e.klass, e.j <= g.N() - s - 1 ? AliasClass::kSecondary : AliasClass::kPrimary);
          EXPECT_NEAR(e.tau, tau(g, {ell, m, s}, e.alias.ell, e.alias.m), 1e-15);
          if (i) {
            const AliasEntry& p = map.entries[i - 1];
            EXPECT_TRUE(std::tie(p.distance, p.j, p.r) < std::tie(e.distance, e.j, e.r));
          }
        }
      }
    }
  }
}

TEST(Enumerate, ZeroOrderColumn) {
  // m = 0, r = 0: even offsets survive as primary aliases, odd ones vanish.
  const SamplingGrid g = build_grid_gauss(6, 2, 1);
  const AliasMap map = enumerate_aliases({2, 0, 2}, g, 14);
  bool even_primary = false;
  for (const auto& e : map.entries) {
    if (e.r == 0) {
      EXPECT_EQ(e.j % 2, 0);
      even_primary |= e.klass == AliasClass::kPrimary;
    }
  }
  EXPECT_TRUE(even_primary);
}

TEST(Enumerate, TruncationMonotone) {
  const SamplingGrid g = build_grid_gauss(6, 2, 1);
  const AliasMap small = enumerate_aliases({2, 0, 2}, g, 2);
  const AliasMap big = enumerate_aliases({2, 0, 2}, g, 5);
  for (const auto& e : small.entries) {
    bool found = false;
    for (const auto& f : big.entries) {
      found |= (e.j == f.j && e.r == f.r && e.tau == f.tau);
    }
    EXPECT_TRUE(found);
  }
  EXPECT_LT(small.entries.size(), big.entries.size());
  EXPECT_THROW(enumerate_aliases({2, 0, 2}, g, 1), std::invalid_argument);
}

TEST(Enumerate, ClaimedMinimumDistance) {
  EXPECT_NEAR(claimed_min_distance(6, 2), std::sqrt(16.0 + 144.0), 1e-14);
  EXPECT_NEAR(claimed_min_distance(6, 2), 6 * std::sqrt(5 + 4.0 / 36 - 4.0 / 6), 1e-12);
  // For m != 0 the r = 0 column gives a nearer alias at j = N - s.
  const AliasMap map = enumerate_aliases({3, 1, 2}, build_grid_gauss(6, 2, 5));
  ASSERT_TRUE(map.min_distance().has_value());
  EXPECT_LE(*map.min_distance(), claimed_min_distance(6, 2));
}

TEST(AliasedCoefficient, ZeroField) {
  const FieldSamples f(build_grid_gauss(6, 2, 2));
  EXPECT_EQ(std::abs(aliased_coefficient(f, {3, 1, 2})), 0.0);
}

TEST(AliasedCoefficient, SingleModeGivesTau) {
  for (const SamplingGrid& g : {build_grid_gauss(6, 2, 1), build_grid_equiangular(6, 2, 1)}) {
    for (int u = 2; u <= 6; ++u) {
      for (int v = -u; v <= u; ++v) {
        SpinCoefficients c(2, 6);
        c.at(u, v) = 1.0;
        const FieldSamples f = synthesize(c, g);
        for (int ell = 2; ell <= 5; ++ell) {
          for (int m = -ell; m <= ell; ++m) {
            const auto a = aliased_coefficient(f, {ell, m, 2});
            ASSERT_NEAR(std::abs(a - tau(g, {ell, m, 2}, u, v)), 0.0, 1e-12);
          }
        }
      }
    }
  }
}

TEST(AliasedCoefficient, SpectralDirectAgreement) {
  for (const SamplingGrid& g : {build_grid_gauss(6, 2, 1), build_grid_equiangular(8, 2, 2)}) {
    const SpinCoefficients c = random_coeffs(2, 9, 11);
    const FieldSamples f = synthesize(c, g);
    for (int ell = 2; ell <= 6; ++ell) {
      for (int m = -ell; m <= ell; ++m) {
        std::complex<double> expected{0.0, 0.0};
        for (int u = 2; u <= 9; ++u) {
          for (int v = -u; v <= u; ++v) {
            expected += tau(g, {ell, m, 2}, u, v) * c.at(u, v);
          }
        }
        ASSERT_NEAR(std::abs(aliased_coefficient(f, {ell, m, 2}) - expected), 0.0, 1e-10);
      }
    }
  }
}

TEST(AliasedCoefficient, BandLimitedIsExact) {
  const SamplingGrid g = build_grid_gauss(8, 2, 8);
  const SpinCoefficients c = random_coeffs(2, 4, 5);
  const FieldSamples f = synthesize(c, g);
  for (int ell = 2; ell <= 4; ++ell) {
    for (int m = -ell; m <= ell; ++m) {
      EXPECT_NEAR(std::abs(aliased_coefficient(f, {ell, m, 2}) - c.at(ell, m)), 0.0, 1e-10);
    }
  }
}

TEST(EB, SplitProperties) {
  const std::complex<double> a{0.3, -1.2};
  auto [e1, b1] = eb_split(a, std::conj(a));
  EXPECT_EQ(std::abs(b1), 0.0);
  auto [e2, b2] = eb_split(a, -std::conj(a));
  EXPECT_EQ(std::abs(e2), 0.0);
  auto [e3, b3] = eb_split(a, {2.0, 0.7});
  EXPECT_NEAR(std::abs(e3 + b3 - a), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e1 + b1 - a), 0.0, 1e-15);
}

TEST(EB, AliasedSplitSumsToCoefficient) {
  const SamplingGrid g = build_grid_gauss(6, 2, 1);
  const SpinCoefficients c = random_coeffs(2, 7, 3);
  const FieldSamples f = synthesize(c, g);
  for (int m = -3; m <= 3; ++m) {
    auto [e, b] = aliased_eb(c, g, 3, m);
    EXPECT_NEAR(std::abs(e + b - aliased_coefficient(f, {3, m, 2})), 0.0, 1e-12);
  }
}
