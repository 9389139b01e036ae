#include <gtest/gtest.h>

#include <random>

#include "kntorus/cocycle.hpp"
#include "kntorus/fock.hpp"
#include "support/oracles.hpp"

using namespace kntorus;

namespace {

AlgebraParams derived() {
  TorusConfig cfg;
  return lambda_coefficients(cfg);
}

FockVector random_vector(std::mt19937_64& rng, int terms) {
  FockVector v;
  for (int t = 0; t < terms; ++t) v.add(oracle::random_wedge(rng, -6, 6, 4), oracle::random_complex(rng, 1.0));
  return v;
}

}  // namespace

TEST(Wedge, VacuumActions) {
  const WedgeState vac = WedgeState::vacuum();
  EXPECT_TRUE(wedge_c(-2, vac).empty());
  EXPECT_TRUE(contract_b(-1, vac).empty());
  const FockVector c0 = wedge_c(0, vac);
  EXPECT_EQ(c0.coefficient(WedgeState{{0}, {}}), cplx(1.0));
  const FockVector b2 = contract_b(-2, vac);
  EXPECT_EQ(b2.coefficient(WedgeState{{}, {-2}}), cplx(1.0));
  // b_{-3}: passes Om^{-2}
  EXPECT_EQ(contract_b(-3, vac).coefficient(WedgeState{{}, {-3}}), cplx(-1.0));
  // c^{-3} after b_{-3} restores the vacuum with the same sign squared
  EXPECT_EQ(wedge_c(-3, contract_b(-3, FockVector(vac))).coefficient(vac), cplx(1.0));
}

TEST(Wedge, CountAbove) {
  const WedgeState w{{3, 0}, {-3, -5}};
  EXPECT_EQ(w.count_above(5), 0);
  EXPECT_EQ(w.count_above(1), 1);
  EXPECT_EQ(w.count_above(-1), 2);
  EXPECT_EQ(w.count_above(-2), 2);  // 3, 0
  EXPECT_EQ(w.count_above(-4), 3);  // 3, 0, -2
  EXPECT_EQ(w.count_above(-7), 5);  // 3, 0, -2, -4, -6
}

TEST(Wedge, SignsMatchTruncatedModel) {
  std::mt19937_64 rng(10);
  constexpr int floor = -30;
  for (int n = 0; n < 200; ++n) {
    const WedgeState w = oracle::random_wedge(rng, -8, 8, 6);
    for (int i = -10; i <= 10; ++i) {
      const oracle::TruncatedWedge tc = oracle::apply_c(i, oracle::truncate(w, floor));
      const FockVector c = wedge_c(i, w);
      if (tc.zero) {
        EXPECT_TRUE(c.empty());
      } else {
        EXPECT_EQ(c.coefficient(oracle::untruncate(tc, floor)), cplx(tc.sign));
      }
      const oracle::TruncatedWedge tb = oracle::apply_b(i, oracle::truncate(w, floor));
      const FockVector b = contract_b(i, w);
      if (tb.zero) {
        EXPECT_TRUE(b.empty());
      } else {
        EXPECT_EQ(b.coefficient(oracle::untruncate(tb, floor)), cplx(tb.sign));
      }
    }
  }
}

TEST(Wedge, CliffordRelations) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    const FockVector v(oracle::random_wedge(rng, -8, 8, 6));
    for (int k = -8; k <= 8; ++k) {
      for (int j = -8; j <= 8; ++j) {
        const FockVector bc = contract_b(k, wedge_c(j, v)) + wedge_c(j, contract_b(k, v));
        EXPECT_EQ(bc, k == j ? v : FockVector{});
        EXPECT_TRUE((contract_b(k, contract_b(j, v)) + contract_b(j, contract_b(k, v))).empty());
        EXPECT_TRUE((wedge_c(k, wedge_c(j, v)) + wedge_c(j, wedge_c(k, v))).empty());
      }
    }
  }
}

TEST(Wedge, TextForm) {
  EXPECT_EQ(to_string(WedgeState{{0}, {-2}}), "s=-1; occ={0}; vac={-2}; sign=+1");
  EXPECT_EQ(to_string(WedgeState{{3, -1}, {-4, -6}}, -1), "s=-1; occ={3,-1}; vac={-4,-6}; sign=-1");
  const SignedWedge w = parse_wedge("s=-1; occ={0}; vac={-2}; sign=+1");
  EXPECT_EQ(w.state, (WedgeState{{0}, {-2}}));
  EXPECT_EQ(w.sign, 1);
  // another frame for the same state
  const SignedWedge moved = parse_wedge("s=1; occ={3}; vac={-3,0}; sign=-1");
  EXPECT_EQ(moved.state, (WedgeState{{3, -1}, {-3}}));
  EXPECT_EQ(moved.sign, -1);
  EXPECT_THROW(parse_wedge("s=-1; occ={-3}; vac={}; sign=+1"), ConfigError);
  EXPECT_THROW(parse_wedge("occ={0}"), ConfigError);
  EXPECT_THROW(parse_wedge("s=-1; occ={0,0}; vac={}; sign=+1"), ConfigError);
}

TEST(Wedge, CanonicalFormIsOrderIndependent) {
  const WedgeState vac = WedgeState::vacuum();
  // c^2 c^0 |0> = - c^0 c^2 |0>
  const FockVector a = wedge_c(2, wedge_c(0, FockVector(vac)));
  const FockVector b = wedge_c(0, wedge_c(2, FockVector(vac)));
  EXPECT_EQ(a, b.scaled(-1.0));
  EXPECT_EQ(a.size(), 1u);
}

TEST(NormalOrdering, Examples) {
  const FockVector vac(WedgeState::vacuum());
  EXPECT_TRUE(normal_ordered_bc(-2, -2, vac).empty());
  const FockVector expected = wedge_c(0, contract_b(-2, vac)).scaled(-1.0);
  EXPECT_EQ(normal_ordered_bc(-2, 0, vac), expected);
  for (int k = -6; k <= 6; ++k) EXPECT_EQ(normal_ordered_bc(k, k, vac).coefficient(WedgeState::vacuum()), cplx{});
}

TEST(LOperator, WittVacuum) {
  const AlgebraParams w = AlgebraParams::witt();
  const FockVector vac(WedgeState::vacuum());
  const FockVector l0 = l_operator(0, vac, w);
  for (const auto& [s, c] : l0) EXPECT_TRUE(s.is_vacuum());
  for (int i = 3; i <= 8; ++i) EXPECT_TRUE(l_operator(i, vac, w).empty()) << i;
}

TEST(LOperator, MatchesBoxSum) {
  // no window reasoning: every (j, k) in a box around the state
  const AlgebraParams p = derived();
  std::mt19937_64 rng(12);
  for (int n = 0; n < 10; ++n) {
    const WedgeState w = oracle::random_wedge(rng, -6, 6, 5);
    for (int i = -5; i <= 5; ++i) {
      FockVector box;
      for (int j = -30; j <= 30; ++j)
        for (const auto& [k, c] : shifted_constants(i, j, p))
          box += normal_ordered_bc(k, j, FockVector(w)).scaled(c);
      const FockVector diff = l_operator(i, FockVector(w), p) - box;
      EXPECT_LT(diff.max_norm(), 1e-9);
    }
  }
}

TEST(LOperator, Linearity) {
  const AlgebraParams p = derived();
  std::mt19937_64 rng(13);
  const FockVector v = random_vector(rng, 3), u = random_vector(rng, 3);
  const cplx a{0.3, -1.1}, b{2.0, 0.5};
  for (int i = -4; i <= 4; ++i) {
    const FockVector lhs = l_operator(i, v.scaled(a) + u.scaled(b), p);
    const FockVector rhs = l_operator(i, v, p).scaled(a) + l_operator(i, u, p).scaled(b);
    EXPECT_LT((lhs - rhs).max_norm(), 1e-9 * std::max(1.0, lhs.max_norm()));
  }
}

TEST(LOperator, WindowsHoldAcrossStates) {
  const AlgebraParams p = derived();
  std::mt19937_64 rng(14);
  for (int n = 0; n < 30; ++n) {
    const FockVector v(oracle::random_wedge(rng, -8, 8, 6));
    for (int i = -8; i <= 8; ++i) EXPECT_NO_THROW(l_operator(i, v, p));
  }
}

TEST(Commutator, ResidualsAreSmall) {
  const AlgebraParams p = derived();
  ASSERT_EQ(determine_bracket_sign(p), 1);
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> idx(-4, 4);
  for (int n = 0; n < 20; ++n) {
    const FockVector v = random_vector(rng, 2);
    const int i = idx(rng), j = idx(rng);
    EXPECT_LE(commutator_residual(i, j, v, p, +1), 1e-9) << i << "," << j;
  }
  EXPECT_EQ(commutator_residual(2, 2, FockVector(WedgeState::vacuum()), p), 0.0);
}

TEST(Commutator, WrongSignIsDetected) {
  const AlgebraParams p = derived();
  EXPECT_GT(commutator_residual(2, 1, FockVector(WedgeState{{1}, {-2}}), p, -1), 1e-3);
}

TEST(Commutator, VacuumCocycleMatchesChiSum) {
  for (const AlgebraParams& p : {derived(), AlgebraParams::witt()}) {
    for (int i = -5; i <= 5; ++i) {
      const VacuumCocycle vc = vacuum_cocycle(i, -i, p);
      EXPECT_LT(std::abs(vc.chi - chi_sum(i, -i, p)), 1e-9);
      EXPECT_LT(vc.off_vacuum, 1e-9);
    }
  }
  EXPECT_NEAR(vacuum_cocycle(-2, 2, AlgebraParams::witt()).chi.real(), 13.0, 1e-12);
}
