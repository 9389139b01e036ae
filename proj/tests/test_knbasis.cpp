#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kntorus/knbasis.hpp"
#include "support/oracles.hpp"

using namespace kntorus;

namespace {

TorusConfig make(cplx tau, cplx q) {
  TorusConfig cfg;
  cfg.tau = tau;
  cfg.q = q;
  return cfg;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST(Basis, LambdaClosedFormsMatchTaylorCoefficients) {
  // (X - e1)(X - e2)(X - e3) = sum_n c_n (X - p)^n: c1 = lam6, c2 = lam5,
  // c0 = lam7 since wp'^2/4 is that cubic at X = p.
  const cplx e1{1.3, 0.2}, e2{-0.4, 0.5}, e3 = -e1 - e2;
  const cplx p{0.7, -0.1};
  const cplx cubic = (p - e1) * (p - e2) * (p - e3);
  const AlgebraParams lam = lambda_from_values(e1, e2, e3, p, 2.0 * std::sqrt(cubic));
  EXPECT_LT(std::abs(lam.lam5 - 3.0 * p), 1e-14);
  EXPECT_LT(std::abs(lam.lam6 - ((p - e2) * (p - e3) + (p - e1) * (p - e3) + (p - e1) * (p - e2))), 1e-13);
  EXPECT_LT(std::abs(lam.lam7 - cubic), 1e-13);
  EXPECT_EQ(lam.lam4, cplx(1.0));
  EXPECT_EQ(lam.provenance, Provenance::derived);
}

TEST(Basis, OmegaSquaredExpansion) {
  for (const cplx tau : {cplx{0.0, 1.0}, cplx{0.3, 1.1}}) {
    const TorusConfig cfg = make(tau, {0.17, 0.05});
    const Basis basis(cfg);
    const AlgebraParams lam = lambda_coefficients(cfg);
    std::mt19937_64 rng(5);
    for (int n = 0; n < 50; ++n) {
      const cplx z = oracle::random_point(rng, basis.omega(), 0.05);
      const cplx w = basis.omega().omega_hat(z);
      const cplx rhs = lam.lam4 * basis.value(-2, z) + lam.lam5 * basis.value(0, z) + lam.lam6 * basis.value(2, z) +
                       lam.lam7 * basis.value(4, z);
      EXPECT_LT(std::abs(w * w - rhs), 1e-8);
    }
  }
}

TEST(Basis, ProductLaws) {
  const TorusConfig cfg = make({0.0, 1.0}, 0.2);
  const Basis basis(cfg);
  const AlgebraParams lam = lambda_coefficients(cfg);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> pick(-4, 4);
  for (int n = 0; n < 100; ++n) {
    const cplx z = oracle::random_point(rng, basis.omega(), 0.1);
    const int i = 2 * pick(rng), j = pick(rng);
    EXPECT_LT(rel(basis.value(i, z) * basis.value(j, z), basis.value(i + j, z)), 1e-8);
    const int a = 2 * pick(rng) + 1, b = 2 * pick(rng) + 1;
    const cplx rhs = lam.lam4 * basis.value(a + b, z) + lam.lam5 * basis.value(a + b + 2, z) +
                     lam.lam6 * basis.value(a + b + 4, z) + lam.lam7 * basis.value(a + b + 6, z);
    EXPECT_LT(rel(basis.value(a, z) * basis.value(b, z), rhs), 1e-8);
  }
}

TEST(Basis, Parity) {
  const Basis basis(make({0.3, 1.1}, {0.17, 0.05}));
  const cplx z{0.13, 0.27};
  for (int k = -7; k <= 7; ++k) {
    const double s = k % 2 == 0 ? 1.0 : -1.0;
    EXPECT_LT(rel(basis.value(k, -z), s * basis.value(k, z)), 1e-10);
  }
}

TEST(Basis, DerivativeAgainstFiniteDifference) {
  const Basis basis(make({0.0, 1.0}, 0.2));
  const cplx z{0.21, 0.33};
  for (int k = -6; k <= 6; ++k) {
    const auto f = [&](cplx w) { return basis.value(k, w); };
    EXPECT_LT(rel(basis.derivative(k, z), oracle::derivative(f, z, 1e-3)), 1e-8) << "k=" << k;
    EXPECT_LT(rel(basis.log_derivative(k, z), basis.derivative(k, z) / basis.value(k, z)), 1e-12);
  }
}

TEST(Basis, OrderTripleFormulas) {
  const TorusConfig cfg = make({0.0, 1.0}, 0.2);
  EXPECT_EQ(order_triple(4, cfg), (OrderTriple{4, -2, -2}));
  EXPECT_EQ(order_triple(-2, cfg), (OrderTriple{-2, 1, 1}));
  EXPECT_EQ(order_triple(3, cfg), (OrderTriple{3, -3, -3}));
  EXPECT_EQ(order_triple(-1, cfg), (OrderTriple{-1, -1, -1}));
  TorusConfig merged = cfg;
  merged.two_point = true;
  merged.q = 0.0;
  EXPECT_EQ(order_triple(4, merged), (OrderTriple{4, -4, -4}));
  EXPECT_EQ(order_triple(3, merged), (OrderTriple{3, -5, -5}));
}

TEST(Basis, OrdersAgreeWithWindingNumbers) {
  for (const bool merged : {false, true}) {
    TorusConfig cfg = make({0.3, 1.1}, {0.17, 0.05});
    if (merged) {
      cfg.two_point = true;
      cfg.q = 0.0;
    }
    const PropagationDifferential omega(cfg);
    const auto poles = omega.poles();
    for (int k = -6; k <= 6; ++k) {
      const OrderTriple t = order_triple(k, cfg);
      EXPECT_EQ(winding_order(k, poles[0], 0.05, cfg), t.at_in) << k;
      EXPECT_EQ(winding_order(k, poles[1], 0.05, cfg), t.at_out_1) << k;
      if (!merged) EXPECT_EQ(winding_order(k, poles[2], 0.05, cfg), t.at_out_2) << k;
    }
  }
}

TEST(Basis, WindingRejectsBadQuadrature) {
  const TorusConfig cfg = make({0.0, 1.0}, 0.2);
  // so few nodes on a circle hugging the pole cannot resolve the winding
  EXPECT_THROW(winding_order(7, cplx{0.0, 0.0}, 0.45, cfg, 6), NonIntegerWinding);
}

TEST(Basis, IntPower) {
  const cplx b{0.3, -1.2};
  EXPECT_LT(std::abs(int_power(b, 7) - std::pow(b, 7)), 1e-12);
  EXPECT_LT(std::abs(int_power(b, -5) - std::pow(b, -5)), 1e-12);
  EXPECT_EQ(int_power(b, 0), cplx(1.0));
}
