#include <gtest/gtest.h>

#include <algorithm>

#include "harmonic/error.hpp"
#include "harmonic/numerics.hpp"

using namespace harmonic;

namespace {

double nearest(const std::vector<Cx>& v, Cx z) {
  double d = 1e300;
  for (const Cx& w : v) d = std::min(d, std::abs(w - z));
  return d;
}

}  // namespace

TEST(Poly, ArithmeticAndEvaluation) {
  const Poly p{1.0, 2.0, 3.0};  // 1 + 2z + 3z^2
  EXPECT_EQ(p.degree(), 2);
  EXPECT_NEAR(std::abs(p(Cx(1, 1)) - Cx(3, 8)), 0, 1e-14);
  EXPECT_NEAR(std::abs(p.derivative()(2.0) - 14.0), 0, 1e-14);
  const Poly q = p * Poly{-1.0, 1.0};
  EXPECT_EQ(q.degree(), 3);
  EXPECT_NEAR(std::abs(q(1.0)), 0, 1e-14);
  EXPECT_NEAR(std::abs(p.shifted(1.0)(0.5) - p(1.5)), 0, 1e-13);
  EXPECT_NEAR(std::abs(p.compose_linear(2.0, -1.0)(0.25) - p(-0.5)), 0, 1e-13);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Poly, RootsOfKnownProduct) {
  const std::vector<Cx> r = {Cx(1, 0), Cx(-2, 1), Cx(0, 3), Cx(0.5, -0.5), Cx(4, 0)};
  const auto found = poly_roots(Poly::from_roots(r, Cx(2, 1)));
  ASSERT_EQ(found.size(), r.size());
  for (const Cx& z : r) EXPECT_LT(nearest(found, z), 1e-10);
}

TEST(Poly, RootsOfUnityDegree20) {
  std::vector<Cx> c(21);
  c[0] = -1.0;
  c[20] = 1.0;
  const auto found = poly_roots(Poly(c));
  ASSERT_EQ(found.size(), 20u);
  for (int k = 0; k < 20; ++k) EXPECT_LT(nearest(found, std::polar(1.0, kTwoPi * k / 20)), 1e-12);
}

TEST(Poly, RootFindingIsDeterministicForASeed) {
  const Poly p = Poly::from_roots({1.0, 2.0, Cx(0, 1), Cx(3, -2)});
  RootOptions o;
  o.seed = 7;
  EXPECT_EQ(poly_roots(p, o), poly_roots(p, o));
}

TEST(Poly, ClustersCarryMultiplicity) {
  const Poly p = Poly::from_roots({1.0, 1.0, 1.0, -2.0, -2.0, Cx(0, 1)});
  const auto cl = cluster_roots(p, poly_roots(p));
  ASSERT_EQ(cl.size(), 3u);
  for (const auto& c : cl) {
    if (std::abs(c.root - 1.0) < 1e-6) EXPECT_EQ(c.multiplicity, 3);
    else if (std::abs(c.root + 2.0) < 1e-6) EXPECT_EQ(c.multiplicity, 2);
    else EXPECT_EQ(c.multiplicity, 1);
  }
}

TEST(Poly, SevenFoldRootIsOneCluster) {
  std::vector<Cx> r(7, Cx(0.5, 0.25));
  r.push_back(3.0);
  const Poly p = Poly::from_roots(r);
  const auto cl = cluster_roots(p, poly_roots(p));
  ASSERT_EQ(cl.size(), 2u);
  const auto& big = cl[0].multiplicity == 7 ? cl[0] : cl[1];
  EXPECT_EQ(big.multiplicity, 7);
  EXPECT_LT(std::abs(big.root - Cx(0.5, 0.25)), 1e-8);
}

TEST(Rational, EvaluationPolesAndCancellation) {
  const RationalFn r(Poly{0.0, 0.0, 1.0}, Poly{-1.0, 0.0, 1.0});  // z^2 / (z^2 - 1)
  EXPECT_NEAR(std::abs(r(2.0) - 4.0 / 3.0), 0, 1e-14);
  EXPECT_TRUE(rational_eval(r, 1.0).pole);
  EXPECT_EQ(r.poles().size(), 2u);
  // (z - 1) / (z^2 - 1) = 1 / (z + 1)
  const RationalFn s(Poly{-1.0, 1.0}, Poly{-1.0, 0.0, 1.0});
  EXPECT_EQ(s.poles().size(), 1u);
  EXPECT_NEAR(std::abs(s(1.0) - 0.5), 0, 1e-12);
  EXPECT_EQ(s.growth(), -1);
}

TEST(Rational, DerivativeMatchesFiniteDifference) {
  const RationalFn r(Poly{1.0, Cx(0, 2), 0.0, 1.0}, Poly{Cx(0.3, 0.1), 0.0, 1.0});
  const Cx z(0.7, -0.4), h(1e-6, 0);
  const Cx fd = (r(z + h) - r(z - h)) / (2.0 * h);
  EXPECT_NEAR(std::abs(r.derivative()(z) - fd), 0, 1e-7);
}

TEST(Rational, LaurentCoefficientsAtAPole) {
  // 1/(z-1)^2 + 3/(z-1) + 2 + (z - 1)
  const RationalFn r = RationalFn(Poly{1.0}, Poly::from_roots({1.0, 1.0})) + RationalFn(Poly{3.0}, Poly{-1.0, 1.0}) +
                       RationalFn(Poly{1.0, 1.0});
  const LaurentSeries s = laurent_coeffs(r, 1.0, -2, 1);
  EXPECT_EQ(s.pole_order, 2);
  EXPECT_NEAR(std::abs(s[-2] - 1.0), 0, 1e-10);
  EXPECT_NEAR(std::abs(s[-1] - 3.0), 0, 1e-10);
  EXPECT_NEAR(std::abs(s[0] - 2.0), 0, 1e-10);
  EXPECT_NEAR(std::abs(s[1] - 1.0), 0, 1e-10);
}

TEST(Rational, ReciprocalComposition) {
  const RationalFn r(Poly{1.0, 2.0, 0.0, 1.0}, Poly{-0.25, 0.0, 1.0});
  const RationalFn s = compose_reciprocal(r);
  const Cx z(0.3, 0.8);
  EXPECT_NEAR(std::abs(s(z) - r(1.0 / z)), 0, 1e-12);
}

TEST(Rational, LogTaylor) {
  const Cx s(1, 1), z0(-0.5, 0.2), u(0.01, -0.02);
  const auto c = log_taylor(s, z0, 8);
  Cx sum = 0, p = 1;
  for (const Cx& ck : c) sum += ck * p, p *= u;
  EXPECT_NEAR(std::abs(sum - std::log(z0 + u - s)), 0, 1e-12);
}
