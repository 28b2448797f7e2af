#include <gtest/gtest.h>

#include <cmath>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/critical.hpp"
#include "harmonic/error.hpp"

using namespace harmonic;

TEST(Critical, ProbePhasesAreEightEvenlySpaced) {
  const auto p = probe_phases();
  ASSERT_EQ(p.size(), 8u);
  for (size_t k = 1; k < p.size(); ++k) EXPECT_NEAR(p[k] - p[k - 1], kTwoPi / 8, 1e-12);
}

TEST(Critical, SamplesSolveTheParametrization) {
  for (const auto& key : catalog_keys()) {
    const HarmonicMap f = catalog_map(key).map;
    const CriticalSet cs = critical_set(f);
    const RationalFn w = dilatation(f);
    ASSERT_FALSE(cs.curves.empty()) << key;
    for (const auto& c : cs.curves) {
      EXPECT_TRUE(c.closed) << key;
      EXPECT_LT(std::abs(c.samples.front().z - c.samples.back().z), 1e-9) << key;
      for (const auto& s : c.samples) EXPECT_LT(std::abs(w(s.z) - std::polar(1.0, s.t)), 1e-8) << key;
    }
  }
}

TEST(Critical, ExpNIsUnitCirclePlusOrigin) {
  const HarmonicMap f = catalog_map("nexp").map;
  const CriticalSet cs = critical_set(f);
  ASSERT_EQ(cs.curves.size(), 1u);
  for (const auto& s : cs.curves[0].samples) {
    EXPECT_NEAR(std::abs(s.z), 1.0, 1e-9);
    EXPECT_LT(std::abs(jacobian(f, s.z)), 1e-7);
  }
  ASSERT_EQ(cs.isolated.size(), 1u);
  EXPECT_LT(std::abs(cs.isolated[0].z), 1e-12);
  EXPECT_TRUE(cs.vertices.empty());
}

TEST(Critical, WilmshurstStitchesThroughBothVertices) {
  const CriticalSet cs = critical_set(catalog_map("wilmshurst:3").map);
  ASSERT_EQ(cs.vertices.size(), 2u);
  bool at0 = false, at1 = false;
  for (const auto& v : cs.vertices) {
    at0 = at0 || std::abs(v.z) < 1e-8;
    at1 = at1 || std::abs(v.z - 1.0) < 1e-8;
    EXPECT_EQ(v.branching, 2);
  }
  EXPECT_TRUE(at0 && at1);
  ASSERT_EQ(cs.curves.size(), 1u);
  const auto& c = cs.curves[0];
  // every vertex of a 2-fold crossing is visited twice by the circuit
  int visits = 0;
  for (const auto& s : c.samples) visits += s.at_vertex;
  EXPECT_GE(visits, 4);
  // consecutive samples stay close: no jumps across the crossing
  double jump = 0;
  for (size_t k = 1; k < c.samples.size(); ++k) jump = std::max(jump, std::abs(c.samples[k].z - c.samples[k - 1].z));
  EXPECT_LT(jump, 0.1);
}

TEST(Critical, HigherWilmshurstVertices) {
  for (int n : {4, 5}) {
    const CriticalSet cs = critical_set(catalog_map("wilmshurst:" + std::to_string(n)).map);
    int branching = 0;
    for (const auto& v : cs.vertices) branching = std::max(branching, v.branching);
    EXPECT_EQ(branching, n - 1) << n;
  }
}

TEST(Critical, UnbalancedArcsAreRejected) {
  Vertex a{0.0, 2, 0.0, 1.0}, b{1.0, 2, 0.0, 1.0};
  OpenArc arc;
  arc.from = 0;
  arc.to = 1;
  arc.samples = {{0.0, 0.0, true, 0}, {0.5, 0.5, false, -1}, {1.0, 1.0, true, 1}};
  try {
    stitch_component({arc}, {a, b});
    FAIL() << "expected UnbalancedVertex";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnbalancedVertex);
  }
}

TEST(Critical, ConstantUnimodularDilatationIsDegenerate) {
  // f = z + conj(z): omega == 1
  const HarmonicMap f(RationalFn(Poly{0.0, 1.0}), RationalFn(Poly{0.0, 1.0}));
  try {
    critical_seeds(f);
    FAIL() << "expected DegenerateDilatation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDilatation);
  }
}

TEST(Critical, CurvePointInterpolatesOnTheCurve) {
  const HarmonicMap f = catalog_map("mpw").map;
  const CriticalSet cs = critical_set(f);
  const CurveField field(f);
  const auto& c = cs.curves[0];
  const double t = 0.5 * (c.samples[3].t + c.samples[4].t);
  const Cx z = curve_point(field, c, t);
  EXPECT_LT(std::abs(dilatation(f)(z) - std::polar(1.0, t)), 1e-9);
}
