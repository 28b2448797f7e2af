#include <gtest/gtest.h>

#include <map>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/error.hpp"

using namespace harmonic;

TEST(Caustic, CuspCounts) {
  const std::map<std::string, int> expect = {
      {"mpw", 12}, {"log-example", 7}, {"wilmshurst:3", 6}, {"nexp", 5}, {"double-caustic", 6}};
  for (const auto& [key, n] : expect) {
    const MapAnalysis an = analyze(catalog_map(key).map);
    int cusps = 0;
    for (const auto& c : an.caustics) cusps += static_cast<int>(c.cusps.size());
    EXPECT_EQ(cusps, n) << key;
  }
}

TEST(Caustic, CuspConditionAndPsiSignChange) {
  for (const auto& key : catalog_keys()) {
    const MapAnalysis an = analyze(catalog_map(key).map);
    for (size_t i = 0; i < an.caustics.size(); ++i)
      for (const auto& q : an.caustics[i].cusps) {
        EXPECT_LT(std::abs(q.condition), 1e-6) << key;
        Cx tau;
        double a = 0, b = 0;
        const double h = 1e-4;
        caustic_tangent(an.f, an.field, curve_point(an.field, an.critical.curves[i], q.t - h), q.t - h, tau, a);
        caustic_tangent(an.f, an.field, curve_point(an.field, an.critical.curves[i], q.t + h), q.t + h, tau, b);
        EXPECT_LT(a * b, 0) << key << " t=" << q.t;
      }
  }
}

TEST(Caustic, TangentIsDerivativeOfImage) {
  const MapAnalysis an = analyze(catalog_map("log-example").map);
  const auto& curve = an.critical.curves[0];
  const double t = 0.5 * (curve.samples[10].t + curve.samples[11].t), h = 1e-6;
  const Cx fd = (caustic_point(an.f, an.field, curve, t + h).w - caustic_point(an.f, an.field, curve, t - h).w) / (2 * h);
  const CausticSample s = caustic_point(an.f, an.field, curve, t);
  EXPECT_LT(std::abs(fd - s.tau), 1e-6 * std::max(1.0, std::abs(s.tau)));
  // tau = e^{-it/2} psi with real psi
  EXPECT_LT(std::abs(s.tau - std::polar(1.0, -0.5 * t) * s.psi), 1e-9 * std::max(1.0, std::abs(s.tau)));
}

TEST(Caustic, CurvatureLaw) {
  for (const auto& key : catalog_keys()) {
    const MapAnalysis an = analyze(catalog_map(key).map);
    for (size_t i = 0; i < an.caustics.size(); ++i) {
      const CurvatureReport r = curvature_check(an.f, an.field, an.critical.curves[i], an.caustics[i]);
      EXPECT_GT(r.checked, 100) << key;
      EXPECT_LT(r.max_deviation, 1e-3) << key;
    }
  }
}

TEST(Caustic, CrossingDeltaAgreesWithWindingChange) {
  const MapAnalysis an = analyze(catalog_map("nexp").map);
  const auto& c = an.caustics[0];
  const auto& s0 = c.samples[c.samples.size() / 3];
  const auto& s1 = c.samples[c.samples.size() / 3 + 1];
  const Cx mid = 0.5 * (s0.w + s1.w), n = Cx(0, 1) * s0.tau / std::abs(s0.tau);
  const Cx a = mid - 0.01 * n, b = mid + 0.01 * n;
  const int d = crossing_delta(c, a, b);
  EXPECT_EQ(std::abs(d), 1);
  EXPECT_EQ(caustic_winding(an, 0, b) - caustic_winding(an, 0, a), d);
  EXPECT_EQ(crossing_delta(c, b, a), -d);
}

TEST(Caustic, BoxAndDistance) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  EXPECT_FALSE(an.box.empty());
  const Cx w = an.caustics[0].samples[5].w;
  EXPECT_LT(caustic_distance(an.caustics, w), 1e-12);
  EXPECT_GT(caustic_distance(an.caustics, Cx(10, 10)), 1.0);
  EXPECT_NEAR(an.margin, 1e-3 * an.box.diagonal(), 1e-15);
}
