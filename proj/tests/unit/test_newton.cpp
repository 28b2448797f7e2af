#include <gtest/gtest.h>

#include <cmath>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/error.hpp"
#include "harmonic/newton.hpp"
#include "harmonic/oracle.hpp"

using namespace harmonic;

namespace {

// a caustic sample of mpw as far as possible from every cusp and from the
// other strands (self-crossings of the caustic)
CausticSample fold_sample(const MapAnalysis& an) {
  const auto& c = an.caustics[0];
  CausticSample best;
  double far = -1;
  for (size_t i = 0; i < c.samples.size(); i += 4) {
    const auto& s = c.samples[i];
    if (s.at_vertex) continue;
    double d = 1e300;
    for (const auto& q : c.cusps) d = std::min(d, std::abs(s.w - q.w));
    for (const auto& other : an.caustics)
      for (const auto& q : other.samples)
        if (std::abs(q.z - s.z) > 0.1) d = std::min(d, std::abs(q.w - s.w));
    if (d > far) far = d, best = s;
  }
  return best;
}

}  // namespace

TEST(Newton, QuadraticConvergence) {
  const HarmonicMap f = catalog_map("wilmshurst:3").map;
  const NewtonRun r = newton_iterate(f, Cx(-0.3, 0.3), 0.0);
  ASSERT_TRUE(r.converged);
  ASSERT_GE(r.residuals.size(), 4u);
  // once in the basin the residual roughly squares
  int squared = 0;
  for (size_t k = 1; k + 1 < r.residuals.size(); ++k)
    if (r.residuals[k] < 1e-2 && r.residuals[k + 1] > 1e-13) squared += r.residuals[k + 1] < 10 * r.residuals[k] * r.residuals[k];
  EXPECT_GE(squared, 1);
  EXPECT_LT(std::abs(evaluate(f, r.z)), 1e-11);
}

TEST(Newton, StepFailsOnTheCriticalSet) {
  const HarmonicMap f = catalog_map("nexp").map;
  try {
    newton_step(f, 1.0, 0.3);
    FAIL() << "expected SingularJacobian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularJacobian);
  }
}

TEST(Newton, WilmshurstNineZeros) {
  const MapAnalysis an = analyze(catalog_map("wilmshurst:3").map);
  const SolveReport r = solve_preimages(an, 0.0);
  EXPECT_TRUE(r.certified);
  ASSERT_EQ(r.points.size(), 9u);
  for (size_t i = 0; i < r.points.size(); ++i) {
    EXPECT_LT(r.points[i].residual, 1e-10);
    for (size_t j = i + 1; j < r.points.size(); ++j) EXPECT_GT(std::abs(r.points[i].z - r.points[j].z), 1e-6);
  }
}

TEST(Newton, SolverMatchesFormulaAcrossCatalog) {
  for (const auto& key : catalog_keys()) {
    const MapAnalysis an = analyze(catalog_map(key).map);
    for (const Cx eta : {Cx(0.05, 0.11), Cx(-0.7, 0.4), Cx(3.0, -2.0)}) {
      if (critical_value_distance(an, eta) < 10 * an.margin) continue;
      const SolveReport r = solve_preimages(an, eta);
      EXPECT_TRUE(r.certified) << key;
      EXPECT_EQ(static_cast<int>(r.points.size()), count_preimages(an, eta).N) << key;
      for (const auto& p : r.points) {
        EXPECT_EQ(p.sense, jacobian(an.f, p.z) > 0 ? Sense::preserving : Sense::reversing);
      }
    }
  }
}

TEST(Newton, StarvedSolverSurfacesCountMismatch) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  NewtonOptions o;
  o.grid = 1;
  o.max_grid = 1;
  o.ring = 0;
  o.max_escalations = 0;
  o.fold_seeds = false;
  try {
    solve_preimages(an, 0.0, o);
    FAIL() << "expected CountMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CountMismatch);
  }
  o.strict = false;
  const SolveReport r = solve_preimages(an, 0.0, o);
  EXPECT_FALSE(r.certified);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Fold, PreimageDistanceScalesLikeSqrtDelta) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  const CausticSample s = fold_sample(an);
  double prev = 0;
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const FoldPrediction p = fold_predict(an.f, s.z, d);
    EXPECT_NEAR(std::abs(p.w_plus - p.z0), std::sqrt(d), 1e-12);
    const NewtonRun a = newton_iterate(an.f, p.w_plus, p.eta_plus), b = newton_iterate(an.f, p.w_minus, p.eta_plus);
    ASSERT_TRUE(a.converged && b.converged);
    const double gap = std::abs(a.z - b.z);
    // the prediction is good to O(delta)
    EXPECT_LT(std::abs(a.z - p.w_plus), 5 * d);
    if (prev > 0) EXPECT_NEAR(std::log10(prev / gap), 0.5, 0.05);
    prev = gap;
  }
}

// eta_minus must clear the caustic margin, which is about 1e-3 here
TEST(Fold, MinusSideHasNoLocalPreimages) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  const CausticSample s = fold_sample(an);
  const FoldPrediction p = fold_predict(an.f, s.z, 2e-3);
  const double r = 2 * std::sqrt(p.delta);
  int plus = 0, minus = 0;
  for (const auto& q : solve_preimages(an, p.eta_plus).points) plus += std::abs(q.z - p.z0) < r;
  for (const auto& q : solve_preimages(an, p.eta_minus).points) minus += std::abs(q.z - p.z0) < r;
  EXPECT_EQ(plus, 2);
  EXPECT_EQ(minus, 0);
  EXPECT_EQ(count_preimages(an, p.eta_plus).N - count_preimages(an, p.eta_minus).N, 2);
}

TEST(Fold, RejectsCuspsAndNonCriticalPoints) {
  const MapAnalysis an = analyze(catalog_map("nexp").map);
  const auto& q = an.caustics[0].cusps.at(0);
  try {
    fold_predict(an.f, q.z, 1e-4);
    FAIL() << "expected NotAFold";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAFold);
  }
  try {
    fold_predict(an.f, Cx(0.5, 0.0), 1e-4);
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(Cusp, SeedConvergesToNearbyPreimage) {
  const MapAnalysis an = analyze(catalog_map("nexp").map);
  for (const auto& q : an.caustics[0].cusps) {
    const CuspPrediction p = cusp_predict(an.f, q.z, 1e-4);
    const NewtonRun r = newton_iterate(an.f, p.w1, p.eta);
    ASSERT_TRUE(r.converged);
    EXPECT_LT(std::abs(r.z - q.z), 0.1);
  }
  const MapAnalysis mpw = analyze(catalog_map("mpw").map);
  try {
    cusp_predict(mpw.f, fold_sample(mpw).z, 1e-4);
    FAIL() << "expected NotACusp";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACusp);
  }
}

TEST(Oracle, AgreesWithFormula) {
  for (const auto& [key, eta] : std::vector<std::pair<std::string, Cx>>{
           {"mpw", 0.0}, {"mpw", Cx(10, 10)}, {"log-example", Cx(30, 30)}, {"wilmshurst:3", 0.0}, {"nexp", 0.5}}) {
    const MapAnalysis an = analyze(catalog_map(key).map);
    const OracleResult r = brute_force_count(an.f, eta);
    EXPECT_EQ(r.count, count_preimages(an, eta).N) << key;
    EXPECT_EQ(r.unresolved, 0) << key;
  }
}

TEST(Oracle, BoxWindingCountsSignedZeros) {
  // z - conj(z)^2 / 4 ... around a single zero of each sense
  const HarmonicMap f = catalog_map("wilmshurst:3").map;
  const MapAnalysis an = analyze(f);
  for (const auto& p : solve_preimages(an, 0.0).points)
    EXPECT_EQ(box_winding(f, 0.0, p.z, 1e-3), p.sense == Sense::preserving ? 1 : -1);
}

TEST(Oracle, ZerosNearPolesAreInferred) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  const OracleResult r = brute_force_count(an.f, Cx(1e4, 3e3));
  EXPECT_EQ(r.count, 4);
}
