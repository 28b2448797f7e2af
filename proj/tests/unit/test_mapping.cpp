#include <gtest/gtest.h>

#include "harmonic/catalog.hpp"
#include "harmonic/error.hpp"
#include "harmonic/map_io.hpp"
#include "harmonic/mapping.hpp"

using namespace harmonic;

TEST(Mapping, WirtingerDerivativesMatchFiniteDifferences) {
  for (const auto& key : catalog_keys()) {
    const HarmonicMap f = catalog_map(key).map;
    const Cx z(0.31, -0.47);
    const double h = 1e-6;
    const Cx fx = (evaluate(f, z + h) - evaluate(f, z - h)) / (2 * h);
    const Cx fy = (evaluate(f, z + Cx(0, h)) - evaluate(f, z - Cx(0, h))) / (2 * h);
    const Wirtinger w = wirtinger(f, z);
    EXPECT_NEAR(std::abs(w.dz - 0.5 * (fx - Cx(0, 1) * fy)), 0, 1e-6) << key;
    EXPECT_NEAR(std::abs(w.dzbar - 0.5 * (fx + Cx(0, 1) * fy)), 0, 1e-6) << key;
    EXPECT_NEAR(jacobian(f, z), std::norm(w.dz) - std::norm(w.dzbar), 1e-9) << key;
  }
}

TEST(Mapping, DilatationIsQuotientOfDerivatives) {
  const HarmonicMap f = catalog_map("mpw").map;
  const RationalFn w = dilatation(f);
  const Cx z(0.2, 0.9);
  const Wirtinger d = wirtinger(f, z);
  EXPECT_NEAR(std::abs(w(z) - std::conj(d.dzbar) / d.dz), 0, 1e-12);
}

TEST(Mapping, MpwPolesAndInfinity) {
  const HarmonicMap f = catalog_map("mpw").map;
  const auto poles = pole_records(f);
  ASSERT_EQ(poles.size(), 3u);
  for (const auto& p : poles) {
    EXPECT_NEAR(std::abs(p.location), 0.6, 1e-12);
    EXPECT_EQ(std::abs(p.index), 1);
  }
  EXPECT_EQ(pole_count(poles), 3);
  EXPECT_EQ(index_at_infinity(f, 0.0), -1);
  EXPECT_TRUE(is_non_degenerate(f).ok);
}

TEST(Mapping, LogExamplePolesAndInfinity) {
  const HarmonicMap f = catalog_map("log-example").map;
  EXPECT_EQ(pole_count(pole_records(f)), 2);
  EXPECT_EQ(index_at_infinity(f, Cx(30, 30)), -2);
  EXPECT_EQ(classify_singularity(f, 0.0), SingularityKind::pole);
}

TEST(Mapping, HighOrderPolesAndZerosAreNotClipped) {
  // leading terms beyond the default expansion order
  EXPECT_EQ(index_at_infinity(catalog_map("wilmshurst:5").map, 0.0), -5);
  EXPECT_EQ(index_at_infinity(catalog_map("wilmshurst:7").map, Cx(1, 2)), -7);
  const HarmonicMap f(RationalFn(Poly::monomial(1.0, 5)), RationalFn(Poly::monomial(1.0, 7)));
  EXPECT_EQ(zero_index(local_expansion(f, 0.0)), 5);
  const HarmonicMap g(RationalFn(Poly{1.0}, Poly::monomial(1.0, 6)), RationalFn());
  EXPECT_EQ(pole_index(local_expansion(g, 0.0)), -6);
}

TEST(Mapping, ZeroIndicesFromLocalExpansion) {
  // z^2 at 0 has index 2, conj(z)^3 has index -3
  const HarmonicMap a(RationalFn(Poly{0.0, 0.0, 1.0}), RationalFn());
  EXPECT_EQ(zero_index(local_expansion(a, 0.0)), 2);
  const HarmonicMap b(RationalFn(Poly{0.0, 0.0, 0.0, 0.0, 1.0}), RationalFn(Poly{0.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(zero_index(local_expansion(b, 0.0)), -3);
  EXPECT_EQ(zero_index(local_expansion(catalog_map("nexp").map, 0.0)), -2);
}

TEST(Mapping, PureLogPoleHasIndexZero) {
  const HarmonicMap f(RationalFn(Poly{0.0, 1.0}), RationalFn(), {{Cx(0.5, 0), 1.0}});
  EXPECT_EQ(classify_singularity(f, Cx(0.5, 0)), SingularityKind::log_pole);
  const auto poles = pole_records(f);
  ASSERT_EQ(poles.size(), 1u);
  EXPECT_EQ(poles[0].index, 0);
}

TEST(Mapping, CoanalyticDominanceIsDegenerate) {
  const HarmonicMap f(RationalFn(Poly{0.0, 1.0}), RationalFn(Poly{0.0, 0.0, 0.0, 1.0}));
  const DegeneracyReport r = is_non_degenerate(f);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.violations.empty());
}

TEST(MapIo, JsonRoundTrip) {
  for (const auto& key : catalog_keys()) {
    const HarmonicMap f = catalog_map(key).map;
    const HarmonicMap g = parse_map_json(map_to_json(f));
    for (const Cx z : {Cx(0.3, 0.2), Cx(-1.1, 0.7), Cx(2.0, -1.5)})
      EXPECT_NEAR(std::abs(evaluate(f, z) - evaluate(g, z)), 0, 1e-12 * std::max(1.0, std::abs(evaluate(f, z)))) << key;
  }
}

TEST(MapIo, RejectsMalformedFiles) {
  EXPECT_THROW(parse_map_json("{"), Error);
  EXPECT_THROW(parse_map_json(R"({"g": {"num": [[1, 0]]}})"), Error);
  EXPECT_THROW(load_map("no-such-catalog-key"), Error);
}

TEST(Catalog, KnownKeysAndFormulas) {
  EXPECT_EQ(catalog_keys().size(), 5u);
  EXPECT_NO_THROW(catalog_map("wilmshurst:5"));
  EXPECT_NO_THROW(catalog_map("power:4,2"));
  EXPECT_THROW(catalog_map("power:2,4"), Error);
  const HarmonicMap f = catalog_map("wilmshurst:3").map;
  const Cx z(0.4, -0.3);
  const Cx expect = std::pow(z, 3) + std::pow(z - 1.0, 3) + std::conj(Cx(0, 1) * std::pow(z, 3) - Cx(0, 1) * std::pow(z - 1.0, 3));
  EXPECT_NEAR(std::abs(evaluate(f, z) - expect), 0, 1e-13);
}
