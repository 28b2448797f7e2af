#include <gtest/gtest.h>

#include <set>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/error.hpp"
#include "harmonic/newton.hpp"
#include "harmonic/tiles.hpp"

using namespace harmonic;

TEST(Winding, CircleAroundPoint) {
  std::vector<Cx> c;
  for (int k = 0; k <= 64; ++k) c.push_back(std::polar(1.0, kTwoPi * k / 64));
  EXPECT_EQ(winding_number(c, 0.0), 1);
  EXPECT_EQ(winding_number(c, 2.0), 0);
  std::vector<Cx> twice;
  for (int k = 0; k <= 128; ++k) twice.push_back(std::polar(1.0, -2 * kTwoPi * k / 128));
  EXPECT_EQ(winding_number(twice, Cx(0.1, 0.2)), -2);
  try {
    winding_number(c, c[3]);
    FAIL() << "expected OnCurve";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OnCurve);
  }
}

TEST(Counting, GoldenCounts) {
  const MapAnalysis mpw = analyze(catalog_map("mpw").map);
  EXPECT_EQ(count_preimages(mpw, 0.0).N, 10);
  const CountReport far = count_preimages(mpw, Cx(10, 10));
  EXPECT_EQ(far.N, 4);
  EXPECT_EQ(far.P, 3);
  EXPECT_EQ(far.ind_infinity, -1);
  EXPECT_EQ(far.route, CountRoute::formula);

  const MapAnalysis lg = analyze(catalog_map("log-example").map);
  EXPECT_EQ(lg.P, 2);
  EXPECT_EQ(count_preimages(lg, Cx(30, 30)).N, 4);
  EXPECT_EQ(count_preimages(analyze(catalog_map("wilmshurst:3").map), 0.0).N, 9);
}

TEST(Counting, RefusesTargetsOnTheCaustic) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  try {
    count_preimages(an, an.caustics[0].samples[7].w);
    FAIL() << "expected EtaOnCaustic";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EtaOnCaustic);
  }
}

TEST(Counting, DegenerateMapsAreRefused) {
  const MapAnalysis an = analyze(HarmonicMap(RationalFn(Poly{0.0, 1.0}), RationalFn(Poly{0.0, 0.0, 0.0, 1.0})));
  EXPECT_FALSE(an.degeneracy.ok);
  try {
    count_preimages(an, 0.3);
    FAIL() << "expected DegenerateMap";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateMap);
  }
}

TEST(Counting, ComponentCountsAddUp) {
  for (const auto& [key, eta] : std::vector<std::pair<std::string, Cx>>{
           {"mpw", 0.0}, {"mpw", Cx(10, 10)}, {"log-example", Cx(0.3, 0.2)}, {"wilmshurst:3", 0.0}, {"nexp", 0.5}}) {
    const MapAnalysis an = analyze(catalog_map(key).map);
    const RegionMap rm = region_components(an);
    int sum = 0;
    for (const auto& A : rm.components) sum += count_in_component(an, A, eta);
    EXPECT_EQ(sum, count_preimages(an, eta).N) << key;
    // and the pre-images found by Newton fall into components with the right counts
    std::vector<int> per(rm.components.size(), 0);
    for (const auto& p : solve_preimages(an, eta).points) {
      const int c = rm.locate(p.z);
      ASSERT_GE(c, 0);
      ++per[c];
      EXPECT_EQ(p.sense, rm.components[c].sense) << key;
    }
    for (size_t c = 0; c < per.size(); ++c) EXPECT_EQ(per[c], count_in_component(an, rm.components[c], eta)) << key;
  }
}

TEST(Counting, RelativeCountMatchesDirectCount) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  const int n0 = count_preimages(an, 0.0).N;
  for (const Cx eta : {Cx(10, 10), Cx(0.2, 0.1), Cx(-0.4, 0.3)})
    EXPECT_EQ(relative_count(an, 0.0, eta, n0), count_preimages(an, eta).N);
}

TEST(Counting, LargeEtaLocalization) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  const Cx eta(1e4, 3e3);
  const Localization loc = large_eta_localization(an, eta, 0.05);
  int expected = 0;
  for (const auto& r : loc.regions) expected += r.expected;
  EXPECT_EQ(expected, count_preimages(an, eta).N);
  for (const auto& p : solve_preimages(an, eta).points) {
    int hits = 0;
    for (const auto& r : loc.regions) {
      if (r.kind == LocalizedCount::Kind::pole_disk) hits += std::abs(p.z - r.center) < r.radius;
      if (r.kind == LocalizedCount::Kind::infinity) hits += std::abs(p.z) > r.radius;
    }
    EXPECT_EQ(hits, 1);
  }
  try {
    large_eta_localization(an, 0.5, 0.05);
    FAIL() << "expected EtaTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EtaTooSmall);
  }
}

namespace {

std::set<int> tile_counts(const TileReport& t) {
  std::set<int> s;
  for (const auto& tile : t.tiles) s.insert(tile.preimage_count);
  return s;
}

}  // namespace

TEST(Tiles, Spectra) {
  EXPECT_EQ(tile_counts(tile_decomposition(analyze(catalog_map("mpw").map))), (std::set<int>{4, 6, 8, 10}));
  EXPECT_EQ(tile_counts(tile_decomposition(analyze(catalog_map("wilmshurst:3").map))), (std::set<int>{3, 5, 7, 9}));
  EXPECT_EQ(tile_counts(tile_decomposition(analyze(catalog_map("nexp").map))), (std::set<int>{3, 5, 7}));
  EXPECT_EQ(tile_counts(tile_decomposition(analyze(catalog_map("double-caustic").map))), (std::set<int>{4, 8}));
}

TEST(Tiles, LogExampleShapes) {
  const TileReport t = tile_decomposition(analyze(catalog_map("log-example").map));
  EXPECT_EQ(tile_counts(t), (std::set<int>{2, 4, 6}));
  int outer = 0;
  for (const auto& tile : t.tiles) {
    if (tile.preimage_count == 2) EXPECT_EQ(tile.shape, TileShape::cardioid_like);
    if (tile.preimage_count == 6) EXPECT_EQ(tile.shape, TileShape::deltoid_like);
    if (tile.shape == TileShape::outer) {
      ++outer;
      EXPECT_EQ(tile.preimage_count, 4);
    }
  }
  EXPECT_EQ(outer, 1);
}

TEST(Tiles, NeighborsDifferByTwo) {
  const TileReport t = tile_decomposition(analyze(catalog_map("mpw").map));
  int pairs = 0;
  for (const auto& a : t.tiles)
    for (int b : a.neighbors) {
      EXPECT_EQ(std::abs(a.preimage_count - t.tiles[b].preimage_count), 2);
      ++pairs;
    }
  EXPECT_GT(pairs, 0);
}

TEST(Tiles, NoCausticMeansOneTile) {
  // z^2: the critical set is just the origin
  const MapAnalysis an = analyze(HarmonicMap(RationalFn(Poly{0.0, 0.0, 1.0}), RationalFn()));
  const TileReport t = tile_decomposition(an);
  ASSERT_EQ(t.tiles.size(), 1u);
  EXPECT_EQ(t.tiles[0].shape, TileShape::outer);
  EXPECT_EQ(t.tiles[0].preimage_count, 2);
}
