#include <gtest/gtest.h>

#include <atomic>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/export.hpp"
#include "harmonic/parallel.hpp"

using namespace harmonic;

TEST(Export, FifteenSignificantDigits) {
  EXPECT_EQ(fmt(1.0 / 3), "0.333333333333333");
  EXPECT_EQ(fmt(-2.5e-20), "-2.5e-20");
  EXPECT_EQ(fmt(10.0), "10");
}

TEST(Export, CsvLayouts) {
  const MapAnalysis an = analyze(catalog_map("nexp").map);
  std::ostringstream a, b;
  write_critical_csv(a, an.critical);
  write_caustics_csv(b, an.caustics);
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "curve,t,x,y,vertex");
  EXPECT_EQ(b.str().substr(0, b.str().find('\n')), "curve,t,x,y,u,v,tau_x,tau_y,psi");
  size_t lines = 0;
  for (char c : a.str()) lines += c == '\n';
  EXPECT_EQ(lines, an.critical.curves[0].samples.size() + 1);
}

TEST(Export, SvgHasOnePathPerCurve) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  std::ostringstream os;
  write_caustics_svg(os, an);
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  size_t paths = 0;
  for (size_t p = s.find("<path"); p != std::string::npos; p = s.find("<path", p + 1)) ++paths;
  EXPECT_EQ(paths, an.caustics.size());
}

TEST(Export, IndexTableJson) {
  const MapAnalysis an = analyze(catalog_map("log-example").map);
  const auto j = nlohmann::json::parse(analysis_json(an, "log-example"));
  EXPECT_EQ(j["P"], 2);
  EXPECT_EQ(j["infinity_index"], -2);
  EXPECT_EQ(j["poles"].size(), 2u);
  EXPECT_TRUE(j["non_degenerate"].get<bool>());
}

TEST(Export, CountJsonRoundTrip) {
  const MapAnalysis an = analyze(catalog_map("mpw").map);
  const auto j = nlohmann::json::parse(count_json(count_preimages(an, 0.0)));
  EXPECT_EQ(j["N"], 10);
  EXPECT_EQ(j["windings"].size(), 2u);
}

TEST(Parallel, CoversEveryIndexOnce) {
  set_thread_count(4);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(100, [](size_t i) {
                 if (i == 37) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  set_thread_count(0);
}

TEST(Determinism, RepeatedAnalysisIsIdentical) {
  const MapAnalysis a = analyze(catalog_map("mpw").map), b = analyze(catalog_map("mpw").map);
  ASSERT_EQ(a.caustics.size(), b.caustics.size());
  for (size_t i = 0; i < a.caustics.size(); ++i) {
    ASSERT_EQ(a.caustics[i].samples.size(), b.caustics[i].samples.size());
    for (size_t k = 0; k < a.caustics[i].samples.size(); ++k) EXPECT_EQ(a.caustics[i].samples[k].w, b.caustics[i].samples[k].w);
  }
}
