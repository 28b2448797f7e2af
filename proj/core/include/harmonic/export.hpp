#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "harmonic/analysis.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/newton.hpp"
#include "harmonic/tiles.hpp"
#include "harmonic/valence.hpp"

namespace harmonic {

/// Every number leaves the library with 15 significant digits.
std::string fmt(double x);

void write_critical_csv(std::ostream& os, const CriticalSet& cs);
void write_caustics_csv(std::ostream& os, const std::vector<CausticCurve>& cs);
void write_preimages_csv(std::ostream& os, const SolveReport& r);
void write_scan_csv(std::ostream& os, const ValenceScan& s);
/// arg(f - eta) on an n x n grid over the box, for external rendering.
void write_phase_csv(std::ostream& os, const HarmonicMap& f, Cx eta, const BoundingBox& box, int n);

/// Minimal SVG canvas in world coordinates (y up).
class SvgPlot {
 public:
  void polyline(const std::vector<Cx>& pts, const std::string& color, double width = 1.0);
  void point(Cx z, const std::string& color, double radius = 3.0);
  void label(Cx z, const std::string& text, const std::string& color = "#000");
  void write(std::ostream& os, int pixels = 800) const;

 private:
  struct Line {
    std::vector<Cx> pts;
    std::string color;
    double width;
  };
  struct Dot {
    Cx z;
    std::string color;
    double r;
  };
  struct Text {
    Cx z;
    std::string text, color;
  };
  std::vector<Line> lines_;
  std::vector<Dot> dots_;
  std::vector<Text> texts_;
};

void write_critical_svg(std::ostream& os, const MapAnalysis& an);
void write_caustics_svg(std::ostream& os, const MapAnalysis& an);
/// Caustics with each tile representative labelled by its count.
void write_tiles_svg(std::ostream& os, const MapAnalysis& an, const TileReport& tiles);

/// Index table (poles, infinity, isolated critical points) and the non-degeneracy report.
std::string analysis_json(const MapAnalysis& an, const std::string& map_id = "");
std::string count_json(const CountReport& r);
std::string solve_json(const SolveReport& r);
std::string tiles_json(const TileReport& r);
std::string scan_json(const ValenceScan& s);

}  // namespace harmonic
