#pragma once

#include <optional>
#include <vector>

#include "harmonic/caustic.hpp"
#include "harmonic/critical.hpp"
#include "harmonic/mapping.hpp"

namespace harmonic {

/// Everything about a map that does not depend on eta, computed once.
struct MapAnalysis {
  HarmonicMap f;
  DegeneracyReport degeneracy;
  CriticalSet critical;     // curves refined to match the caustic samples
  CurveField field;
  std::vector<CausticCurve> caustics;
  std::vector<IndexRecord> poles;
  int P = 0;
  std::vector<Cx> isolated_images;  // f at the points of M
  BoundingBox box;                  // of all caustic samples and isolated images
  double margin = 1e-3;             // closest admissible distance of eta to a caustic
  // index of f - eta at infinity when it does not depend on eta
  std::optional<int> fixed_infinity_index;
  // lim f at infinity when finite
  std::optional<Cx> limit_at_infinity;
};

struct AnalysisOptions {
  TraceOptions trace;
  CausticOptions caustic;
  double margin_rel = 1e-3;  // of the caustic bounding box diagonal
};

/// Degenerate maps come back with degeneracy.ok == false and no curves.
MapAnalysis analyze(const HarmonicMap& f, const AnalysisOptions& opt = {});

/// ind(f - eta; infinity), using the cached value when it is eta-independent.
int infinity_index(const MapAnalysis& an, Cx eta);

/// Distance from eta to the caustics and to f(M).
double critical_value_distance(const MapAnalysis& an, Cx eta);

/// Typical size of the critical set in the z-plane.
double critical_radius(const MapAnalysis& an);

}  // namespace harmonic
