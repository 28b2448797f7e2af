#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "harmonic/analysis.hpp"
#include "harmonic/newton.hpp"
#include "harmonic/oracle.hpp"

namespace harmonic {

struct ValidateOptions {
  int samples = 20;     // random eta per map
  int crossings = 20;   // random fold crossings per map
  std::uint64_t seed = 42;
  double clearance = 20;  // keep random eta this many margins off the caustics
  NewtonOptions newton;
  OracleOptions oracle;
};

/// Random targets off the caustics: mostly over the caustic box, a quarter
/// from a box three times larger.
std::vector<Cx> random_etas(const MapAnalysis& an, int n, std::mt19937_64& rng, double clearance = 20);

struct Agreement {
  Cx eta;
  int formula = -1;
  int newton = -1;  // -1 when the solver gave up
  int oracle = -1;
  int sphere_sum = 0;  // signed zero indices + pole indices + ind at infinity
  std::string note;

  bool agrees() const { return formula >= 0 && formula == newton && newton == oracle; }
};

/// Counts eta three ways and sums the indices over the sphere.
Agreement agreement_at(const MapAnalysis& an, Cx eta, const ValidateOptions& opt = {});

struct FoldCrossing {
  Cx before, after;
  int n_before = 0, n_after = 0;
  int delta_winding = 0;  // change of the crossed caustic's winding number
};

/// Short segments across single fold arcs, away from cusps, vertices and
/// overlapping arcs.
std::vector<FoldCrossing> random_fold_crossings(const MapAnalysis& an, int n, std::mt19937_64& rng);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Triple agreement, parity, fold crossings, curvature and index balance.
std::vector<CheckResult> validate_map(const MapAnalysis& an, const ValidateOptions& opt = {});

}  // namespace harmonic
