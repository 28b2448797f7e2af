#pragma once

#include <vector>

#include "harmonic/mapping.hpp"

namespace harmonic {

/// Brute-force zero count of f - eta by recursive cell subdivision. Uses only
/// evaluations of f, its Wirtinger derivatives, and pole indices, so it is
/// independent of the critical set and caustic machinery it is meant to check.
struct OracleOptions {
  double leaf = 1e-6;       // leaf size, relative to the scale
  double pole_leaf = 1e-4;  // size at which cells touching a pole stop
  int ring_samples = 2048;  // samples on the big circle
  int max_doublings = 40;
};

struct OracleResult {
  int count = 0;
  std::vector<Cx> zeros;  // polished, each with box winding +-1
  int unresolved = 0;     // zeros inferred from pole-cell windings
  double radius = 0;      // half-width of the searched square
  long cells = 0;
};

/// Winding number of f - eta along the boundary of the square with the given
/// centre and half-width, sampled n times per side.
int box_winding(const HarmonicMap& f, Cx eta, Cx center, double half, int n = 64);

OracleResult brute_force_count(const HarmonicMap& f, Cx eta, const OracleOptions& opt = {});

}  // namespace harmonic
