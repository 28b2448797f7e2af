#pragma once

#include <vector>

#include "harmonic/analysis.hpp"

namespace harmonic {

enum class TileShape { deltoid_like, cardioid_like, mixed, outer };
const char* to_string(TileShape s);

/// A connected piece of the eta-plane minus the caustics.
struct CausticTile {
  int id = 0;
  Cx representative;
  std::vector<int> winding_vector;  // n(f o gamma_i; representative), one per critical curve
  int preimage_count = 0;
  TileShape shape = TileShape::mixed;
  std::vector<int> neighbors;  // tiles across a single caustic arc
  double clearance = 0;        // distance from the representative to the caustics
};

struct TileOptions {
  int initial_grid = 64;
  int max_grid = 1024;
  int refine_factor = 4;
};

struct TileReport {
  std::vector<CausticTile> tiles;
  int grid = 0;     // resolution of the final pass
  int dropped = 0;  // slivers with no point farther than the margin from the caustics
};

/// Rasterizes the inflated caustic box, groups cells by winding vector and
/// connectivity, and fills counts from the formula. Refines the raster until
/// no new winding vector appears.
/// Throws TooClose when not a single tile admits a representative.
TileReport tile_decomposition(const MapAnalysis& an, const TileOptions& opt = {});

}  // namespace harmonic
