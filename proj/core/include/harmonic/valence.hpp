#pragma once

#include <set>
#include <string>
#include <vector>

#include "harmonic/analysis.hpp"
#include "harmonic/tiles.hpp"

namespace harmonic {

/// The cubic p with p(z1) = eps, p(z2) = -eps and p'(z1) = p'(z2) = 0.
/// Throws CoincidentPoints when z1 == z2.
Poly hermite_perturbation(Cx z1, Cx z2, double eps);

/// Two critical points on different arcs with the same image.
struct MultiplePair {
  Cx z1, z2;
  Cx w;
  int curve1 = 0, curve2 = 0;
  double t1 = 0, t2 = 0;
  int run = 0;  // matched samples in the stretch this pair represents
};

/// Stretches where caustic arcs from distinct critical arcs lie on top of each
/// other (images within 1e-6 scale), one representative pair per stretch.
/// Isolated transversal crossings are not reported.
std::vector<MultiplePair> detect_multiple_caustic(const MapAnalysis& an);

struct ScanRecord {
  Cx eta;
  int N = 0;
  int tile_id = -1;
  bool on_caustic = false;  // count inferred from a fold crossing, not from the formula
};

struct ValenceScan {
  std::string map_id;
  std::vector<Cx> path;  // waypoints actually used, detours included
  std::vector<ScanRecord> records;
  std::set<int> achieved_counts;  // certified, off the caustics
  std::set<int> crossing_counts;  // realized only on the caustics
  int detours = 0;
};

struct ScanOptions {
  int steps = 200;
  double avoid = 10;  // keep this many margins away from cusps and multiple points
  int max_detours = 5;
  const TileReport* tiles = nullptr;  // for tile ids
};

/// Counts along the segment from eta_start to eta_end. Points too close to the
/// caustics, cusps or multiple points are pushed sideways.
/// Throws PathBlocked when a point cannot be placed within max_detours offsets.
ValenceScan valence_scan(const MapAnalysis& an, Cx eta_start, Cx eta_end, const ScanOptions& opt = {});

struct PerturbationCheck {
  double eps = 0;
  int count_before = 0;
  int count_after = 0;
  double separation = 0;  // |f~(z1) - f~(z2)|
  int attempts = 0;
  bool holds = false;
};

/// Adds hermite_perturbation(z1, z2, eps) to f and compares brute-force zero
/// counts of f - eta before and after, halving eps from eps0 until the count
/// does not drop and the two images separate by at least eps, or eps < 1e-10.
PerturbationCheck perturbation_check(const HarmonicMap& f, Cx z1, Cx z2, Cx eta, double eps0);

}  // namespace harmonic
