#pragma once

#include <functional>
#include <vector>

#include "harmonic/analysis.hpp"

namespace harmonic {

enum class CountRoute { formula, newton, brute_force };
const char* to_string(CountRoute r);

struct WindingEntry {
  int component_id = 0;
  int winding = 0;
};

struct CountReport {
  Cx eta;
  std::vector<WindingEntry> windings;
  int P = 0;
  int ind_infinity = 0;
  int N = 0;
  CountRoute route = CountRoute::formula;
  double clearance = 0;  // distance from eta to the critical values

  int winding_sum() const;
};

/// Curve value at a parameter, used to refine coarse stretches.
using CurveEval = std::function<Cx(double)>;

/// Total change of arg(w - eta) along samples [begin, end]. With eval given,
/// increments above pi/2 are split at the midpoint parameter until they are not.
/// Throws OnCurve when a sample comes within 1e-9 scale of eta.
double angle_change(const std::vector<double>& t, const std::vector<Cx>& w, size_t begin, size_t end, Cx eta,
                    const CurveEval& eval = {}, double scale = 1.0);

/// Winding number of a closed sampled curve (first sample repeated at the end).
/// Throws OnCurve, or NonInteger when the angle sum is not near a multiple of 2 pi.
int winding_number(const std::vector<Cx>& closed, Cx eta, double scale = 1.0);
int winding_number(const std::vector<double>& t, const std::vector<Cx>& w, Cx eta, const CurveEval& eval,
                   double scale = 1.0);

/// n(f o gamma; eta) for critical curve i of the analysis.
int caustic_winding(const MapAnalysis& an, size_t i, Cx eta);

/// N = 2 sum n(f o gamma; eta) + P - ind(f - eta; infinity).
/// Throws DegenerateMap, or EtaOnCaustic when eta is within the margin of a critical value.
CountReport count_preimages(const MapAnalysis& an, Cx eta);

enum class Sense { preserving, reversing };
const char* to_string(Sense s);

/// Samples [begin, end] of critical curve `curve` between two vertex visits.
struct ArcRef {
  int curve = 0;
  size_t begin = 0;
  size_t end = 0;
};

/// Connected component of the complement of the critical set.
struct RegionComponent {
  int id = 0;
  Sense sense = Sense::preserving;
  std::vector<int> boundary_curve_ids;
  std::vector<ArcRef> boundary;  // with multiplicity: an arc with this component on both sides appears twice
  bool is_unbounded = false;
  std::vector<Cx> poles;
  int P = 0;
  Cx interior;  // a point well inside
};

struct RegionMap {
  std::vector<RegionComponent> components;
  double x0 = 0, y0 = 0, h = 1;
  int nx = 0, ny = 0;
  std::vector<int> label;

  /// Component containing z: the unbounded one outside the grid, -1 right on a critical curve.
  int locate(Cx z) const;
};

/// Splits the plane along the critical curves on a grid x grid raster.
RegionMap region_components(const MapAnalysis& an, int grid = 512);

/// Sum of boundary windings + P(f; A), minus ind(f - eta; infinity) for the unbounded A.
/// Throws EtaOnBoundaryImage.
int count_in_component(const MapAnalysis& an, const RegionComponent& A, Cx eta);

/// N2 = N1 + 2 sum (n(f o gamma; eta2) - n(f o gamma; eta1)).
/// Throws EtaOnCaustic, or InvalidInput when f has a finite limit c at infinity
/// and |eta2 - eta1| >= |c - eta1|.
int relative_count(const MapAnalysis& an, Cx eta1, Cx eta2, int N1);

struct LocalizedCount {
  enum class Kind { pole_disk, infinity, elsewhere };
  Kind kind = Kind::elsewhere;
  Cx center;
  double radius = 0;  // disk radius, or the inner radius 1/eps of the region at infinity
  int expected = 0;
};
const char* to_string(LocalizedCount::Kind k);

struct Localization {
  std::vector<LocalizedCount> regions;
  double threshold = 0;  // |eta| has to exceed this
};

/// Where the pre-images of a large eta sit: |ind(f; z_k)| in each eps-disk
/// around a pole, -ind(f - eta; infinity) in |z| > 1/eps, none elsewhere.
/// Throws EtaTooSmall (with the threshold), or InvalidInput when the disks overlap
/// or a boundary circle is not of a single sense.
Localization large_eta_localization(const MapAnalysis& an, Cx eta, double eps);

}  // namespace harmonic
