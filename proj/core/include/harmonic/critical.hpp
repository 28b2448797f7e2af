#pragma once

#include <functional>
#include <vector>

#include "harmonic/mapping.hpp"

namespace harmonic {

struct CurveSample {
  double t = 0;
  Cx z;
  bool at_vertex = false;
  int vertex_id = -1;
};

/// A zero of omega' on |omega| = 1, where 2n critical arcs meet.
struct Vertex {
  Cx z;
  int branching = 2;  // n
  double t = 0;       // arg omega(z) in (-pi, pi]
  Cx cn;              // n-th Taylor coefficient of omega at z
};

/// Samples [begin, end] of a curve between two vertex visits.
struct ArcRange {
  size_t begin = 0;
  size_t end = 0;
  int from_vertex = -1;
  int to_vertex = -1;
};

/// Closed oriented critical curve with omega(z(t)) = e^{it}.
struct CriticalCurve {
  int component_id = 0;
  std::vector<CurveSample> samples;  // first and last coincide
  std::vector<int> vertex_ids;       // indices into CriticalSet::vertices
  std::vector<ArcRange> arcs;        // one arc spanning everything for Jordan curves
  bool closed = true;

  double t_span() const { return samples.back().t - samples.front().t; }
};

struct IsolatedCriticalPoint {
  Cx z;
  double omega_limit_abs = 0;  // +inf when omega has a pole there
};

struct TraceOptions {
  double h_min = 1e-4;
  double h_max = 0.1;
  double corrector_tol = 1e-11;
  long max_steps = 200000;
  double branch_radius = 1e-5;  // relative to the curve scale
  double max_dz = 0.02;         // relative to the curve scale
  double densify = 0.005;       // max segment length, relative to the bounding box diagonal
};

/// omega and omega' with the helpers every tracing step needs.
class CurveField {
 public:
  CurveField() = default;
  explicit CurveField(const HarmonicMap& f);
  CurveField(RationalFn omega, double scale);

  const RationalFn& omega() const { return omega_; }
  const RationalFn& domega() const { return domega_; }
  double scale() const { return scale_; }
  void set_scale(double s) { scale_ = s; }

  // Newton on omega(z) = e^{it}; returns false if it fails to converge.
  bool correct(Cx& z, double t, double tol = 1e-11, int* iterations = nullptr) const;
  // i omega / omega'
  Cx tangent(Cx z) const;

 private:
  RationalFn omega_, domega_;
  double scale_ = 1.0;
};

/// Probe phases used for seeding: offset + 2 pi k / 8.
std::vector<double> probe_phases();

struct Seed {
  Cx z;
  double t = 0;  // its probe phase
};

/// Solutions of omega(z) = e^{i phi} for every probe phase phi.
/// Throws DegenerateDilatation if omega is a unimodular constant.
std::vector<Seed> critical_seeds(const CurveField& field);
std::vector<Seed> critical_seeds(const HarmonicMap& f);

/// Zeros of omega' with |omega| = 1.
std::vector<Vertex> find_vertices(const CurveField& field);

/// Traces the Jordan component through a seed (no vertices on it).
/// Throws HitBranchPoint when it runs into a zero of omega', MaxSteps.
CriticalCurve trace_curve(const CurveField& field, const Seed& seed, const TraceOptions& opt = {},
                          const std::vector<Vertex>& vertices = {});

/// An open arc traced from one vertex to the next.
struct OpenArc {
  int from = -1;
  int to = -1;
  std::vector<CurveSample> samples;
};

/// Joins the arcs of one component into a single closed curve following an
/// Euler circuit of the directed multigraph on the vertices.
/// Throws UnbalancedVertex if in- and out-degrees differ somewhere.
CriticalCurve stitch_component(const std::vector<OpenArc>& arcs, const std::vector<Vertex>& vertices);

std::vector<IsolatedCriticalPoint> isolated_points(const HarmonicMap& f);

struct CriticalSet {
  std::vector<CriticalCurve> curves;
  std::vector<Vertex> vertices;
  std::vector<IsolatedCriticalPoint> isolated;
  std::vector<Seed> seeds;
  double scale = 1.0;
};

/// Full critical set: vertices, stitched components, Jordan curves, and M.
/// Throws DegenerateMap when a pure log pole makes the critical set accumulate.
CriticalSet critical_set(const HarmonicMap& f, const TraceOptions& opt = {});

/// Inserts corrected midpoints between consecutive samples while
/// needs_split(a, b) holds (never next to vertex samples). Returns the count.
int refine_curve(const CurveField& field, CriticalCurve& curve,
                 const std::function<bool(const CurveSample&, const CurveSample&)>& needs_split,
                 int max_rounds = 12);

/// Point of the curve at parameter t, from linear interpolation and a corrector step.
Cx curve_point(const CurveField& field, const CriticalCurve& curve, double t);

}  // namespace harmonic
