#pragma once

#include <vector>

#include "harmonic/critical.hpp"
#include "harmonic/mapping.hpp"

namespace harmonic {

struct CausticSample {
  double t = 0;
  Cx z;        // point on the critical curve
  Cx w;        // f(z)
  Cx tau;      // d/dt f(gamma(t)); zero at vertex samples
  double psi = 0;
  bool at_vertex = false;
};

struct CuspPoint {
  double t = 0;
  Cx z;
  Cx w;
  double condition = 0;  // Im((a2/a1) e^{i theta} + conj((b2/b1) e^{i theta})), normalized
};

/// Image of one critical curve. tau = e^{-it/2} psi with the branch of e^{it/2}
/// taken straight from the (continuous) curve parameter.
struct CausticCurve {
  int source = 0;
  std::vector<CausticSample> samples;
  std::vector<CuspPoint> cusps;
  std::vector<double> second_kind;  // psi touches zero without a sign change
  bool degenerate = false;          // the whole curve maps to one point
};

struct CausticOptions {
  double max_dw = 0.004;      // relative to the caustic bounding box diagonal
  double max_dt = 0.01;
  double cusp_t_tol = 1e-9;
  int max_rounds = 14;
};

/// Inserts curve points until consecutive images are close (max_dw) and t-steps small (max_dt).
void refine_for_caustic(const HarmonicMap& f, const CurveField& field, CriticalCurve& curve,
                        const CausticOptions& opt = {});

/// Pushes a critical curve through f. Refines the curve so the image polyline
/// is fine, then fills tau and psi and locates the cusps.
/// Throws SingularSample when a sample hits a singular point.
CausticCurve caustic_from_curve(const HarmonicMap& f, const CurveField& field, const CriticalCurve& curve,
                                const CausticOptions& opt = {});

/// All caustics of a critical set (one per curve, same order).
std::vector<CausticCurve> caustics(const HarmonicMap& f, const CriticalSet& cs, const CausticOptions& opt = {});

/// Point, tangent and psi on the curve at parameter t.
CausticSample caustic_point(const HarmonicMap& f, const CurveField& field, const CriticalCurve& curve, double t);

/// tau and psi at a critical point z with omega(z) = e^{it}.
void caustic_tangent(const HarmonicMap& f, const CurveField& field, Cx z, double t, Cx& tau, double& psi);

std::vector<CuspPoint> cusp_points(const CausticCurve& c);

struct CurvatureReport {
  double max_deviation = 0;
  int checked = 0;
  int excluded = 0;
};

/// Finite-difference d/dt arg tau compared with -1/2 at every sample, leaving
/// out samples whose difference stencil touches a cusp, a vertex, or |psi| < psi_floor.
CurvatureReport curvature_check(const HarmonicMap& f, const CurveField& field, const CriticalCurve& curve,
                                const CausticCurve& c, double h = 1e-4, double psi_floor = 1e-6);

/// w samples as a closed polyline (first == last).
std::vector<Cx> polyline(const CausticCurve& c);

struct BoundingBox {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  double diagonal() const;
  bool empty() const { return xmin > xmax; }
};
BoundingBox caustic_box(const std::vector<CausticCurve>& cs);

/// Distance from eta to the nearest segment of any caustic polyline.
double caustic_distance(const std::vector<CausticCurve>& cs, Cx eta);

/// n(c; eta2) - n(c; eta1) for a segment crossing c exactly once.
/// Throws TangentialCrossing or MultipleCrossings.
int crossing_delta(const CausticCurve& c, Cx eta1, Cx eta2);

}  // namespace harmonic
