#include "harmonic/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace harmonic {

MapAnalysis analyze(const HarmonicMap& f, const AnalysisOptions& opt) {
  MapAnalysis an;
  an.f = f;
  an.degeneracy = is_non_degenerate(f);
  an.box.xmin = an.box.ymin = std::numeric_limits<double>::infinity();
  an.box.xmax = an.box.ymax = -an.box.xmin;
  if (!an.degeneracy.ok) return an;

  an.poles = pole_records(f);
  an.P = pole_count(an.poles);
  an.critical = critical_set(f, opt.trace);
  if (!f.coanalytic_derivative().is_zero()) {
    an.field = CurveField(f);
    an.field.set_scale(an.critical.scale);
    for (auto& c : an.critical.curves) {
      refine_for_caustic(f, an.field, c, opt.caustic);
      an.caustics.push_back(caustic_from_curve(f, an.field, c, opt.caustic));
    }
  }
  for (const auto& m : an.critical.isolated) an.isolated_images.push_back(evaluate(f, m.z));

  an.box = caustic_box(an.caustics);
  for (const Cx& w : an.isolated_images) {
    an.box.xmin = std::min(an.box.xmin, w.real());
    an.box.xmax = std::max(an.box.xmax, w.real());
    an.box.ymin = std::min(an.box.ymin, w.imag());
    an.box.ymax = std::max(an.box.ymax, w.imag());
  }
  double size = an.box.diagonal();
  if (!(size > 0)) {
    size = 1.0;
    for (const Cx& w : an.isolated_images) size = std::max(size, std::abs(w));
  }
  an.margin = opt.margin_rel * size;

  const LocalExpansion e = expansion_at_infinity(f, 0.0, 4);
  if (!e.all_zero && e.lead < 0) {
    an.fixed_infinity_index = pole_index(e);
  } else if (e.c != Cx{}) {
    an.fixed_infinity_index = 0;
  } else {
    an.limit_at_infinity = e.a(0);
  }
  return an;
}

int infinity_index(const MapAnalysis& an, Cx eta) {
  if (an.fixed_infinity_index) return *an.fixed_infinity_index;
  return index_at_infinity(an.f, eta);
}

double critical_value_distance(const MapAnalysis& an, Cx eta) {
  double d = caustic_distance(an.caustics, eta);
  for (const Cx& w : an.isolated_images) d = std::min(d, std::abs(w - eta));
  return d;
}

double critical_radius(const MapAnalysis& an) {
  double r = 0;
  for (const auto& c : an.critical.curves)
    for (const auto& s : c.samples) r = std::max(r, std::abs(s.z));
  for (const auto& m : an.critical.isolated) r = std::max(r, std::abs(m.z));
  for (const Cx& p : an.f.singular_points()) r = std::max(r, std::abs(p));
  return std::max(r, 1.0);
}

}  // namespace harmonic
