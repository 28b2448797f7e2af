#include "harmonic/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "grid.hpp"
#include "harmonic/error.hpp"

namespace harmonic {

const char* to_string(CountRoute r) {
  switch (r) {
    case CountRoute::formula: return "formula";
    case CountRoute::newton: return "newton";
    case CountRoute::brute_force: return "brute_force";
  }
  return "?";
}

const char* to_string(Sense s) { return s == Sense::preserving ? "preserving" : "reversing"; }

const char* to_string(LocalizedCount::Kind k) {
  switch (k) {
    case LocalizedCount::Kind::pole_disk: return "pole_disk";
    case LocalizedCount::Kind::infinity: return "infinity";
    case LocalizedCount::Kind::elsewhere: return "elsewhere";
  }
  return "?";
}

int CountReport::winding_sum() const {
  int s = 0;
  for (const auto& w : windings) s += w.winding;
  return s;
}

namespace {

struct AngleSum {
  Cx eta;
  const CurveEval& eval;
  double on_curve;

  void check(Cx w) const {
    if (std::abs(w - eta) < on_curve) throw Error(ErrorCode::OnCurve, "eta lies on the sampled curve");
  }

  double piece(double ta, Cx wa, double tb, Cx wb, int depth) const {
    const double inc = std::arg((wb - eta) / (wa - eta));
    if (std::abs(inc) <= 0.5 * kPi || !eval || depth > 40 || !(tb - ta > 1e-15 * std::max(1.0, std::abs(ta))))
      return inc;
    const double tm = 0.5 * (ta + tb);
    const Cx wm = eval(tm);
    check(wm);
    return piece(ta, wa, tm, wm, depth + 1) + piece(tm, wm, tb, wb, depth + 1);
  }
};

int round_turns(double total) {
  const double r = total / kTwoPi;
  const double k = std::round(r);
  if (std::abs(r - k) > 0.45) {
    std::ostringstream os;
    os << "angle sum " << r << " turns is not close to an integer";
    throw Error(ErrorCode::NonInteger, os.str());
  }
  return static_cast<int>(k);
}

}  // namespace

double angle_change(const std::vector<double>& t, const std::vector<Cx>& w, size_t begin, size_t end, Cx eta,
                    const CurveEval& eval, double scale) {
  AngleSum a{eta, eval, 1e-9 * scale};
  double s = 0;
  for (size_t i = begin; i <= end; ++i) a.check(w[i]);
  for (size_t i = begin; i < end; ++i) {
    if (t.empty()) s += std::arg((w[i + 1] - eta) / (w[i] - eta));
    else s += a.piece(t[i], w[i], t[i + 1], w[i + 1], 0);
  }
  return s;
}

int winding_number(const std::vector<Cx>& closed, Cx eta, double scale) {
  if (closed.size() < 2) throw Error(ErrorCode::InvalidInput, "a closed curve needs at least two samples");
  return round_turns(angle_change({}, closed, 0, closed.size() - 1, eta, {}, scale));
}

int winding_number(const std::vector<double>& t, const std::vector<Cx>& w, Cx eta, const CurveEval& eval,
                   double scale) {
  if (w.size() < 2 || t.size() != w.size()) throw Error(ErrorCode::InvalidInput, "malformed sampled curve");
  return round_turns(angle_change(t, w, 0, w.size() - 1, eta, eval, scale));
}

namespace {

double value_scale(const MapAnalysis& an) { return std::max(1.0, an.box.diagonal()); }

double arc_angle(const MapAnalysis& an, size_t i, size_t begin, size_t end, Cx eta) {
  const CausticCurve& c = an.caustics[i];
  const CriticalCurve& curve = an.critical.curves[i];
  std::vector<double> t;
  std::vector<Cx> w;
  t.reserve(end - begin + 1);
  w.reserve(end - begin + 1);
  for (size_t k = 0; k <= end; ++k) {
    t.push_back(k >= begin ? c.samples[k].t : 0.0);
    w.push_back(k >= begin ? c.samples[k].w : Cx{});
  }
  const CurveEval eval = [&](double tt) { return evaluate(an.f, curve_point(an.field, curve, tt)); };
  return angle_change(t, w, begin, end, eta, eval, value_scale(an));
}

}  // namespace

int caustic_winding(const MapAnalysis& an, size_t i, Cx eta) {
  const CausticCurve& c = an.caustics.at(i);
  return round_turns(arc_angle(an, i, 0, c.samples.size() - 1, eta));
}

namespace {

void require_ok(const MapAnalysis& an) {
  if (!an.degeneracy.ok) {
    std::string why = an.degeneracy.violations.empty() ? "degenerate map" : an.degeneracy.violations.front();
    throw Error(ErrorCode::DegenerateMap, why);
  }
}

void require_off_caustic(const MapAnalysis& an, Cx eta, double d) {
  if (d <= an.margin) {
    std::ostringstream os;
    os.precision(6);
    os << "eta " << eta.real() << (eta.imag() < 0 ? "" : "+") << eta.imag() << "i is " << d
       << " from the caustics (margin " << an.margin << ")";
    throw Error(ErrorCode::EtaOnCaustic, os.str());
  }
}

}  // namespace

CountReport count_preimages(const MapAnalysis& an, Cx eta) {
  require_ok(an);
  CountReport r;
  r.eta = eta;
  r.clearance = critical_value_distance(an, eta);
  require_off_caustic(an, eta, r.clearance);
  for (size_t i = 0; i < an.caustics.size(); ++i)
    r.windings.push_back({an.critical.curves[i].component_id, caustic_winding(an, i, eta)});
  r.P = an.P;
  r.ind_infinity = infinity_index(an, eta);
  r.N = 2 * r.winding_sum() + r.P - r.ind_infinity;
  r.route = CountRoute::formula;
  return r;
}

// ---------------------------------------------------------------- regions

int RegionMap::locate(Cx z) const {
  const double fi = std::floor((z.real() - x0) / h), fj = std::floor((z.imag() - y0) / h);
  for (const auto& c : components)
    if (c.is_unbounded && !(fi >= 0 && fj >= 0 && fi < nx && fj < ny)) return c.id;
  if (!(fi >= 0 && fj >= 0 && fi < nx && fj < ny)) return -1;
  return label[static_cast<size_t>(fj) * nx + static_cast<size_t>(fi)];
}

RegionMap region_components(const MapAnalysis& an, int grid) {
  require_ok(an);
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto grow = [&](Cx z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (const auto& c : an.critical.curves)
    for (const auto& s : c.samples) grow(s.z);
  for (const auto& m : an.critical.isolated) grow(m.z);
  for (const Cx& p : an.f.singular_points()) grow(p);
  if (xmin > xmax) grow(0.0);
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-3 * critical_radius(an)});
  const double pad = 0.2 * span;
  const double h = (span + 2 * pad) / grid;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  detail::Grid g(cx - 0.5 * grid * h, cy - 0.5 * grid * h, h, grid, grid);
  for (const auto& c : an.critical.curves) {
    std::vector<Cx> pts;
    for (const auto& s : c.samples) pts.push_back(s.z);
    g.mark_polyline(pts, h);
  }
  const int n = g.label_components();
  const std::vector<float> clear = g.clearance();

  RegionMap rm;
  rm.x0 = cx - 0.5 * grid * h;
  rm.y0 = cy - 0.5 * grid * h;
  rm.h = h;
  rm.nx = rm.ny = grid;
  rm.label = g.label();
  rm.components.resize(n);
  std::vector<float> best(n, -1);
  for (size_t k = 0; k < g.size(); ++k) {
    const int l = rm.label[k];
    if (l >= 0 && clear[k] > best[l]) {
      best[l] = clear[k];
      rm.components[l].interior = g.center(k);
    }
  }
  const int outer = rm.label[0];
  for (int l = 0; l < n; ++l) {
    RegionComponent& A = rm.components[l];
    A.id = l;
    A.is_unbounded = l == outer;
    double J = 0;
    try {
      J = jacobian(an.f, A.interior);
    } catch (const Error&) {
      J = jacobian(an.f, A.interior + 0.25 * h);
    }
    A.sense = J >= 0 ? Sense::preserving : Sense::reversing;
  }
  for (const auto& r : an.poles) {
    const int l = g.label_near(r.location, 4);
    if (l < 0) continue;
    rm.components[l].poles.push_back(r.location);
    rm.components[l].P += std::abs(r.index);
  }

  // left and right neighbours of every arc, by majority over a few probes
  for (size_t ci = 0; ci < an.critical.curves.size(); ++ci) {
    const auto& S = an.critical.curves[ci].samples;
    std::vector<size_t> cuts;
    for (size_t k = 0; k < S.size(); ++k)
      if (S[k].at_vertex) cuts.push_back(k);
    std::vector<std::pair<size_t, size_t>> arcs;
    if (cuts.empty()) arcs.push_back({0, S.size() - 1});
    for (size_t k = 0; k + 1 < cuts.size(); ++k) arcs.push_back({cuts[k], cuts[k + 1]});
    for (const auto& [b, e] : arcs) {
      std::map<int, int> left, right;
      const size_t len = e - b;
      for (int q = 1; q <= 9; ++q) {
        const size_t k = b + std::max<size_t>(1, std::min(len - 1, len * q / 10));
        if (k <= b || k >= e || S[k].at_vertex) continue;
        const Cx tg = an.field.tangent(S[k].z);
        if (!(std::abs(tg) > 0) || !std::isfinite(std::abs(tg))) continue;
        const Cx nrm = Cx(0, 1) * tg / std::abs(tg);
        const int l = g.label_near(S[k].z + 3 * h * nrm, 1);
        const int r = g.label_near(S[k].z - 3 * h * nrm, 1);
        if (l >= 0) ++left[l];
        if (r >= 0) ++right[r];
      }
      auto vote = [](const std::map<int, int>& m) {
        int best_l = -1, c = 0;
        for (const auto& [l, k] : m)
          if (k > c) {
            c = k;
            best_l = l;
          }
        return best_l;
      };
      const ArcRef ref{static_cast<int>(ci), b, e};
      for (int side : {vote(left), vote(right)}) {
        if (side < 0) throw Error(ErrorCode::InvalidInput, "could not place a critical arc between regions");
        RegionComponent& A = rm.components[side];
        A.boundary.push_back(ref);
        if (std::find(A.boundary_curve_ids.begin(), A.boundary_curve_ids.end(), static_cast<int>(ci)) ==
            A.boundary_curve_ids.end())
          A.boundary_curve_ids.push_back(static_cast<int>(ci));
      }
    }
  }
  return rm;
}

int count_in_component(const MapAnalysis& an, const RegionComponent& A, Cx eta) {
  require_ok(an);
  double total = 0;
  for (const auto& arc : A.boundary) {
    const auto& S = an.caustics[arc.curve].samples;
    double d = std::numeric_limits<double>::infinity();
    for (size_t k = arc.begin; k <= arc.end; ++k) d = std::min(d, std::abs(S[k].w - eta));
    if (d <= an.margin) throw Error(ErrorCode::EtaOnBoundaryImage, "eta lies on the image of the boundary");
    total += arc_angle(an, arc.curve, arc.begin, arc.end, eta);
  }
  int n = round_turns(total) + A.P;
  if (A.is_unbounded) n -= infinity_index(an, eta);
  return n;
}

int relative_count(const MapAnalysis& an, Cx eta1, Cx eta2, int N1) {
  require_ok(an);
  require_off_caustic(an, eta1, critical_value_distance(an, eta1));
  require_off_caustic(an, eta2, critical_value_distance(an, eta2));
  if (an.limit_at_infinity && std::abs(eta2 - eta1) >= std::abs(*an.limit_at_infinity - eta1))
    throw Error(ErrorCode::InvalidInput, "eta2 is too far from eta1 for the limit of f at infinity");
  int d = 0;
  for (size_t i = 0; i < an.caustics.size(); ++i) d += caustic_winding(an, i, eta2) - caustic_winding(an, i, eta1);
  return N1 + 2 * d;
}

Localization large_eta_localization(const MapAnalysis& an, Cx eta, double eps) {
  require_ok(an);
  if (!(eps > 0)) throw Error(ErrorCode::InvalidInput, "eps must be positive");
  Localization loc;
  const auto& sing = an.f.singular_points();
  for (size_t i = 0; i < sing.size(); ++i) {
    for (size_t j = i + 1; j < sing.size(); ++j)
      if (std::abs(sing[i] - sing[j]) <= 2 * eps) throw Error(ErrorCode::InvalidInput, "eps-disks around poles overlap");
    if (std::abs(sing[i]) + eps >= 1.0 / eps) throw Error(ErrorCode::InvalidInput, "eps-disk reaches the region at infinity");
  }
  constexpr int kRing = 256;
  double thr = 0;
  auto ring = [&](Cx c, double r) {
    int pos = 0, neg = 0;
    for (int k = 0; k < kRing; ++k) {
      const Cx z = c + std::polar(r, kTwoPi * k / kRing);
      thr = std::max(thr, std::abs(evaluate(an.f, z)));
      (jacobian(an.f, z) >= 0 ? pos : neg)++;
    }
    if (pos && neg) throw Error(ErrorCode::InvalidInput, "a boundary circle crosses the critical set");
  };
  for (const Cx& p : sing) ring(p, eps);
  ring(0.0, 1.0 / eps);
  loc.threshold = thr;
  if (std::abs(eta) <= thr) {
    std::ostringstream os;
    os << "|eta| must exceed " << thr;
    throw Error(ErrorCode::EtaTooSmall, os.str());
  }
  for (const auto& r : an.poles)
    loc.regions.push_back({LocalizedCount::Kind::pole_disk, r.location, eps, std::abs(r.index)});
  loc.regions.push_back({LocalizedCount::Kind::infinity, 0.0, 1.0 / eps, -infinity_index(an, eta)});
  loc.regions.push_back({LocalizedCount::Kind::elsewhere, 0.0, 0.0, 0});
  return loc;
}

}  // namespace harmonic
