#include "harmonic/caustic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "harmonic/error.hpp"

namespace harmonic {

namespace {

Cx image(const HarmonicMap& f, Cx z) {
  try {
    return evaluate(f, z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AtSingularity) throw Error(ErrorCode::SingularSample, "critical sample at a singular point");
    throw;
  }
}

double segment_distance(Cx p, Cx a, Cx b) {
  const Cx d = b - a;
  const double n = std::norm(d);
  double u = n > 0 ? std::real(std::conj(d) * (p - a)) / n : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return std::abs(p - (a + u * d));
}

int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

void caustic_tangent(const HarmonicMap& f, const CurveField& field, Cx z, double t, Cx& tau, double& psi) {
  const Cx gp = field.tangent(z);
  const Cx a = f.analytic_derivative()(z);
  const Cx b = f.coanalytic_derivative()(z);
  const Cx ag = a * gp;
  tau = ag + std::conj(b * gp);
  psi = 2.0 * std::real(std::polar(1.0, 0.5 * t) * ag);
}

CausticSample caustic_point(const HarmonicMap& f, const CurveField& field, const CriticalCurve& curve, double t) {
  CausticSample s;
  s.t = t;
  s.z = curve_point(field, curve, t);
  s.w = image(f, s.z);
  caustic_tangent(f, field, s.z, t, s.tau, s.psi);
  return s;
}

namespace {

double cusp_condition(const HarmonicMap& f, Cx z0) {
  const Cx a1 = f.analytic_derivative()(z0);
  const Cx b1 = f.coanalytic_derivative()(z0);
  if (std::abs(a1) == 0 || std::abs(b1) == 0) return std::numeric_limits<double>::infinity();
  const Cx a2 = 0.5 * f.analytic_derivative().derivative()(z0);
  const Cx b2 = 0.5 * f.coanalytic_derivative().derivative()(z0);
  double theta = 0.5 * std::arg(std::conj(b1) / a1);
  if (theta < 0) theta += kPi;
  const Cx e = std::polar(1.0, theta);
  const Cx x = a2 / a1 * e + std::conj(b2 / b1 * e);
  const double s = std::abs(a2 / a1) + std::abs(b2 / b1);
  return s > 0 ? std::imag(x) / s : 0.0;
}

}  // namespace

void refine_for_caustic(const HarmonicMap& f, const CurveField& field, CriticalCurve& curve,
                        const CausticOptions& opt) {
  BoundingBox box;
  box.xmin = box.ymin = std::numeric_limits<double>::infinity();
  box.xmax = box.ymax = -box.xmin;
  for (const auto& s : curve.samples) {
    const Cx w = image(f, s.z);
    box.xmin = std::min(box.xmin, w.real());
    box.xmax = std::max(box.xmax, w.real());
    box.ymin = std::min(box.ymin, w.imag());
    box.ymax = std::max(box.ymax, w.imag());
  }
  const double lim = opt.max_dw * std::max(box.diagonal(), 1e-12);
  refine_curve(
      field, curve,
      [&](const CurveSample& a, const CurveSample& b) {
        return b.t - a.t > opt.max_dt || std::abs(image(f, b.z) - image(f, a.z)) > lim;
      },
      opt.max_rounds);
}

CausticCurve caustic_from_curve(const HarmonicMap& f, const CurveField& field, const CriticalCurve& curve0,
                                const CausticOptions& opt) {
  CriticalCurve curve = curve0;
  refine_for_caustic(f, field, curve, opt);

  CausticCurve c;
  c.source = curve.component_id;
  c.samples.reserve(curve.samples.size());
  for (const auto& s : curve.samples) {
    CausticSample x;
    x.t = s.t;
    x.z = s.z;
    x.w = image(f, s.z);
    x.at_vertex = s.at_vertex;
    if (!s.at_vertex) caustic_tangent(f, field, s.z, s.t, x.tau, x.psi);
    c.samples.push_back(x);
  }

  double spread = 0, psimax = 0;
  for (const auto& s : c.samples) {
    spread = std::max(spread, std::abs(s.w - c.samples.front().w));
    if (!s.at_vertex) psimax = std::max(psimax, std::abs(s.psi));
  }
  c.degenerate = spread <= 1e-10 * rel_scale(c.samples.front().w);
  if (c.degenerate) return c;

  const auto& S = c.samples;
  for (size_t i = 0; i + 1 < S.size(); ++i) {
    if (S[i].at_vertex || S[i + 1].at_vertex) continue;
    if (sgn(S[i].psi) * sgn(S[i + 1].psi) >= 0) continue;
    if (S[i].psi == 0 && i > 0) continue;
    double lo = S[i].t, hi = S[i + 1].t;
    const int slo = sgn(S[i].psi);
    while (hi - lo > opt.cusp_t_tol) {
      const double mid = 0.5 * (lo + hi);
      const CausticSample m = caustic_point(f, field, curve, mid);
      if (sgn(m.psi) == slo) lo = mid;
      else hi = mid;
    }
    const CausticSample m = caustic_point(f, field, curve, 0.5 * (lo + hi));
    c.cusps.push_back({m.t, m.z, m.w, cusp_condition(f, m.z)});
  }
  // a closing sample repeats the first one, so a cusp exactly at the seam is seen once
  for (size_t i = 1; i + 1 < S.size(); ++i) {
    if (S[i - 1].at_vertex || S[i].at_vertex || S[i + 1].at_vertex) continue;
    const double a = std::abs(S[i].psi);
    if (a <= 1e-6 * psimax && a <= std::abs(S[i - 1].psi) && a <= std::abs(S[i + 1].psi) &&
        sgn(S[i - 1].psi) == sgn(S[i + 1].psi) && sgn(S[i - 1].psi) != 0)
      c.second_kind.push_back(S[i].t);
  }
  return c;
}

std::vector<CausticCurve> caustics(const HarmonicMap& f, const CriticalSet& cs, const CausticOptions& opt) {
  std::vector<CausticCurve> out;
  if (cs.curves.empty()) return out;
  CurveField field(f);
  field.set_scale(cs.scale);
  for (const auto& c : cs.curves) out.push_back(caustic_from_curve(f, field, c, opt));
  return out;
}

std::vector<CuspPoint> cusp_points(const CausticCurve& c) { return c.cusps; }

CurvatureReport curvature_check(const HarmonicMap& f, const CurveField& field, const CriticalCurve& curve,
                                const CausticCurve& c, double h, double psi_floor) {
  CurvatureReport rep;
  if (c.degenerate) return rep;
  std::vector<double> vt;
  for (const auto& s : c.samples)
    if (s.at_vertex) vt.push_back(s.t);
  for (const auto& cp : c.cusps) vt.push_back(cp.t);
  const double t0 = curve.samples.front().t, span = curve.t_span();
  auto wrap = [&](double t) {
    if (span <= 0) return t;
    while (t < t0) t += span;
    while (t > t0 + span) t -= span;
    return t;
  };
  auto near_special = [&](double t) {
    for (double v : vt) {
      const double d = std::remainder(t - v, span > 0 ? span : kTwoPi);
      if (std::abs(d) <= 2 * h) return true;
    }
    return false;
  };
  for (size_t i = 0; i + 1 < c.samples.size(); ++i) {
    const auto& s = c.samples[i];
    if (s.at_vertex || std::abs(s.psi) < psi_floor || near_special(s.t)) {
      ++rep.excluded;
      continue;
    }
    const CausticSample p = caustic_point(f, field, curve, wrap(s.t + h));
    const CausticSample m = caustic_point(f, field, curve, wrap(s.t - h));
    if (std::abs(p.psi) < psi_floor || std::abs(m.psi) < psi_floor || sgn(p.psi) != sgn(s.psi) ||
        sgn(m.psi) != sgn(s.psi)) {
      ++rep.excluded;
      continue;
    }
    const double d = std::arg(p.tau / m.tau) / (2 * h);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(d + 0.5));
    ++rep.checked;
  }
  return rep;
}

std::vector<Cx> polyline(const CausticCurve& c) {
  std::vector<Cx> p;
  p.reserve(c.samples.size());
  for (const auto& s : c.samples) p.push_back(s.w);
  return p;
}

double BoundingBox::diagonal() const { return empty() ? 0.0 : std::hypot(xmax - xmin, ymax - ymin); }

BoundingBox caustic_box(const std::vector<CausticCurve>& cs) {
  BoundingBox b;
  b.xmin = b.ymin = std::numeric_limits<double>::infinity();
  b.xmax = b.ymax = -b.xmin;
  for (const auto& c : cs)
    for (const auto& s : c.samples) {
      b.xmin = std::min(b.xmin, s.w.real());
      b.xmax = std::max(b.xmax, s.w.real());
      b.ymin = std::min(b.ymin, s.w.imag());
      b.ymax = std::max(b.ymax, s.w.imag());
    }
  return b;
}

double caustic_distance(const std::vector<CausticCurve>& cs, Cx eta) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : cs) {
    const auto& S = c.samples;
    if (S.size() == 1) d = std::min(d, std::abs(S[0].w - eta));
    for (size_t i = 0; i + 1 < S.size(); ++i) d = std::min(d, segment_distance(eta, S[i].w, S[i + 1].w));
  }
  return d;
}

int crossing_delta(const CausticCurve& c, Cx eta1, Cx eta2) {
  if (eta1 == eta2) return 0;
  const Cx d = eta2 - eta1;
  const auto& S = c.samples;
  int hits = 0;
  Cx tau;
  for (size_t i = 0; i + 1 < S.size(); ++i) {
    const Cx p = S[i].w, q = S[i + 1].w;
    const Cx e = q - p;
    const double den = std::imag(std::conj(d) * e);
    if (den == 0) continue;
    // eta1 + u d = p + v e
    const Cx r = p - eta1;
    const double u = std::imag(std::conj(r) * e) / den;
    const double v = std::imag(std::conj(r) * d) / den;
    if (u < 0 || u > 1 || v < 0 || v >= 1) continue;
    ++hits;
    if (S[i].at_vertex || S[i + 1].at_vertex) tau = e;
    else tau = (1 - v) * S[i].tau + v * S[i + 1].tau;
    if (std::real(std::conj(tau) * e) <= 0) tau = e;
  }
  if (hits == 0) return 0;
  if (hits > 1) throw Error(ErrorCode::MultipleCrossings, "segment crosses the caustic more than once");
  const double s = std::imag(std::conj(d) * tau) / (std::abs(d) * std::abs(tau));
  if (std::abs(s) < 1e-3) throw Error(ErrorCode::TangentialCrossing, "segment meets the caustic tangentially");
  // moving to the left of the caustic direction raises the winding number
  return s < 0 ? 1 : -1;
}

}  // namespace harmonic
