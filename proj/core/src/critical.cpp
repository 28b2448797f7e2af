#include "harmonic/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "harmonic/error.hpp"

namespace harmonic {

namespace {

// Offset keeps probe phases away from the symmetric phases (+-1, +-i) where
// vertices of the catalog maps sit.
constexpr double kPhaseOffset = 0.1234;
constexpr double kLattice = kTwoPi / 8;

double next_lattice(double t) {
  double k = std::floor((t - kPhaseOffset) / kLattice) + 1;
  double tl = kPhaseOffset + k * kLattice;
  if (tl <= t + 1e-12) tl += kLattice;
  return tl;
}

double lift_near(double base, double target) {
  // base + 2 pi k closest to target
  return base + kTwoPi * std::round((target - base) / kTwoPi);
}

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void rebuild_arcs(CriticalCurve& c) {
  c.arcs.clear();
  c.vertex_ids.clear();
  std::vector<size_t> vs;
  for (size_t i = 0; i < c.samples.size(); ++i)
    if (c.samples[i].at_vertex) vs.push_back(i);
  if (vs.empty()) {
    c.arcs.push_back({0, c.samples.size() - 1, -1, -1});
    return;
  }
  for (size_t k = 0; k + 1 < vs.size(); ++k)
    c.arcs.push_back({vs[k], vs[k + 1], c.samples[vs[k]].vertex_id, c.samples[vs[k + 1]].vertex_id});
  for (size_t i : vs) {
    int id = c.samples[i].vertex_id;
    if (std::find(c.vertex_ids.begin(), c.vertex_ids.end(), id) == c.vertex_ids.end()) c.vertex_ids.push_back(id);
  }
}

}  // namespace

// ---------------------------------------------------------------- field

CurveField::CurveField(const HarmonicMap& f) : CurveField(dilatation(f), f.scale()) {}

CurveField::CurveField(RationalFn omega, double scale)
    : omega_(std::move(omega)), domega_(omega_.derivative()), scale_(scale) {}

bool CurveField::correct(Cx& z, double t, double tol, int* iterations) const {
  const Cx target = std::polar(1.0, t);
  Cx w = z;
  for (int it = 0; it < 12; ++it) {
    const RationalValue v = omega_.eval(w);
    if (v.pole) return false;
    const Cx r = v.value - target;
    if (std::abs(r) <= tol) {
      z = w;
      if (iterations) *iterations = it;
      return true;
    }
    const Cx d = domega_(w);
    if (d == Cx{} || !finite(d)) return false;
    w -= r / d;
    if (!finite(w)) return false;
  }
  return false;
}

Cx CurveField::tangent(Cx z) const { return Cx(0, 1) * omega_(z) / domega_(z); }

std::vector<double> probe_phases() {
  std::vector<double> p;
  for (int k = 0; k < 8; ++k) p.push_back(kPhaseOffset + k * kLattice);
  return p;
}

// ---------------------------------------------------------------- seeds, vertices

std::vector<Seed> critical_seeds(const CurveField& field) {
  const RationalFn& w = field.omega();
  if (w.is_zero()) return {};
  if (w.num().degree() == 0 && w.den().degree() == 0) {
    if (std::abs(std::abs(w.num()[0]) - 1.0) <= 1e-12)
      throw Error(ErrorCode::DegenerateDilatation, "dilatation is a unimodular constant");
    return {};
  }
  std::vector<Seed> out;
  for (double phi : probe_phases()) {
    const Poly p = w.num() - std::polar(1.0, phi) * w.den();
    if (p.degree() < 1) continue;
    for (const Cx& r : poly_roots(p)) {
      Cx z = r;
      if (!field.correct(z, phi, 1e-12)) continue;
      bool dup = false;
      for (const auto& s : out)
        if (std::abs(s.z - z) <= 1e-9 * rel_scale(z)) dup = true;
      if (!dup) out.push_back({z, phi});
    }
  }
  return out;
}

std::vector<Seed> critical_seeds(const HarmonicMap& f) { return critical_seeds(CurveField(f)); }

std::vector<Vertex> find_vertices(const CurveField& field) {
  std::vector<Vertex> out;
  const Poly& n = field.domega().num();
  if (n.degree() < 1) return out;
  for (const auto& c : cluster_roots(n, poly_roots(n))) {
    const RationalValue v = field.omega().eval(c.root);
    if (v.pole || std::abs(std::abs(v.value) - 1.0) > 1e-6) continue;
    Vertex vx;
    vx.z = c.root;
    vx.branching = c.multiplicity + 1;
    vx.t = std::arg(v.value);
    vx.cn = laurent_coeffs(field.omega(), c.root, 0, vx.branching)[vx.branching];
    out.push_back(vx);
  }
  return out;
}

// ---------------------------------------------------------------- walking

namespace {

enum class Stop { closed, vertex };

struct Walk {
  const CurveField& F;
  const TraceOptions& opt;
  const std::vector<Vertex>& V;
  double L;
  std::vector<double> arrive;  // per vertex: an arc heading at it inside this radius snaps onto it

  std::pair<double, int> nearest_vertex(Cx z) const {
    double d = std::numeric_limits<double>::infinity();
    int idx = -1;
    for (size_t i = 0; i < V.size(); ++i) {
      double di = std::abs(z - V[i].z);
      if (di < d) {
        d = di;
        idx = static_cast<int>(i);
      }
    }
    return {d, idx};
  }

  // Follows the curve from (z, t) in increasing t. In closed mode, stops when
  // returning to (z0, t0 mod 2 pi); otherwise stops on reaching a vertex.
  // Returns the stop kind and the vertex index reached (if any).
  std::pair<Stop, int> run(Cx z, double t, std::vector<CurveSample>& out, bool closed_mode, int skip_vertex) {
    const Cx z0 = z;
    const double t0 = t;
    double h = std::min(opt.h_max, 0.02);
    long steps = 0;
    while (true) {
      if (++steps > opt.max_steps) throw Error(ErrorCode::MaxSteps, "critical curve tracing exceeded the step limit");
      const auto [dv, vi] = nearest_vertex(z);
      if (!closed_mode && vi >= 0 && vi < static_cast<int>(arrive.size()) && dv < arrive[vi]) {
        // inside the arrival disc the curve is a straight ray into the vertex,
        // but t moves like dv^n there and steps in t become useless
        const Cx tg = F.tangent(z);
        const Cx to_v = V[vi].z - z;
        if (finite(tg) && std::real(std::conj(tg) * to_v) > 0.99 * std::abs(tg) * dv) {
          const Vertex& v = V[vi];
          out.push_back({lift_near(v.t, t), v.z, true, vi});
          return {Stop::vertex, vi};
        }
      }
      const double tl = next_lattice(t);
      double hh = std::min(h, tl - t);
      const bool to_lattice = hh >= tl - t;

      const Cx k1 = F.tangent(z);
      const Cx k2 = F.tangent(z + 0.5 * hh * k1);
      const Cx k3 = F.tangent(z + 0.5 * hh * k2);
      const Cx k4 = F.tangent(z + hh * k3);
      const Cx dz = (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double cap = std::min(opt.max_dz * L, 0.25 * dv);
      if (!finite(dz) || std::abs(dz) > cap) {
        const double ratio = finite(dz) ? 0.8 * cap / std::abs(dz) : 0.25;
        h = hh * std::min(ratio, 0.5);
        if (h < 1e-14) throw Error(ErrorCode::HitBranchPoint, "step size collapsed while tracing");
        continue;
      }
      const double tn = to_lattice ? tl : t + hh;
      Cx zc = z + dz;
      int its = 0;
      const bool ok = F.correct(zc, tn, opt.corrector_tol, &its);
      if (!ok || std::abs(zc - (z + dz)) > 0.1 * std::abs(dz) + 1e-12 * L) {
        h = hh * 0.5;
        if (h < 1e-14) throw Error(ErrorCode::HitBranchPoint, "corrector failed repeatedly while tracing");
        continue;
      }
      z = zc;
      t = tn;
      out.push_back({t, z, false, -1});
      if (its <= 2 && !to_lattice) h = std::min(h * 1.3, opt.h_max);

      const auto [dv2, vi2] = nearest_vertex(z);
      if (vi2 >= 0 && dv2 < opt.branch_radius * L) {
        if (closed_mode) throw Error(ErrorCode::HitBranchPoint, "Jordan trace ran into a vertex");
        if (vi2 != skip_vertex || t - t0 > 1e-3) {
          const Vertex& v = V[vi2];
          out.push_back({lift_near(v.t, t), v.z, true, vi2});
          return {Stop::vertex, vi2};
        }
      }
      const double near_r = vi2 >= 0 && vi2 < static_cast<int>(arrive.size()) ? 2 * arrive[vi2] : 0.0;
      if (std::abs(F.domega()(z)) * L < 1e-7 && dv2 > std::max(10 * opt.branch_radius * L, near_r))
        throw Error(ErrorCode::HitBranchPoint, "omega' vanishes on the traced curve");
      if (closed_mode && to_lattice && t - t0 > 1.0) {
        const double r = (t - t0) / kTwoPi;
        if (std::abs(r - std::round(r)) < 1e-9 && std::abs(z - z0) <= 1e-8 * L) {
          out.back().t = t0 + kTwoPi * std::round(r);
          out.back().z = z0;
          return {Stop::closed, -1};
        }
      }
    }
  }
};

}  // namespace

CriticalCurve trace_curve(const CurveField& field, const Seed& seed, const TraceOptions& opt,
                          const std::vector<Vertex>& vertices) {
  Cx z = seed.z;
  if (!field.correct(z, seed.t, opt.corrector_tol))
    throw Error(ErrorCode::InvalidInput, "seed does not lie on the critical set");
  if (std::abs(field.domega()(z)) * field.scale() < 1e-7)
    throw Error(ErrorCode::HitBranchPoint, "seed sits on a zero of omega'");
  Walk w{field, opt, vertices, field.scale(), {}};
  CriticalCurve c;
  c.samples.push_back({seed.t, z, false, -1});
  w.run(z, seed.t, c.samples, true, -1);
  rebuild_arcs(c);
  return c;
}

CriticalCurve stitch_component(const std::vector<OpenArc>& arcs, const std::vector<Vertex>& vertices) {
  if (arcs.empty()) throw Error(ErrorCode::InvalidInput, "no arcs to stitch");
  std::map<int, std::vector<size_t>> out_edges;
  std::map<int, int> balance;
  for (size_t i = 0; i < arcs.size(); ++i) {
    out_edges[arcs[i].from].push_back(i);
    balance[arcs[i].from] += 1;
    balance[arcs[i].to] -= 1;
  }
  for (const auto& [v, b] : balance)
    if (b != 0) throw Error(ErrorCode::UnbalancedVertex, "vertex " + std::to_string(v) + " has unequal in/out degree");

  // Hierholzer
  std::map<int, size_t> ptr;
  std::vector<std::pair<int, int>> stack{{arcs[0].from, -1}};
  std::vector<int> circuit;
  while (!stack.empty()) {
    const int v = stack.back().first;
    auto& p = ptr[v];
    auto& edges = out_edges[v];
    if (p < edges.size()) {
      const size_t e = edges[p++];
      stack.push_back({arcs[e].to, static_cast<int>(e)});
    } else {
      if (stack.back().second >= 0) circuit.push_back(stack.back().second);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != arcs.size())
    throw Error(ErrorCode::UnbalancedVertex, "arcs do not form a single connected circuit");

  CriticalCurve c;
  for (int e : circuit) {
    const auto& s = arcs[e].samples;
    double shift = 0;
    if (!c.samples.empty()) {
      shift = kTwoPi * std::round((c.samples.back().t - s.front().t) / kTwoPi);
      c.samples.pop_back();  // shared vertex sample
    }
    for (CurveSample x : s) {
      x.t += shift;
      c.samples.push_back(x);
    }
  }
  (void)vertices;
  rebuild_arcs(c);
  return c;
}

std::vector<IsolatedCriticalPoint> isolated_points(const HarmonicMap& f) {
  std::vector<IsolatedCriticalPoint> out;
  const RationalFn& A = f.analytic_derivative();
  const RationalFn& B = f.coanalytic_derivative();
  if (A.num().degree() < 1) return out;
  const RationalFn w = dilatation(f);
  for (const auto& c : cluster_roots(A.num(), poly_roots(A.num()))) {
    if (std::abs(B.num()(c.root)) > 1e-8 * std::max(1e-300, B.num().abs_eval(c.root)) && !B.is_zero()) continue;
    const RationalValue v = w.eval(c.root);
    const double lim = v.pole ? std::numeric_limits<double>::infinity() : std::abs(v.value);
    if (std::abs(lim - 1.0) <= 1e-6) continue;
    out.push_back({c.root, lim});
  }
  return out;
}

// ---------------------------------------------------------------- refinement

int refine_curve(const CurveField& field, CriticalCurve& curve,
                 const std::function<bool(const CurveSample&, const CurveSample&)>& needs_split, int max_rounds) {
  int inserted = 0;
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<CurveSample> next;
    next.reserve(curve.samples.size() * 2);
    int here = 0;
    for (size_t i = 0; i + 1 < curve.samples.size(); ++i) {
      const CurveSample& a = curve.samples[i];
      const CurveSample& b = curve.samples[i + 1];
      next.push_back(a);
      if (a.at_vertex || b.at_vertex || !needs_split(a, b)) continue;
      const Cx mid = 0.5 * (a.z + b.z);
      Cx z = mid;
      const double tm = 0.5 * (a.t + b.t);
      if (!field.correct(z, tm, 1e-11) || std::abs(z - mid) > 0.5 * std::abs(b.z - a.z)) continue;
      next.push_back({tm, z, false, -1});
      ++here;
    }
    next.push_back(curve.samples.back());
    curve.samples = std::move(next);
    inserted += here;
    if (here == 0) break;
  }
  rebuild_arcs(curve);
  return inserted;
}

Cx curve_point(const CurveField& field, const CriticalCurve& curve, double t) {
  const auto& s = curve.samples;
  auto it = std::lower_bound(s.begin(), s.end(), t, [](const CurveSample& a, double x) { return a.t < x; });
  if (it == s.begin()) return s.front().z;
  if (it == s.end()) return s.back().z;
  const CurveSample& b = *it;
  const CurveSample& a = *(it - 1);
  if (b.t == t) return b.z;
  const double u = (t - a.t) / (b.t - a.t);
  Cx z = a.z + u * (b.z - a.z);
  Cx zc = z;
  if (field.correct(zc, t, 1e-12) && std::abs(zc - z) <= std::abs(b.z - a.z)) return zc;
  return z;
}

// ---------------------------------------------------------------- whole set

CriticalSet critical_set(const HarmonicMap& f, const TraceOptions& opt) {
  CriticalSet cs;
  for (const auto& r : pole_records(f))
    if (r.index == 0 && r.basis.lead >= 0)
      throw Error(ErrorCode::DegenerateMap, "pure logarithmic pole: the critical set accumulates there");
  cs.isolated = isolated_points(f);
  if (f.coanalytic_derivative().is_zero()) return cs;

  CurveField field(f);
  cs.seeds = critical_seeds(field);
  cs.vertices = find_vertices(field);
  double L = f.scale();
  for (const auto& s : cs.seeds) L = std::max(L, std::abs(s.z));
  for (const auto& v : cs.vertices) L = std::max(L, std::abs(v.z));
  field.set_scale(L);
  cs.scale = L;

  Walk walk{field, opt, cs.vertices, L, {}};

  // arcs leaving each vertex
  std::vector<OpenArc> arcs;
  double sep = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < cs.vertices.size(); ++i)
    for (size_t j = i + 1; j < cs.vertices.size(); ++j) sep = std::min(sep, std::abs(cs.vertices[i].z - cs.vertices[j].z));
  // omega moves by |cn| rho^n on the start circle; keep that well above rounding in t
  for (const auto& v : cs.vertices)
    walk.arrive.push_back(std::min(0.1 * sep, std::max(1e-3 * L, std::pow(1e-7 / std::abs(v.cn), 1.0 / v.branching))));
  for (size_t vi = 0; vi < cs.vertices.size(); ++vi) {
    const Vertex& v = cs.vertices[vi];
    const Cx wv = std::polar(1.0, v.t);
    const Cx target = Cx(0, 1) * wv / v.cn;
    const int n = v.branching;
    for (int k = 0; k < n; ++k) {
      const Cx d = std::polar(1.0, (std::arg(target) + kTwoPi * k) / n);
      Cx z = v.z + walk.arrive[vi] * d;
      const double dt = std::arg(field.omega()(z) / wv);
      if (dt <= 0) throw Error(ErrorCode::HitBranchPoint, "outgoing direction at a vertex is inconsistent");
      const double t = v.t + dt;
      if (!field.correct(z, t, opt.corrector_tol))
        throw Error(ErrorCode::HitBranchPoint, "cannot leave vertex along an outgoing direction");
      OpenArc arc;
      arc.from = static_cast<int>(vi);
      arc.samples.push_back({v.t, v.z, true, static_cast<int>(vi)});
      arc.samples.push_back({t, z, false, -1});
      auto [stop, to] = walk.run(z, t, arc.samples, false, static_cast<int>(vi));
      (void)stop;
      arc.to = to;
      arcs.push_back(std::move(arc));
    }
  }

  // group arcs into connected components of the vertex graph
  std::vector<int> parent(cs.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& a : arcs) parent[find(a.from)] = find(a.to);
  std::map<int, std::vector<OpenArc>> groups;
  for (auto& a : arcs) groups[find(a.from)].push_back(std::move(a));
  for (auto& [root, g] : groups) {
    (void)root;
    cs.curves.push_back(stitch_component(g, cs.vertices));
  }

  auto covered = [&](const Seed& s) {
    for (const auto& c : cs.curves)
      for (const auto& x : c.samples) {
        const double r = (x.t - s.t) / kTwoPi;
        if (std::abs(r - std::round(r)) < 1e-9 && std::abs(x.z - s.z) <= 1e-6 * L) return true;
      }
    return false;
  };
  for (const auto& s : cs.seeds) {
    if (covered(s)) continue;
    bool near_vertex = false;
    for (const auto& v : cs.vertices)
      if (std::abs(v.z - s.z) < 1e-6 * L) near_vertex = true;
    if (near_vertex) continue;
    cs.curves.push_back(trace_curve(field, s, opt, cs.vertices));
  }

  // densify
  for (auto& c : cs.curves) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& x : c.samples) {
      xmin = std::min(xmin, x.z.real());
      xmax = std::max(xmax, x.z.real());
      ymin = std::min(ymin, x.z.imag());
      ymax = std::max(ymax, x.z.imag());
    }
    const double diag = std::hypot(xmax - xmin, ymax - ymin);
    const double lim = opt.densify * std::max(diag, 1e-12);
    refine_curve(field, c, [lim](const CurveSample& a, const CurveSample& b) { return std::abs(b.z - a.z) > lim; });
  }
  for (size_t i = 0; i < cs.curves.size(); ++i) cs.curves[i].component_id = static_cast<int>(i);
  return cs;
}

}  // namespace harmonic
