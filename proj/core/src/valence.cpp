#include "harmonic/valence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "harmonic/counting.hpp"
#include "harmonic/error.hpp"
#include "harmonic/oracle.hpp"

namespace harmonic {

Poly hermite_perturbation(Cx z1, Cx z2, double eps) {
  if (std::abs(z1 - z2) <= 1e-14 * std::max({1.0, std::abs(z1), std::abs(z2)}))
    throw Error(ErrorCode::CoincidentPoints, "Hermite data needs two distinct points");
  if (!(eps > 0)) throw Error(ErrorCode::InvalidInput, "eps must be positive");
  // q(u) = eps (u^3 - 3u) / 2 takes eps, -eps at u = -1, 1 with flat ends
  const Poly q{0.0, -1.5 * eps, 0.0, 0.5 * eps};
  const Cx m = 0.5 * (z1 + z2), d = 0.5 * (z2 - z1);
  return q.compose_linear(1.0 / d, -m / d);
}

namespace {

struct Match {
  int a;
  size_t i;
  int b;
  double t2;
  Cx z2;
};

// t in [ta, tb] minimizing |w(t) - w1| on curve b, golden section
double closest_t(const MapAnalysis& an, int b, double ta, double tb, Cx w1, double& dist, Cx& z) {
  const auto& curve = an.critical.curves[b];
  auto eval = [&](double t) {
    try {
      const CausticSample s = caustic_point(an.f, an.field, curve, t);
      return std::make_pair(std::abs(s.w - w1), s.z);
    } catch (const Error&) {
      return std::make_pair(std::numeric_limits<double>::infinity(), Cx{});
    }
  };
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  double x1 = tb - g * (tb - ta), x2 = ta + g * (tb - ta);
  auto f1 = eval(x1), f2 = eval(x2);
  for (int k = 0; k < 60 && tb - ta > 1e-15 * std::max(1.0, std::abs(ta)); ++k) {
    if (f1.first < f2.first) {
      tb = x2;
      x2 = x1;
      f2 = f1;
      x1 = tb - g * (tb - ta);
      f1 = eval(x1);
    } else {
      ta = x1;
      x1 = x2;
      f1 = f2;
      x2 = ta + g * (tb - ta);
      f2 = eval(x2);
    }
  }
  const auto& best = f1.first < f2.first ? f1 : f2;
  dist = best.first;
  z = best.second;
  return f1.first < f2.first ? x1 : x2;
}

}  // namespace

std::vector<MultiplePair> detect_multiple_caustic(const MapAnalysis& an) {
  std::vector<MultiplePair> out;
  const auto& C = an.caustics;
  if (C.empty()) return out;
  const double tol = 1e-6 * std::max(1.0, an.box.diagonal());
  const double sep = 0.05 * critical_radius(an);

  double cell = tol;
  for (const auto& c : C)
    for (size_t k = 0; k + 1 < c.samples.size(); ++k)
      cell = std::max(cell, std::abs(c.samples[k + 1].w - c.samples[k].w));
  std::map<std::pair<long, long>, std::vector<std::pair<int, size_t>>> hash;
  auto key = [&](Cx w) { return std::make_pair(std::lround(std::floor(w.real() / cell)), std::lround(std::floor(w.imag() / cell))); };
  for (size_t c = 0; c < C.size(); ++c)
    for (size_t k = 0; k + 1 < C[c].samples.size(); ++k) hash[key(C[c].samples[k].w)].push_back({static_cast<int>(c), k});

  std::vector<Match> matches;
  for (size_t a = 0; a < C.size(); ++a) {
    const auto& SA = C[a].samples;
    for (size_t i = 0; i + 1 < SA.size(); ++i) {
      const Cx w1 = SA[i].w;
      const auto [kx, ky] = key(w1);
      std::vector<Match> here;
      for (long dx = -1; dx <= 1; ++dx)
        for (long dy = -1; dy <= 1; ++dy) {
          auto it = hash.find({kx + dx, ky + dy});
          if (it == hash.end()) continue;
          for (const auto& [b, k] : it->second) {
            const auto& SB = C[b].samples;
            if (std::abs(SB[k].z - SA[i].z) <= sep || std::abs(SB[k].w - w1) > 2 * cell) continue;
            bool known = false;
            for (const Match& m : here)
              if (m.b == b && std::abs(m.z2 - SB[k].z) < sep) known = true;
            if (known) continue;
            const size_t lo = k > 0 ? k - 1 : 0, hi = std::min(k + 1, SB.size() - 1);
            double dist = 0;
            Cx z2;
            const double t2 = closest_t(an, b, SB[lo].t, SB[hi].t, w1, dist, z2);
            if (dist > tol || std::abs(z2 - SA[i].z) <= sep) continue;
            here.push_back({static_cast<int>(a), i, b, t2, z2});
          }
        }
      for (const Match& m : here) {
        const bool canonical = m.a < m.b || (m.a == m.b && SA[i].t < m.t2);
        if (canonical) matches.push_back(m);
      }
    }
  }

  // runs of consecutive samples matched to a continuous stretch of the same curve
  std::sort(matches.begin(), matches.end(), [](const Match& x, const Match& y) {
    return std::tie(x.a, x.b, x.i) < std::tie(y.a, y.b, y.i);
  });
  std::vector<bool> used(matches.size(), false);
  for (size_t s = 0; s < matches.size(); ++s) {
    if (used[s]) continue;
    std::vector<size_t> run{s};
    used[s] = true;
    for (size_t q = s + 1; q < matches.size(); ++q) {
      const Match& last = matches[run.back()];
      const Match& m = matches[q];
      if (m.a != last.a || m.b != last.b) break;
      if (used[q] || m.i == last.i) continue;
      if (m.i > last.i + 2) break;
      if (std::abs(m.z2 - last.z2) > sep) continue;
      run.push_back(q);
      used[q] = true;
    }
    // coinciding arcs rather than a tangency or a crossing: the matched
    // stretch must be long in the image plane
    double length = 0;
    for (size_t q = 1; q < run.size(); ++q)
      length += std::abs(C[matches[run[q]].a].samples[matches[run[q]].i].w -
                         C[matches[run[q - 1]].a].samples[matches[run[q - 1]].i].w);
    if (run.size() < 3 || length < 1e-2 * std::max(1.0, an.box.diagonal())) continue;
    const Match& r = matches[run[run.size() / 2]];
    const auto& sa = C[r.a].samples[r.i];
    MultiplePair p;
    p.z1 = sa.z;
    p.z2 = r.z2;
    p.w = sa.w;
    p.curve1 = r.a;
    p.curve2 = r.b;
    p.t1 = sa.t;
    p.t2 = r.t2;
    p.run = static_cast<int>(run.size());
    out.push_back(p);
  }
  return out;
}

ValenceScan valence_scan(const MapAnalysis& an, Cx eta_start, Cx eta_end, const ScanOptions& opt) {
  if (!an.degeneracy.ok) throw Error(ErrorCode::DegenerateMap, "scan needs a non-degenerate map");
  if (opt.steps < 1) throw Error(ErrorCode::InvalidInput, "scan needs at least one step");
  ValenceScan scan;
  const double margin = an.margin;
  const double keep = opt.avoid * margin;
  std::vector<Cx> hazards;
  for (const auto& c : an.caustics)
    for (const auto& q : c.cusps) hazards.push_back(q.w);
  for (const auto& m : detect_multiple_caustic(an)) hazards.push_back(m.w);

  const Cx dir = eta_end == eta_start ? Cx(1, 0) : (eta_end - eta_start) / std::abs(eta_end - eta_start);
  const Cx side = Cx(0, 1) * dir;
  auto admissible = [&](Cx eta) {
    if (critical_value_distance(an, eta) <= 2 * margin) return false;
    for (const Cx& w : hazards)
      if (std::abs(w - eta) < keep) return false;
    return true;
  };
  auto place = [&](Cx eta) {
    if (admissible(eta)) return eta;
    for (int j = 1; j <= opt.max_detours; ++j) {
      const Cx e = eta + side * (((j + 1) / 2) * keep * (j % 2 ? 1.0 : -1.0));
      if (admissible(e)) {
        ++scan.detours;
        return e;
      }
    }
    throw Error(ErrorCode::PathBlocked, "no admissible point near the path");
  };
  auto tile_of = [&](const CountReport& r) {
    if (!opt.tiles) return -1;
    std::vector<int> v;
    for (const auto& e : r.windings) v.push_back(e.winding);
    for (const auto& t : opt.tiles->tiles)
      if (t.winding_vector == v) return t.id;
    return -1;
  };
  auto record = [&](Cx eta) {
    const CountReport r = count_preimages(an, eta);
    return ScanRecord{eta, r.N, tile_of(r), false};
  };

  // between two certified records: split until N moves by at most 2, then
  // mark the crossing with the count realized on the fold
  std::function<void(const ScanRecord&, const ScanRecord&, int)> fill = [&](const ScanRecord& p, const ScanRecord& q,
                                                                             int depth) {
    const int dN = q.N - p.N;
    if (dN == 0) return;
    const double len = std::abs(q.eta - p.eta);
    if (std::abs(dN) > 2 && depth < 16 && len > 8 * margin) {
      ScanRecord mid;
      try {
        mid = record(place(0.5 * (p.eta + q.eta)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PathBlocked) throw;
        return;
      }
      fill(p, mid, depth + 1);
      scan.records.push_back(mid);
      scan.achieved_counts.insert(mid.N);
      fill(mid, q, depth + 1);
      return;
    }
    if (std::abs(dN) != 2) return;
    // locate the fold crossing between p and q
    Cx a = p.eta, b = q.eta;
    for (int k = 0; k < 40 && std::abs(b - a) > 4 * margin; ++k) {
      const Cx m = 0.5 * (a + b);
      if (critical_value_distance(an, m) <= margin) break;
      const int n = count_preimages(an, m).N;
      if (n == p.N)
        a = m;
      else if (n == q.N)
        b = m;
      else
        break;
    }
    ScanRecord on{0.5 * (a + b), (p.N + q.N) / 2, -1, true};
    scan.records.push_back(on);
    scan.crossing_counts.insert(on.N);
  };

  ScanRecord prev;
  for (int k = 0; k <= opt.steps; ++k) {
    const Cx eta = place(eta_start + (eta_end - eta_start) * (static_cast<double>(k) / opt.steps));
    scan.path.push_back(eta);
    const ScanRecord cur = record(eta);
    if (k > 0) fill(prev, cur, 0);
    scan.records.push_back(cur);
    scan.achieved_counts.insert(cur.N);
    prev = cur;
  }
  return scan;
}

PerturbationCheck perturbation_check(const HarmonicMap& f, Cx z1, Cx z2, Cx eta, double eps0) {
  PerturbationCheck out;
  out.count_before = brute_force_count(f, eta).count;
  for (double eps = eps0; eps >= 1e-10; eps *= 0.5) {
    ++out.attempts;
    const HarmonicMap g = f.perturbed(hermite_perturbation(z1, z2, eps));
    out.eps = eps;
    out.count_after = brute_force_count(g, eta).count;
    out.separation = std::abs(evaluate(g, z1) - evaluate(g, z2));
    out.holds = out.count_after >= out.count_before && out.separation >= eps;
    if (out.holds) break;
  }
  return out;
}

}  // namespace harmonic
