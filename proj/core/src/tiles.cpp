#include "harmonic/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "grid.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/error.hpp"

namespace harmonic {

const char* to_string(TileShape s) {
  switch (s) {
    case TileShape::deltoid_like: return "deltoid_like";
    case TileShape::cardioid_like: return "cardioid_like";
    case TileShape::mixed: return "mixed";
    case TileShape::outer: return "outer";
  }
  return "?";
}

namespace {

bool segments_cross(Cx p, Cx q, Cx a, Cx b) {
  auto cross = [](Cx u, Cx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(q - p, a - p), d2 = cross(q - p, b - p);
  const double d3 = cross(b - a, p - a), d4 = cross(b - a, q - a);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

struct Pass {
  std::vector<CausticTile> tiles;
  std::set<std::vector<int>> vectors;
  int dropped = 0;
};

Pass run_pass(const MapAnalysis& an, int n) {
  const BoundingBox& b = an.box;
  const double w = std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1e-6 * std::max(1.0, b.diagonal())});
  const double side = 1.5 * w;
  const double h = side / n;
  const double x0 = 0.5 * (b.xmin + b.xmax) - 0.5 * side, y0 = 0.5 * (b.ymin + b.ymax) - 0.5 * side;
  detail::Grid g(x0, y0, h, n, n);
  const size_t m = an.caustics.size();

  // winding vectors by counting signed crossings of the ray to the right
  std::vector<int> vid(g.size());
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<std::pair<double, int>>> cross(m);
  std::vector<int> wv(m);
  for (int j = 0; j < n; ++j) {
    const double y = g.center(0, j).imag();
    for (size_t c = 0; c < m; ++c) {
      cross[c].clear();
      const auto& S = an.caustics[c].samples;
      for (size_t k = 0; k + 1 < S.size(); ++k) {
        const Cx p = S[k].w, q = S[k + 1].w;
        const bool up = p.imag() <= y && y < q.imag();
        const bool down = q.imag() <= y && y < p.imag();
        if (!up && !down) continue;
        const double x = p.real() + (y - p.imag()) / (q.imag() - p.imag()) * (q.real() - p.real());
        cross[c].push_back({x, up ? 1 : -1});
      }
      std::sort(cross[c].begin(), cross[c].end());
    }
    std::vector<size_t> ptr(m);
    for (size_t c = 0; c < m; ++c) {
      ptr[c] = cross[c].size();
      wv[c] = 0;
    }
    for (int i = n - 1; i >= 0; --i) {
      const double x = g.center(i, j).real();
      for (size_t c = 0; c < m; ++c)
        while (ptr[c] > 0 && cross[c][ptr[c] - 1].first > x) wv[c] += cross[c][--ptr[c]].second;
      auto [it, fresh] = ids.try_emplace(wv, static_cast<int>(ids.size()));
      (void)fresh;
      vid[g.index(i, j)] = it->second;
    }
  }

  for (const auto& c : an.caustics) g.mark_polyline(polyline(c), h);
  // images of isolated critical points are critical values too
  for (const Cx& w : an.isolated_images) g.mark_point(w, h);
  const int ncomp = g.label_components([&](size_t a, size_t c) { return vid[a] == vid[c]; });
  const std::vector<float> clear = g.clearance();
  const auto& label = g.label();
  std::vector<float> best(ncomp, -1);
  std::vector<size_t> at(ncomp, 0);
  for (size_t k = 0; k < g.size(); ++k) {
    const int l = label[k];
    if (l >= 0 && clear[k] > best[l]) {
      best[l] = clear[k];
      at[l] = k;
    }
  }

  // cusp tips pinched off by the walls: thin pieces whose winding vector a
  // wider tile already carries
  constexpr float kSliver = 3;
  std::map<int, float> widest;
  for (int l = 0; l < ncomp; ++l) widest[vid[at[l]]] = std::max(widest[vid[at[l]]], best[l]);

  Pass out;
  std::vector<int> tile_of(ncomp, -1);
  const int outer = label[0];
  for (int l = 0; l < ncomp; ++l) {
    if (l != outer && best[l] < kSliver && widest[vid[at[l]]] >= kSliver) {
      ++out.dropped;
      continue;
    }
    const Cx rep = g.center(at[l]);
    const double d = critical_value_distance(an, rep);
    if (d <= an.margin) {
      ++out.dropped;
      continue;
    }
    CausticTile t;
    t.id = static_cast<int>(out.tiles.size());
    t.representative = rep;
    t.clearance = d;
    const CountReport r = count_preimages(an, rep);
    for (const auto& e : r.windings) t.winding_vector.push_back(e.winding);
    t.preimage_count = r.N;
    tile_of[l] = t.id;
    if (l == outer) t.shape = TileShape::outer;
    out.vectors.insert(t.winding_vector);
    out.tiles.push_back(std::move(t));
  }

  // neighbours: probe both sides of every caustic segment; a probe that
  // meets more strands than its core does (tapering cusp tips) says nothing
  std::vector<std::pair<Cx, Cx>> segs;
  double longest = 0;
  for (const auto& c : an.caustics)
    for (size_t k = 0; k + 1 < c.samples.size(); ++k) {
      segs.push_back({c.samples[k].w, c.samples[k + 1].w});
      longest = std::max(longest, std::abs(c.samples[k + 1].w - c.samples[k].w));
    }
  const double cell = std::max(8 * h, longest);
  auto key = [&](Cx z) { return std::make_pair(static_cast<long>(std::floor(z.real() / cell)), static_cast<long>(std::floor(z.imag() / cell))); };
  std::map<std::pair<long, long>, std::vector<size_t>> bucket;
  for (size_t k = 0; k < segs.size(); ++k) bucket[key(0.5 * (segs[k].first + segs[k].second))].push_back(k);
  // strands met by [p, q]; -1 if one of them is not parallel to dir (a
  // transverse self-crossing rather than a doubled arc)
  auto crossings = [&](Cx p, Cx q, Cx dir) {
    const auto [kx, ky] = key(0.5 * (p + q));
    int n = 0;
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        const auto it = bucket.find({kx + dx, ky + dy});
        if (it == bucket.end()) continue;
        for (size_t k : it->second) {
          if (!segments_cross(p, q, segs[k].first, segs[k].second)) continue;
          const Cx e = segs[k].second - segs[k].first;
          if (std::abs((std::conj(dir) * e).imag()) > 0.1 * std::abs(e)) return -1;
          ++n;
        }
      }
    return n;
  };

  std::map<std::pair<int, int>, int> seen;
  for (const auto& c : an.caustics) {
    const auto& S = c.samples;
    for (size_t k = 0; k + 1 < S.size(); ++k) {
      const Cx d = S[k + 1].w - S[k].w;
      if (std::abs(d) == 0) continue;
      const Cx mid = 0.5 * (S[k].w + S[k + 1].w);
      const Cx nrm = Cx(0, 1) * d / std::abs(d);
      const Cx dir = d / std::abs(d);
      const int near = crossings(mid + 0.5 * h * nrm, mid - 0.5 * h * nrm, dir);
      const long ca = g.locate(mid + 2.5 * h * nrm), cb = g.locate(mid - 2.5 * h * nrm);
      if (near <= 0 || ca < 0 || cb < 0) continue;
      // the cells that get looked up, not the probe ends
      if (crossings(g.center(static_cast<size_t>(ca)), g.center(static_cast<size_t>(cb)), dir) != near) continue;
      const int a = g.label()[ca], bb = g.label()[cb];
      if (a < 0 || bb < 0) continue;
      const int ta = tile_of[a], tb = tile_of[bb];
      if (ta < 0 || tb < 0 || ta == tb) continue;
      ++seen[{std::min(ta, tb), std::max(ta, tb)}];
    }
  }
  for (const auto& [p, k] : seen) {
    if (k < 2) continue;
    out.tiles[p.first].neighbors.push_back(p.second);
    out.tiles[p.second].neighbors.push_back(p.first);
  }
  for (auto& t : out.tiles) {
    std::sort(t.neighbors.begin(), t.neighbors.end());
    if (t.shape == TileShape::outer) continue;
    bool lower = !t.neighbors.empty(), higher = !t.neighbors.empty();
    for (int q : t.neighbors) {
      const int c = out.tiles[q].preimage_count;
      lower = lower && c < t.preimage_count;
      higher = higher && c > t.preimage_count;
    }
    t.shape = lower ? TileShape::deltoid_like : higher ? TileShape::cardioid_like : TileShape::mixed;
  }
  return out;
}

}  // namespace

TileReport tile_decomposition(const MapAnalysis& an, const TileOptions& opt) {
  if (!an.degeneracy.ok) throw Error(ErrorCode::DegenerateMap, "tiles need a non-degenerate map");
  TileReport rep;
  if (an.caustics.empty()) {
    CausticTile t;
    t.shape = TileShape::outer;
    t.representative = an.isolated_images.empty() ? Cx{} : an.isolated_images.front() + 1.0;
    t.clearance = critical_value_distance(an, t.representative);
    t.preimage_count = count_preimages(an, t.representative).N;
    rep.tiles.push_back(t);
    return rep;
  }
  // thin tiles near cusps only show up on fine rasters, so a winding vector
  // set has to survive two refinements before it is trusted
  Pass prev;
  int same = 0;
  for (int n = opt.initial_grid;; n *= opt.refine_factor) {
    Pass cur = run_pass(an, n);
    rep.grid = n;
    same = n > opt.initial_grid && cur.vectors == prev.vectors ? same + 1 : 0;
    prev = std::move(cur);
    if (same >= 2 || n * opt.refine_factor > opt.max_grid) break;
  }
  rep.tiles = std::move(prev.tiles);
  rep.dropped = prev.dropped;
  if (rep.tiles.empty()) throw Error(ErrorCode::TooClose, "no tile has room for a representative");
  return rep;
}

}  // namespace harmonic
