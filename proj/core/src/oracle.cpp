#include "harmonic/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "harmonic/error.hpp"

namespace harmonic {

namespace {

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double turns(const std::vector<Cx>& v) {
  double s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += std::arg(v[(i + 1) % v.size()] / v[i]);
  return s / kTwoPi;
}

// arg change of f - eta along the circle |z| = R, adaptively sampled
int circle_winding(const HarmonicMap& f, Cx eta, double R, int n) {
  for (int k = 0; k < 6; ++k, n *= 2) {
    std::vector<Cx> v;
    v.reserve(n);
    bool fine = true;
    for (int i = 0; i < n; ++i) v.push_back(evaluate(f, std::polar(R, kTwoPi * (i + 0.5) / n)) - eta);
    for (size_t i = 0; i < v.size() && fine; ++i)
      if (std::abs(std::arg(v[(i + 1) % v.size()] / v[i])) > 0.5 * kPi) fine = false;
    if (fine) return static_cast<int>(std::lround(turns(v)));
  }
  throw Error(ErrorCode::NonInteger, "oracle circle winding did not resolve");
}

double circle_min(const HarmonicMap& f, double R, int n) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) m = std::min(m, std::abs(evaluate(f, std::polar(R, kTwoPi * (i + 0.5) / n))));
  return m;
}

Cx polish(const HarmonicMap& f, Cx z, Cx eta, bool& ok) {
  const double tol = 1e-12 * std::max(1.0, std::abs(eta));
  ok = false;
  try {
    for (int k = 0; k < 30; ++k) {
      const Cx F = evaluate(f, z) - eta;
      if (std::abs(F) < tol) {
        ok = true;
        return z;
      }
      const Wirtinger w = wirtinger(f, z);
      const double J = std::norm(w.dz) - std::norm(w.dzbar);
      if (J == 0) return z;
      z -= (std::conj(w.dz) * F - w.dzbar * std::conj(F)) / J;
      if (!finite(z)) return z;
    }
    ok = std::abs(evaluate(f, z) - eta) < 1e3 * tol;
  } catch (const Error&) {
  }
  return z;
}

struct Cell {
  Cx c;
  double s;  // half-width
};

}  // namespace

int box_winding(const HarmonicMap& f, Cx eta, Cx center, double half, int n) {
  for (int k = 0; k < 6; ++k, n *= 2) {
    std::vector<Cx> v;
    v.reserve(4 * n);
    const Cx corner[4] = {center + Cx(half, -half), center + Cx(half, half), center + Cx(-half, half),
                          center + Cx(-half, -half)};
    for (int side = 0; side < 4; ++side) {
      const Cx a = corner[side], b = corner[(side + 1) % 4];
      for (int i = 0; i < n; ++i) v.push_back(evaluate(f, a + (b - a) * (static_cast<double>(i) / n)) - eta);
    }
    bool fine = true;
    for (size_t i = 0; i < v.size() && fine; ++i)
      if (std::abs(std::arg(v[(i + 1) % v.size()] / v[i])) > 0.5 * kPi) fine = false;
    if (fine) return static_cast<int>(std::lround(turns(v)));
  }
  throw Error(ErrorCode::NonInteger, "oracle box winding did not resolve");
}

OracleResult brute_force_count(const HarmonicMap& f, Cx eta, const OracleOptions& opt) {
  OracleResult res;
  const auto& sing = f.singular_points();
  double scale = 1.0;
  for (const Cx& p : sing) scale = std::max(scale, std::abs(p));
  std::vector<std::pair<Cx, int>> pole_index;
  for (const auto& r : pole_records(f)) pole_index.push_back({r.location, r.index});

  // radius: |f| must dominate eta on the circle (or stop growing), then the
  // winding must be stable over two doublings
  double R = 2 * scale;
  double prev_min = circle_min(f, R, 256);
  for (int k = 0; k < opt.max_doublings && prev_min < 2 * std::abs(eta) + 1; ++k) {
    const double m = circle_min(f, 2 * R, 256);
    R *= 2;
    if (m < 1.01 * prev_min) break;
    prev_min = m;
  }
  for (int k = 0; k < opt.max_doublings; ++k) {
    const int a = circle_winding(f, eta, R, opt.ring_samples);
    const int b = circle_winding(f, eta, 2 * R, opt.ring_samples);
    const int c = circle_winding(f, eta, 4 * R, opt.ring_samples);
    if (a == b && b == c) break;
    R *= 2;
  }
  res.radius = 1.05 * R;

  auto pole_distance = [&](Cx z) {
    double d = std::numeric_limits<double>::infinity();
    for (const Cx& p : sing) d = std::min(d, std::abs(z - p));
    return d;
  };

  std::vector<Cx> cand;
  std::vector<std::pair<Cell, int>> pole_cells;
  std::vector<Cell> stack{{0.0, res.radius}};
  const double leaf = opt.leaf * scale, pole_leaf = opt.pole_leaf * scale;
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    ++res.cells;
    const double r = cell.s * std::sqrt(2.0);
    const double dp = pole_distance(cell.c);
    bool exclude = false;
    if (dp > 4 * r) {
      try {
        const Cx F = evaluate(f, cell.c) - eta;
        double L = 0;
        for (int j = -1; j <= 1; ++j)
          for (int i = -1; i <= 1; ++i) {
            const Wirtinger w = wirtinger(f, cell.c + cell.s * Cx(i, j));
            L = std::max(L, std::abs(w.dz) + std::abs(w.dzbar));
          }
        exclude = std::abs(F) > 3 * L * r;
      } catch (const Error&) {
      }
    }
    if (exclude) continue;
    if (dp <= 4 * r && cell.s < pole_leaf) {
      int W = 0;
      try {
        W = box_winding(f, eta, cell.c, cell.s);
      } catch (const Error&) {
        continue;
      }
      for (const auto& [p, ind] : pole_index)
        if (std::abs(p.real() - cell.c.real()) < cell.s && std::abs(p.imag() - cell.c.imag()) < cell.s) W -= ind;
      if (W != 0) pole_cells.push_back({cell, W});
      continue;
    }
    if (cell.s < leaf) {
      bool ok = false;
      const Cx z = polish(f, cell.c, eta, ok);
      if (ok && std::abs(z - cell.c) < 100 * cell.s) cand.push_back(z);
      continue;
    }
    const double h = 0.5 * cell.s;
    for (int j : {-1, 1})
      for (int i : {-1, 1}) stack.push_back({cell.c + h * Cx(i, j), h});
  }

  std::sort(cand.begin(), cand.end(), [](Cx a, Cx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  std::vector<Cx> distinct;
  for (const Cx& z : cand) {
    bool dup = false;
    for (const Cx& q : distinct)
      if (std::abs(q - z) < 1e-7 * scale) dup = true;
    if (!dup) distinct.push_back(z);
  }
  for (size_t i = 0; i < distinct.size(); ++i) {
    double gap = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < distinct.size(); ++j)
      if (j != i) gap = std::min(gap, std::abs(distinct[i] - distinct[j]));
    gap = std::min(gap, pole_distance(distinct[i]));
    const double half = std::min(1e-5 * scale, 0.25 * gap);
    int W = 0;
    try {
      W = box_winding(f, eta, distinct[i], half);
    } catch (const Error&) {
    }
    if (W == 0) continue;
    res.zeros.push_back(distinct[i]);
    res.count += std::abs(W);
  }
  for (const auto& [cell, W] : pole_cells) {
    int inside = 0;
    for (const Cx& z : res.zeros)
      if (std::abs(z.real() - cell.c.real()) < cell.s && std::abs(z.imag() - cell.c.imag()) < cell.s) ++inside;
    const int extra = std::max(0, std::abs(W) - inside);
    res.unresolved += extra;
    res.count += extra;
  }
  return res;
}

}  // namespace harmonic
