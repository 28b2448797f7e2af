#include "grid.hpp"

#include <algorithm>
#include <cmath>

namespace harmonic::detail {

Grid::Grid(double xmin, double ymin, double h, int nx, int ny)
    : x0_(xmin), y0_(ymin), h_(h), nx_(nx), ny_(ny), wall_(size(), 0), label_(size(), -1) {}

long Grid::locate(Cx z) const {
  const double fi = std::floor((z.real() - x0_) / h_);
  const double fj = std::floor((z.imag() - y0_) / h_);
  if (!(fi >= 0 && fj >= 0 && fi < nx_ && fj < ny_)) return -1;
  return static_cast<long>(index(static_cast<int>(fi), static_cast<int>(fj)));
}

void Grid::mark_polyline(const std::vector<Cx>& pts, double radius) {
  if (pts.size() == 1) mark_point(pts[0], radius);
  for (size_t s = 0; s + 1 < pts.size(); ++s) {
    const Cx a = pts[s], b = pts[s + 1];
    const double lox = std::min(a.real(), b.real()) - radius, hix = std::max(a.real(), b.real()) + radius;
    const double loy = std::min(a.imag(), b.imag()) - radius, hiy = std::max(a.imag(), b.imag()) + radius;
    const int i0 = std::max(0, static_cast<int>(std::floor((lox - x0_) / h_ - 0.5)));
    const int i1 = std::min(nx_ - 1, static_cast<int>(std::ceil((hix - x0_) / h_ - 0.5)));
    const int j0 = std::max(0, static_cast<int>(std::floor((loy - y0_) / h_ - 0.5)));
    const int j1 = std::min(ny_ - 1, static_cast<int>(std::ceil((hiy - y0_) / h_ - 0.5)));
    const Cx d = b - a;
    const double n = std::norm(d);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        const Cx p = center(i, j);
        double u = n > 0 ? std::real(std::conj(d) * (p - a)) / n : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        if (std::abs(p - (a + u * d)) <= radius) wall_[index(i, j)] = 1;
      }
  }
}

void Grid::mark_point(Cx p, double radius) { mark_polyline({p, p}, radius); }

int Grid::label_components(const std::function<bool(size_t, size_t)>& same) {
  std::fill(label_.begin(), label_.end(), -1);
  int n = 0;
  std::vector<size_t> stack;
  for (size_t k = 0; k < size(); ++k) {
    if (wall_[k] || label_[k] >= 0) continue;
    label_[k] = n;
    stack.push_back(k);
    while (!stack.empty()) {
      const size_t c = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(c % nx_), j = static_cast<int>(c / nx_);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int q = 0; q < 4; ++q) {
        const int a = i + di[q], b = j + dj[q];
        if (a < 0 || b < 0 || a >= nx_ || b >= ny_) continue;
        const size_t m = index(a, b);
        if (wall_[m] || label_[m] >= 0) continue;
        if (same && !same(c, m)) continue;
        label_[m] = n;
        stack.push_back(m);
      }
    }
    ++n;
  }
  return n;
}

std::vector<float> Grid::clearance() const {
  constexpr float inf = 1e30f;
  std::vector<float> d(size(), inf);
  auto lab = [&](int i, int j) { return label_[index(i, j)]; };
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      const int l = lab(i, j);
      if (l < 0) {
        d[index(i, j)] = 0;
        continue;
      }
      // a cell next to a differently labelled one is a boundary too
      if ((i > 0 && lab(i - 1, j) != l) || (i + 1 < nx_ && lab(i + 1, j) != l) || (j > 0 && lab(i, j - 1) != l) ||
          (j + 1 < ny_ && lab(i, j + 1) != l))
        d[index(i, j)] = 0.5f;
    }
  const float a = 1.0f, b = 1.41421356f;
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      float& v = d[index(i, j)];
      if (i > 0) v = std::min(v, d[index(i - 1, j)] + a);
      if (j > 0) {
        v = std::min(v, d[index(i, j - 1)] + a);
        if (i > 0) v = std::min(v, d[index(i - 1, j - 1)] + b);
        if (i + 1 < nx_) v = std::min(v, d[index(i + 1, j - 1)] + b);
      }
    }
  for (int j = ny_ - 1; j >= 0; --j)
    for (int i = nx_ - 1; i >= 0; --i) {
      float& v = d[index(i, j)];
      if (i + 1 < nx_) v = std::min(v, d[index(i + 1, j)] + a);
      if (j + 1 < ny_) {
        v = std::min(v, d[index(i, j + 1)] + a);
        if (i + 1 < nx_) v = std::min(v, d[index(i + 1, j + 1)] + b);
        if (i > 0) v = std::min(v, d[index(i - 1, j + 1)] + b);
      }
    }
  return d;
}

int Grid::label_near(Cx z, int r) const {
  const double fi = std::floor((z.real() - x0_) / h_), fj = std::floor((z.imag() - y0_) / h_);
  int best = -1;
  double bd = 1e300;
  for (int dj = -r; dj <= r; ++dj)
    for (int di = -r; di <= r; ++di) {
      const double a = fi + di, b = fj + dj;
      if (a < 0 || b < 0 || a >= nx_ || b >= ny_) continue;
      const size_t k = index(static_cast<int>(a), static_cast<int>(b));
      if (label_[k] < 0) continue;
      const double dd = std::abs(center(k) - z);
      if (dd < bd) {
        bd = dd;
        best = label_[k];
      }
    }
  return best;
}

}  // namespace harmonic::detail
