#pragma once

// Uniform cell grid shared by the tile and region builders.

#include <functional>
#include <vector>

#include "harmonic/numerics.hpp"

namespace harmonic::detail {

class Grid {
 public:
  Grid(double xmin, double ymin, double h, int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  size_t size() const { return static_cast<size_t>(nx_) * ny_; }
  size_t index(int i, int j) const { return static_cast<size_t>(j) * nx_ + i; }
  Cx center(int i, int j) const { return {x0_ + (i + 0.5) * h_, y0_ + (j + 0.5) * h_}; }
  Cx center(size_t k) const { return center(static_cast<int>(k % nx_), static_cast<int>(k / nx_)); }
  // cell containing z, or -1 outside the grid
  long locate(Cx z) const;

  // walls: cells whose centre lies within radius of the polyline
  void mark_polyline(const std::vector<Cx>& pts, double radius);
  void mark_point(Cx p, double radius);
  const std::vector<char>& wall() const { return wall_; }

  // 4-connected components of non-wall cells; same(a, b) may further split them.
  // Returns the component count; label() is -1 on walls.
  int label_components(const std::function<bool(size_t, size_t)>& same = {});
  const std::vector<int>& label() const { return label_; }

  // Chamfer distance (in cell units) to the nearest wall or foreign label.
  std::vector<float> clearance() const;

  // label of the nearest labelled cell within r cells of z, or -1
  int label_near(Cx z, int r) const;

 private:
  double x0_, y0_, h_;
  int nx_, ny_;
  std::vector<char> wall_;
  std::vector<int> label_;
};

}  // namespace harmonic::detail
