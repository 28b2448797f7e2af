#include "harmonic/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "harmonic/error.hpp"

namespace harmonic {

namespace {

std::atomic<std::uint64_t> g_default_seed{42};

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

double rel_scale(Cx z) { return std::max(1.0, std::abs(z)); }

void set_default_seed(std::uint64_t seed) { g_default_seed = seed; }
std::uint64_t default_seed() { return g_default_seed; }

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Cx> coeffs) : c_(std::move(coeffs)) { normalize(); }

void Poly::normalize() {
  double m = 0;
  for (const Cx& c : c_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::InvalidInput, "non-finite polynomial coefficient");
    m = std::max(m, std::abs(c));
  }
  if (m == 0) {
    c_.clear();
    return;
  }
  const double floor = kCoeffFloor * m;
  for (Cx& c : c_)
    if (std::abs(c) <= floor) c = 0;
  while (!c_.empty() && c_.back() == Cx{}) c_.pop_back();
}

Poly Poly::constant(Cx c) { return Poly(std::vector<Cx>{c}); }

Poly Poly::monomial(Cx c, int k) {
  std::vector<Cx> v(static_cast<size_t>(k) + 1, Cx{});
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(const std::vector<Cx>& roots, Cx lead) {
  std::vector<Cx> v{lead};
  for (const Cx& r : roots) {
    v.push_back(0);
    for (size_t i = v.size() - 1; i > 0; --i) v[i] = v[i - 1] - r * v[i];
    v[0] = -r * v[0];
  }
  return Poly(std::move(v));
}

double Poly::max_abs_coeff() const {
  double m = 0;
  for (const Cx& c : c_) m = std::max(m, std::abs(c));
  return m;
}

Cx Poly::operator()(Cx z) const {
  Cx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Poly::abs_eval(Cx z) const {
  const double r = std::abs(z);
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Cx> v(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = static_cast<double>(k) * c_[k];
  return Poly(std::move(v));
}

Poly Poly::shifted(Cx z0) const {
  // repeated synthetic division (Taylor shift)
  std::vector<Cx> a = c_;
  const int n = degree();
  for (int i = 0; i < n; ++i)
    for (int k = n - 1; k >= i; --k) a[k] += z0 * a[k + 1];
  Poly p;
  p.c_ = std::move(a);
  p.normalize();
  return p;
}

Poly Poly::compose_linear(Cx a, Cx b) const {
  Poly s = shifted(b);
  std::vector<Cx> v = s.c_;
  Cx pw = 1.0;
  for (Cx& c : v) {
    c *= pw;
    pw *= a;
  }
  return Poly(std::move(v));
}

Poly Poly::reversed(int n) const {
  std::vector<Cx> v(static_cast<size_t>(n) + 1, Cx{});
  for (int k = 0; k <= degree(); ++k) v[n - k] = c_[k];
  return Poly(std::move(v));
}

Poly Poly::deflate(Cx r) const {
  const int n = degree();
  if (n < 1) return {};
  std::vector<Cx> q(n);
  Cx acc = c_[n];
  for (int k = n - 1; k >= 0; --k) {
    q[k] = acc;
    acc = c_[k] + acc * r;
  }
  return Poly(std::move(q));
}

Poly Poly::conj_coeffs() const {
  std::vector<Cx> v = c_;
  for (Cx& c : v) c = std::conj(c);
  return Poly(std::move(v));
}

Poly Poly::operator-() const { return Cx(-1.0) * *this; }

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Cx> v(std::max(a.c_.size(), b.c_.size()), Cx{});
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  // cancellation relative to the operands, not to the result
  double m = std::max(a.max_abs_coeff(), b.max_abs_coeff());
  for (Cx& c : v)
    if (std::abs(c) <= 4 * kEps * m) c = 0;
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Cx> v(a.c_.size() + b.c_.size() - 1, Cx{});
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly operator*(Cx s, const Poly& a) {
  std::vector<Cx> v = a.c_;
  for (Cx& c : v) c *= s;
  return Poly(std::move(v));
}

// ---------------------------------------------------------------- roots

namespace {

bool root_accepted(const Poly& p, Cx z) {
  return std::abs(p(z)) <= 8 * kEps * p.abs_eval(z);
}

std::vector<Cx> aberth(const Poly& p, const RootOptions& opt) {
  const int n = p.degree();
  const Poly dp = p.derivative();
  std::mt19937_64 rng(opt.seed ? opt.seed : default_seed());
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  // initial guesses on a circle with the geometric mean root modulus
  const double rho = std::pow(std::abs(p[0]) / std::abs(p.lead()), 1.0 / n);
  const Cx centroid = -p[n - 1] / (static_cast<double>(n) * p.lead());
  std::vector<Cx> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = centroid + rho * std::polar(1.0, kTwoPi * k / n + 0.4);

  std::vector<bool> done(n, false);
  double best_step = std::numeric_limits<double>::infinity();
  int stagnant = 0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    double max_step = 0;
    int n_done = 0;
    for (int i = 0; i < n; ++i) {
      if (done[i]) {
        ++n_done;
        continue;
      }
      const Cx pv = p(z[i]);
      if (std::abs(pv) <= 8 * kEps * p.abs_eval(z[i])) {
        done[i] = true;
        ++n_done;
        continue;
      }
      const Cx ratio = pv / dp(z[i]);
      Cx sum{};
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      Cx w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        w = 1e-3 * rel_scale(z[i]) * Cx(uni(rng), uni(rng));
      z[i] -= w;
      max_step = std::max(max_step, std::abs(w) / rel_scale(z[i]));
    }
    if (n_done == n) return z;
    if (max_step < 0.5 * best_step) {
      best_step = max_step;
      stagnant = 0;
    } else if (++stagnant > 60) {
      for (int i = 0; i < n; ++i)
        if (!done[i]) z[i] += 1e-3 * (std::abs(z[i]) + rho) * Cx(uni(rng), uni(rng));
      stagnant = 0;
      best_step = std::numeric_limits<double>::infinity();
    }
  }
  for (int i = 0; i < n; ++i)
    if (!done[i] && !root_accepted(p, z[i]))
      throw Error(ErrorCode::NonConvergence, "root iteration did not converge");
  return z;
}

}  // namespace

std::vector<Cx> poly_roots(const Poly& p_in, const RootOptions& opt) {
  if (p_in.degree() < 1) throw Error(ErrorCode::InvalidInput, "poly_roots needs degree >= 1");
  if (p_in.degree() > kMaxDegree) throw Error(ErrorCode::InvalidInput, "degree exceeds cap");
  std::vector<Cx> roots;
  // exact zeros at the origin
  const auto& c = p_in.coeffs();
  size_t k0 = 0;
  while (k0 < c.size() && c[k0] == Cx{}) ++k0;
  roots.assign(k0, Cx{});
  Poly p(std::vector<Cx>(c.begin() + static_cast<std::ptrdiff_t>(k0), c.end()));
  const int n = p.degree();
  if (n == 1) {
    roots.push_back(-p[0] / p[1]);
  } else if (n == 2) {
    const Cx a = p[2], b = p[1], cc = p[0];
    const Cx d = std::sqrt(b * b - 4.0 * a * cc);
    const Cx q = -0.5 * (b + (std::real(std::conj(b) * d) >= 0 ? d : -d));
    if (q == Cx{}) {
      roots.push_back(0);
      roots.push_back(0);
    } else {
      roots.push_back(q / a);
      roots.push_back(cc / q);
    }
  } else if (n > 2) {
    auto z = aberth(p, opt);
    roots.insert(roots.end(), z.begin(), z.end());
  }
  for (const Cx& r : roots)
    if (std::abs(p_in(r)) > 1e-10 * std::max(1.0, p_in.abs_eval(r)))
      throw Error(ErrorCode::NonConvergence, "root fails residual check");
  return roots;
}

std::vector<RootCluster> cluster_roots(const Poly& p, const std::vector<Cx>& roots) {
  // Roots of a k-fold zero scatter by about eps^(1/k), so groups are tried from
  // wide to tight. A group of k is accepted when its polished centre is a
  // simple zero of p^(k-1) at which every lower derivative vanishes too.
  std::vector<Poly> ders{p};
  auto der = [&](int j) -> const Poly& {
    while (static_cast<int>(ders.size()) <= j) ders.push_back(ders.back().derivative());
    return ders[j];
  };
  auto mean_of = [&](const std::vector<size_t>& g) {
    Cx s{};
    for (size_t i : g) s += roots[i];
    return s / static_cast<double>(g.size());
  };
  auto split = [&](const std::vector<size_t>& idx, double tol) {
    const size_t n = idx.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        const Cx a = roots[idx[i]], b = roots[idx[j]];
        if (std::abs(a - b) <= tol * std::max(rel_scale(a), rel_scale(b))) parent[find(i)] = find(j);
      }
    std::vector<std::vector<size_t>> out;
    std::vector<int> slot(n, -1);
    for (size_t i = 0; i < n; ++i) {
      const size_t r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[slot[r]].push_back(idx[i]);
    }
    return out;
  };
  auto multiple_zero = [&](const std::vector<size_t>& g, double tol, Cx& m) {
    const int k = static_cast<int>(g.size());
    m = mean_of(g);
    const Poly& d = der(k - 1);
    const Poly& dd = der(k);
    const Cx m0 = m;
    for (int it = 0; it < 12; ++it) {
      const Cx den = dd(m);
      if (den == Cx{}) break;
      const Cx step = d(m) / den;
      m -= step;
      if (std::abs(step) <= 1e-16 * rel_scale(m)) break;
    }
    if (std::abs(m - m0) > tol * rel_scale(m0)) return false;
    for (int j = 0; j < k; ++j)
      if (std::abs(der(j)(m)) > 1e-8 * der(j).abs_eval(m)) return false;
    return true;
  };

  const std::vector<double> kTols{5e-2, 1e-2, 1e-3, 1e-4, kClusterTol};
  std::vector<RootCluster> out;
  auto rec = [&](auto&& self, const std::vector<size_t>& idx, int level) -> void {
    for (const auto& g : split(idx, kTols[level])) {
      Cx m;
      if (g.size() == 1) {
        out.push_back({roots[g[0]], 1});
      } else if (level + 1 == static_cast<int>(kTols.size())) {
        out.push_back({mean_of(g), static_cast<int>(g.size())});
      } else if (multiple_zero(g, kTols[level], m)) {
        out.push_back({m, static_cast<int>(g.size())});
      } else {
        self(self, g, level + 1);
      }
    }
  };
  std::vector<size_t> all(roots.size());
  std::iota(all.begin(), all.end(), 0);
  rec(rec, all, 0);
  return out;
}

// ---------------------------------------------------------------- RationalFn

namespace {

bool same_point(Cx a, Cx b) {
  return std::abs(a - b) <= kClusterTol * std::max(rel_scale(a), rel_scale(b));
}

Poly factor_product(const std::vector<RootCluster>& poles, const std::vector<int>& mult) {
  std::vector<Cx> r;
  for (size_t i = 0; i < poles.size(); ++i)
    for (int k = 0; k < mult[i]; ++k) r.push_back(poles[i].root);
  return Poly::from_roots(r);
}

}  // namespace

RationalFn::RationalFn(Poly num) : num_(std::move(num)) {}

RationalFn::RationalFn(Poly num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorCode::InvalidInput, "zero denominator");
  num_ = (1.0 / den.lead()) * num;
  if (den.degree() >= 1) poles_ = cluster_roots(den, poly_roots(den));
  rebuild_den();
  cancel_common();
}

RationalFn RationalFn::from_poles(Poly num, std::vector<RootCluster> poles) {
  RationalFn r;
  r.num_ = std::move(num);
  r.poles_ = std::move(poles);
  r.rebuild_den();
  r.cancel_common();
  return r;
}

void RationalFn::rebuild_den() {
  std::vector<int> m;
  for (const auto& p : poles_) m.push_back(p.multiplicity);
  den_ = factor_product(poles_, m);
}

void RationalFn::cancel_common() {
  if (num_.is_zero()) {
    poles_.clear();
    den_ = Poly::constant(1.0);
    return;
  }
  bool changed = false;
  for (auto& pc : poles_) {
    while (pc.multiplicity > 0 && num_.degree() >= 1) {
      const Cx v = num_(pc.root);
      const double tol = 1e-8 * num_.abs_eval(pc.root);
      if (std::abs(v) > tol) break;
      num_ = num_.deflate(pc.root);
      --pc.multiplicity;
      changed = true;
    }
  }
  if (changed) {
    poles_.erase(std::remove_if(poles_.begin(), poles_.end(),
                                [](const RootCluster& c) { return c.multiplicity == 0; }),
                 poles_.end());
    rebuild_den();
  }
}

int RationalFn::growth() const {
  if (num_.is_zero()) return std::numeric_limits<int>::min() / 2;
  return num_.degree() - den_.degree();
}

RationalValue RationalFn::eval(Cx z) const {
  Cx d = 1.0;
  for (const auto& p : poles_) {
    const Cx diff = z - p.root;
    if (std::abs(diff) <= 1e-14 * rel_scale(p.root)) {
      const Cx nv = num_(z);
      if (std::abs(nv) <= 1e-14 * std::max(1.0, num_.abs_eval(z)))
        throw Error(ErrorCode::Indeterminate, "0/0 in rational evaluation");
      return {Cx(std::numeric_limits<double>::infinity(), 0), true};
    }
    d *= std::pow(diff, p.multiplicity);
  }
  return {num_(z) / d, false};
}

Cx RationalFn::operator()(Cx z) const { return eval(z).value; }

RationalValue rational_eval(const RationalFn& r, Cx z) { return r.eval(z); }

RationalFn RationalFn::derivative() const {
  if (poles_.empty()) return RationalFn(num_.derivative());
  // d/dz [N / prod (z-r)^m] = [N' Q - N sum m_j Q/(z-r_j)] / (den Q), Q = prod (z-r)
  std::vector<Cx> rs;
  for (const auto& p : poles_) rs.push_back(p.root);
  const Poly q = Poly::from_roots(rs);
  Poly acc = num_.derivative() * q;
  for (size_t j = 0; j < poles_.size(); ++j) {
    std::vector<Cx> others;
    for (size_t i = 0; i < rs.size(); ++i)
      if (i != j) others.push_back(rs[i]);
    acc = acc - Cx(poles_[j].multiplicity) * (num_ * Poly::from_roots(others));
  }
  std::vector<RootCluster> np = poles_;
  for (auto& p : np) ++p.multiplicity;
  return from_poles(std::move(acc), std::move(np));
}

RationalFn RationalFn::compose_linear(Cx a, Cx b) const {
  if (a == Cx{}) throw Error(ErrorCode::InvalidInput, "compose_linear with a = 0");
  std::vector<RootCluster> np;
  int total = 0;
  for (const auto& p : poles_) {
    np.push_back({(p.root - b) / a, p.multiplicity});
    total += p.multiplicity;
  }
  Poly n = std::pow(a, -total) * num_.compose_linear(a, b);
  return from_poles(std::move(n), std::move(np));
}

RationalFn RationalFn::conj_coeffs() const {
  std::vector<RootCluster> np = poles_;
  for (auto& p : np) p.root = std::conj(p.root);
  return from_poles(num_.conj_coeffs(), std::move(np));
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -num_;
  return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // union of poles, multiplicity = max
  std::vector<RootCluster> u = a.poles_;
  std::vector<int> ma(u.size()), mb(u.size(), 0);
  for (size_t i = 0; i < u.size(); ++i) ma[i] = u[i].multiplicity;
  for (const auto& p : b.poles_) {
    bool found = false;
    for (size_t i = 0; i < u.size(); ++i) {
      if (same_point(u[i].root, p.root)) {
        mb[i] = p.multiplicity;
        u[i].multiplicity = std::max(u[i].multiplicity, p.multiplicity);
        found = true;
        break;
      }
    }
    if (!found) {
      u.push_back(p);
      ma.push_back(0);
      mb.push_back(p.multiplicity);
    }
  }
  std::vector<int> fa(u.size()), fb(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    fa[i] = u[i].multiplicity - ma[i];
    fb[i] = u[i].multiplicity - mb[i];
  }
  Poly n = a.num_ * factor_product(u, fa) + b.num_ * factor_product(u, fb);
  return RationalFn::from_poles(std::move(n), std::move(u));
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<RootCluster> u = a.poles_;
  for (const auto& p : b.poles_) {
    bool found = false;
    for (auto& q : u) {
      if (same_point(q.root, p.root)) {
        q.multiplicity += p.multiplicity;
        found = true;
        break;
      }
    }
    if (!found) u.push_back(p);
  }
  return RationalFn::from_poles(a.num_ * b.num_, std::move(u));
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "division by the zero function");
  if (a.is_zero()) return {};
  // 1/b = den_b / num_b
  std::vector<RootCluster> inv;
  if (b.num_.degree() >= 1) inv = cluster_roots(b.num_, poly_roots(b.num_));
  RationalFn recip = RationalFn::from_poles((1.0 / b.num_.lead()) * b.den_, std::move(inv));
  return a * recip;
}

RationalFn compose_reciprocal(const RationalFn& r) {
  if (r.is_zero()) return r;
  // r = N / prod (z - r_j)^m_j; substitute z = 1/w and clear powers of w
  const int dn = r.num().degree();
  int dd = 0;
  Cx scale = 1.0;
  std::vector<RootCluster> poles;
  for (const auto& p : r.poles()) {
    dd += p.multiplicity;
    if (std::abs(p.root) <= 1e-14) continue;
    scale *= std::pow(-p.root, p.multiplicity);
    poles.push_back({1.0 / p.root, p.multiplicity});
  }
  Poly num = (1.0 / scale) * r.num().reversed(dn);
  const int shift = dd - dn;
  if (shift > 0) num = num * Poly::monomial(1.0, shift);
  if (shift < 0) poles.push_back({0.0, -shift});
  return RationalFn::from_poles(std::move(num), std::move(poles));
}

// ---------------------------------------------------------------- Laurent

std::vector<Cx> log_taylor(Cx s, Cx z0, int kmax) {
  // log(z - s) = log(z0 - s) + log(1 + u/(z0 - s)), u = z - z0
  const Cx d = z0 - s;
  if (std::abs(d) == 0) throw Error(ErrorCode::AtSingularity, "log expansion at its anchor");
  std::vector<Cx> c(static_cast<size_t>(std::max(kmax, 0)) + 1);
  c[0] = std::log(d);
  Cx pw = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    pw /= d;
    c[k] = ((k % 2) ? 1.0 : -1.0) * pw / static_cast<double>(k);
  }
  return c;
}

LaurentSeries laurent_coeffs(const RationalFn& r, Cx z0, int kmin, int kmax) {
  if (kmax < kmin) throw Error(ErrorCode::InvalidInput, "empty Laurent range");
  LaurentSeries out;
  out.center = z0;
  out.kmin = kmin;
  out.coeffs.assign(static_cast<size_t>(kmax - kmin) + 1, Cx{});

  int m = 0;
  std::vector<Cx> others;
  for (const auto& p : r.poles()) {
    const double d = std::abs(z0 - p.root);
    if (d <= kClusterTol * rel_scale(p.root)) {
      out.center = p.root;
      m = p.multiplicity;
      continue;
    }
    if (d <= 1e-6 * rel_scale(p.root))
      throw Error(ErrorCode::NotIsolated, "expansion point too close to a pole");
    for (int k = 0; k < p.multiplicity; ++k) others.push_back(p.root);
  }
  out.pole_order = m;
  if (kmax < -m) return out;

  const int K = kmax + m;  // highest coefficient of the regular quotient needed
  const Poly ns = r.num().shifted(out.center);
  std::vector<Cx> shifted_roots;
  for (const Cx& q : others) shifted_roots.push_back(q - out.center);
  const Poly ds = Poly::from_roots(shifted_roots);
  std::vector<Cx> q(static_cast<size_t>(K) + 1, Cx{});
  const Cx d0 = ds[0];
  for (int k = 0; k <= K; ++k) {
    Cx acc = ns[k];
    for (int j = 1; j <= std::min(k, ds.degree()); ++j) acc -= ds[j] * q[k - j];
    q[k] = acc / d0;
  }
  for (int k = std::max(kmin, -m); k <= kmax; ++k) out.coeffs[k - kmin] = q[k + m];
  return out;
}

}  // namespace harmonic
