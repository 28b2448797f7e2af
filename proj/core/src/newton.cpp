#include "harmonic/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "harmonic/error.hpp"
#include "harmonic/parallel.hpp"

namespace harmonic {

Cx newton_step(const HarmonicMap& f, Cx z, Cx eta) {
  const Cx F = evaluate(f, z) - eta;
  const Wirtinger w = wirtinger(f, z);
  const double J = std::norm(w.dz) - std::norm(w.dzbar);
  if (!(std::abs(J) > 1e-14 * (std::norm(w.dz) + std::norm(w.dzbar))))
    throw Error(ErrorCode::SingularJacobian, "Jacobian vanishes at the Newton iterate");
  return z - (std::conj(w.dz) * F - w.dzbar * std::conj(F)) / J;
}

NewtonRun newton_iterate(const HarmonicMap& f, Cx z0, Cx eta, const NewtonOptions& opt, double escape,
                         double max_step) {
  NewtonRun r;
  r.z = z0;
  const double tol = opt.tol * std::max(1.0, std::abs(eta));
  try {
    r.residual = std::abs(evaluate(f, r.z) - eta);
    r.residuals.push_back(r.residual);
    for (int k = 0; k < opt.max_iterations; ++k) {
      if (r.residual < tol) {
        r.converged = true;
        // one more step tightens the last digits at a simple pre-image
        const Cx z2 = newton_step(f, r.z, eta);
        const double res2 = std::abs(evaluate(f, z2) - eta);
        if (res2 < r.residual) {
          r.z = z2;
          r.residual = res2;
          r.residuals.push_back(res2);
          ++r.iterations;
        }
        return r;
      }
      const Cx zn = newton_step(f, r.z, eta);
      if (!std::isfinite(zn.real()) || !std::isfinite(zn.imag()) || std::abs(zn) > escape ||
          std::abs(zn - r.z) > max_step)
        return r;
      r.z = zn;
      r.residual = std::abs(evaluate(f, r.z) - eta);
      r.residuals.push_back(r.residual);
      ++r.iterations;
    }
    r.converged = r.residual < tol;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularJacobian && e.code() != ErrorCode::AtSingularity) throw;
    r.converged = false;
  }
  return r;
}

namespace {

struct ZBox {
  double xmin, xmax, ymin, ymax;
  double diag() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

ZBox seed_box(const MapAnalysis& an) {
  const double R = critical_radius(an);
  ZBox b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  auto grow = [&](Cx z) {
    b.xmin = std::min(b.xmin, z.real());
    b.xmax = std::max(b.xmax, z.real());
    b.ymin = std::min(b.ymin, z.imag());
    b.ymax = std::max(b.ymax, z.imag());
  };
  for (const auto& c : an.critical.curves)
    for (const auto& s : c.samples) grow(s.z);
  for (const auto& m : an.critical.isolated) grow(m.z);
  for (const Cx& p : an.f.singular_points()) grow(p);
  if (b.xmin > b.xmax) {
    grow(Cx(-R, -R));
    grow(Cx(R, R));
  }
  const double w = std::max({b.xmax - b.xmin, b.ymax - b.ymin, 0.5 * R});
  const double cx = 0.5 * (b.xmin + b.xmax), cy = 0.5 * (b.ymin + b.ymax);
  return {cx - 0.75 * w, cx + 0.75 * w, cy - 0.75 * w, cy + 0.75 * w};
}

void ring(std::vector<Cx>& seeds, Cx c, double r, int n, double phase) {
  if (!(r > 0) || !std::isfinite(r)) return;
  for (int k = 0; k < n; ++k) seeds.push_back(c + std::polar(r, phase + kTwoPi * k / n));
}

std::vector<Cx> make_seeds(const MapAnalysis& an, Cx eta, const ZBox& box, int grid, int nring, bool jitter,
                           bool folds) {
  std::vector<Cx> s;
  const double hx = (box.xmax - box.xmin) / grid, hy = (box.ymax - box.ymin) / grid;
  const double off = jitter ? 0.37 : 0.5;
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) s.push_back({box.xmin + (i + off) * hx, box.ymin + (j + off) * hy});

  const double R = critical_radius(an);
  const auto& sing = an.f.singular_points();
  double sep = R;
  for (size_t i = 0; i < sing.size(); ++i)
    for (size_t j = i + 1; j < sing.size(); ++j) sep = std::min(sep, std::abs(sing[i] - sing[j]));
  const double eps = 0.05 * sep;
  const double phase = jitter ? 0.3 : 0.1;
  for (const auto& rec : an.poles) {
    ring(s, rec.location, 2 * eps, nring, phase);
    ring(s, rec.location, 4 * eps, nring, phase);
    // a large eta is hit close to a pole of order n at |u| ~ (|a_-n| / |eta|)^(1/n)
    const LocalExpansion& e = rec.basis;
    if (!e.all_zero && e.lead < 0 && std::abs(eta) > 0) {
      const int n = -e.lead;
      const double a = std::max(std::abs(e.a(e.lead)), std::abs(e.b(e.lead)));
      const double r = std::pow(a / std::abs(eta), 1.0 / n);
      if (r < 2 * eps) ring(s, rec.location, r, nring, phase);
    }
  }
  ring(s, 0.0, 2 * R, nring, phase);
  const LocalExpansion inf = expansion_at_infinity(an.f, 0.0, 4);
  if (!inf.all_zero && inf.lead < 0 && std::abs(eta) > 0) {
    const int n = -inf.lead;
    const double a = std::max(std::abs(inf.a(inf.lead)), std::abs(inf.b(inf.lead)));
    const double r = std::pow(std::abs(eta) / a, 1.0 / n);
    if (r > R) ring(s, 0.0, r, std::max(nring, 4 * n), phase);
  }

  if (!folds) return s;
  // fold predictions from the caustic points nearest to eta
  std::vector<std::pair<double, Cx>> near;
  for (const auto& c : an.caustics)
    for (const auto& x : c.samples)
      if (!x.at_vertex) near.push_back({std::abs(x.w - eta), x.z});
  const size_t k = std::min<size_t>(8, near.size());
  std::partial_sort(near.begin(), near.begin() + k, near.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < k; ++i) {
    try {
      const FoldPrediction p = fold_predict(an.f, near[i].second, 1.0);
      const double delta = near[i].first / std::max(std::abs(p.c_dir), 1e-300);
      const FoldPrediction q = fold_predict(an.f, near[i].second, delta);
      s.push_back(q.w_plus);
      s.push_back(q.w_minus);
    } catch (const Error&) {
    }
  }
  return s;
}

std::vector<Preimage> dedupe(std::vector<Preimage> pts, double tol, std::vector<std::string>& warnings) {
  std::sort(pts.begin(), pts.end(), [](const Preimage& a, const Preimage& b) {
    return a.z.real() < b.z.real() || (a.z.real() == b.z.real() && a.z.imag() < b.z.imag());
  });
  std::vector<Preimage> out;
  bool warned = false;
  for (const auto& p : pts) {
    bool merged = false;
    for (auto& q : out) {
      if (std::abs(q.z - p.z) >= tol) continue;
      if (q.sense == p.sense) {
        if (p.residual < q.residual) q = p;
        merged = true;
        break;
      }
      if (!warned) {
        warnings.push_back("two pre-images of opposite sense nearly coincide; eta is close to a fold");
        warned = true;
      }
    }
    if (!merged) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Preimage& a, const Preimage& b) {
    return a.z.real() < b.z.real() || (a.z.real() == b.z.real() && a.z.imag() < b.z.imag());
  });
  return out;
}

}  // namespace

SolveReport solve_preimages(const MapAnalysis& an, Cx eta, const NewtonOptions& opt) {
  if (!an.degeneracy.ok) throw Error(ErrorCode::DegenerateMap, "solve needs a non-degenerate map");
  SolveReport rep;
  rep.eta = eta;
  try {
    rep.expected = count_preimages(an, eta).N;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EtaOnCaustic) throw;
    rep.warnings.push_back("eta is within the caustic margin; result is best effort");
  }
  const ZBox box = seed_box(an);
  const double R = critical_radius(an);
  double far = 2 * R;
  const LocalExpansion inf = expansion_at_infinity(an.f, 0.0, 4);
  if (!inf.all_zero && inf.lead < 0) {
    const double a = std::max(std::abs(inf.a(inf.lead)), std::abs(inf.b(inf.lead)));
    far = std::max(far, std::pow(std::abs(eta) / a, 1.0 / -inf.lead));
  }
  const double escape = 1e3 * std::max(R, far);
  const double max_step = std::max(box.diag(), 2 * far);
  const double tol = opt.dedupe * R;

  std::vector<Preimage> found;
  int grid = opt.grid, nring = opt.ring;
  for (int round = 0;; ++round) {
    const std::vector<Cx> seeds = make_seeds(an, eta, box, grid, nring, round >= 3, opt.fold_seeds);
    std::vector<NewtonRun> runs(seeds.size());
    parallel_for(seeds.size(), [&](size_t i) { runs[i] = newton_iterate(an.f, seeds[i], eta, opt, escape, max_step); });
    for (const auto& r : runs) {
      if (!r.converged) continue;
      const double J = jacobian(an.f, r.z);
      found.push_back({r.z, J >= 0 ? Sense::preserving : Sense::reversing, r.residual, r.iterations});
    }
    found = dedupe(std::move(found), tol, rep.warnings);
    rep.escalations = round;
    if (rep.expected < 0 || static_cast<int>(found.size()) == rep.expected || round >= opt.max_escalations) break;
    grid = std::min(opt.max_grid, grid * 2);
    nring *= 2;
  }
  rep.points = std::move(found);
  rep.certified = rep.expected >= 0 && static_cast<int>(rep.points.size()) == rep.expected;
  if (rep.expected >= 0 && !rep.certified) {
    std::ostringstream os;
    os << "Newton found " << rep.points.size() << " pre-images, the formula predicts " << rep.expected;
    if (opt.strict) throw Error(ErrorCode::CountMismatch, os.str());
    rep.warnings.push_back(os.str());
  }
  return rep;
}

// ---------------------------------------------------------------- local predictions

namespace {

struct Local {
  Cx a1, b1, a2, b2;
  double theta;
  Cx e;  // e^{i theta}
};

Local local_data(const HarmonicMap& f, Cx z0) {
  const RationalFn& A = f.analytic_derivative();
  const RationalFn& B = f.coanalytic_derivative();
  Local l;
  l.a1 = A(z0);
  l.b1 = B(z0);
  const double s = std::max({1.0, std::abs(l.a1), std::abs(l.b1)});
  if (std::abs(l.a1) <= 1e-14 * s) throw Error(ErrorCode::DegenerateA1, "d/dz f vanishes at the critical point");
  if (std::abs(std::abs(l.b1 / l.a1) - 1.0) > 1e-6)
    throw Error(ErrorCode::InvalidInput, "point is not on the critical set");
  l.a2 = 0.5 * A.derivative()(z0);
  l.b2 = 0.5 * B.derivative()(z0);
  l.theta = 0.5 * std::arg(std::conj(l.b1) / l.a1);
  if (l.theta < 0) l.theta += kPi;
  if (l.theta >= kPi) l.theta -= kPi;
  l.e = std::polar(1.0, l.theta);
  return l;
}

Cx fold_direction(const Local& l) {
  const Cx e2 = l.e * l.e;
  return -l.a2 * e2 - std::conj(l.b2 * e2);
}

Cx ctilde(const Local& l) { return -(l.a2 / l.a1) * l.e - std::conj((l.b2 / l.b1) * l.e); }

}  // namespace

FoldPrediction fold_predict(const HarmonicMap& f, Cx z0, double delta) {
  const Local l = local_data(f, z0);
  const Cx ct = ctilde(l);
  // psi vanishes exactly where c~ is real
  if (std::abs(ct) == 0 || std::abs(ct.imag()) <= 1e-6 * std::abs(ct))
    throw Error(ErrorCode::NotAFold, "critical point maps to a cusp or degenerate caustic point");
  FoldPrediction p;
  p.z0 = z0;
  p.theta = l.theta;
  p.c_dir = fold_direction(l);
  p.delta = delta;
  const Cx step = Cx(0, 1) * l.e * std::sqrt(std::max(delta, 0.0));
  p.w_plus = z0 + step;
  p.w_minus = z0 - step;
  const Cx w0 = evaluate(f, z0);
  p.eta_plus = w0 + delta * p.c_dir;
  p.eta_minus = w0 - delta * p.c_dir;
  return p;
}

CuspPrediction cusp_predict(const HarmonicMap& f, Cx z0, double delta) {
  const Local l = local_data(f, z0);
  const Cx ct = ctilde(l);
  const double s = std::abs(l.a2 / l.a1) + std::abs(l.b2 / l.b1);
  if (std::abs(ct) <= 1e-12 * std::max(s, 1e-300)) throw Error(ErrorCode::DegenerateCtilde, "c~ vanishes");
  if (std::abs(ct.imag()) > 1e-5 * std::abs(ct)) throw Error(ErrorCode::NotACusp, "critical point is not a cusp pre-image");
  CuspPrediction p;
  p.z0 = z0;
  p.theta = l.theta;
  p.c_dir = fold_direction(l);
  p.c_tilde = ct;
  p.delta = delta;
  p.w1 = z0 + (1.0 - std::sqrt(Cx(1.0) - delta * ct * ct)) / ct * l.e;
  p.eta = evaluate(f, z0) + delta * p.c_dir;
  return p;
}

}  // namespace harmonic
