#include "harmonic/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "harmonic/error.hpp"

namespace harmonic {

namespace {

RationalFn simple_pole(Cx s, Cx coef) {
  return RationalFn::from_poles(Poly::constant(coef), {{s, 1}});
}

bool near(Cx a, Cx b, double tol) { return std::abs(a - b) <= tol * std::max(rel_scale(a), rel_scale(b)); }

void check_degree(const RationalFn& r, const char* what) {
  if (r.num().degree() > kMaxDegree || r.den().degree() > kMaxDegree)
    throw Error(ErrorCode::InvalidInput, std::string(what) + " exceeds the degree cap of 64");
}

std::string fmt(Cx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

HarmonicMap::HarmonicMap(RationalFn h, RationalFn g, std::vector<LogTerm> logs)
    : h_(std::move(h)), g_(std::move(g)) {
  check_degree(h_, "h");
  check_degree(g_, "g");
  for (const auto& t : logs) {
    if (t.c == Cx{}) continue;
    if (!std::isfinite(t.s.real()) || !std::isfinite(t.s.imag()) || !std::isfinite(t.c.real()) ||
        !std::isfinite(t.c.imag()))
      throw Error(ErrorCode::InvalidInput, "non-finite log term");
    for (const auto& u : logs_)
      if (near(u.s, t.s, kClusterTol)) throw Error(ErrorCode::InvalidInput, "duplicate log anchor");
    logs_.push_back(t);
  }
  a_ = h_.derivative();
  b_ = g_.derivative();
  for (const auto& t : logs_) {
    a_ = a_ + simple_pole(t.s, 0.5 * t.c);
    b_ = b_ + simple_pole(t.s, 0.5 * std::conj(t.c));
  }
  auto add = [this](Cx p) {
    for (const Cx& q : sing_)
      if (near(p, q, kClusterTol)) return;
    sing_.push_back(p);
  };
  for (const auto& p : h_.poles()) add(p.root);
  for (const auto& p : g_.poles()) add(p.root);
  for (const auto& t : logs_) add(t.s);
  for (const Cx& p : sing_) scale_ = std::max(scale_, std::abs(p));
}

HarmonicMap HarmonicMap::shifted(Cx eta) const {
  return HarmonicMap(h_ - RationalFn(Poly::constant(eta)), g_, logs_);
}

HarmonicMap HarmonicMap::perturbed(const Poly& p) const { return HarmonicMap(h_ + RationalFn(p), g_, logs_); }

HarmonicMap HarmonicMap::conjugate() const {
  std::vector<LogTerm> l = logs_;
  for (auto& t : l) t.c = std::conj(t.c);
  return HarmonicMap(g_, h_, l);
}

namespace {

void require_regular(const HarmonicMap& f, Cx z) {
  for (const Cx& p : f.singular_points())
    if (std::abs(z - p) <= 1e-12 * rel_scale(p))
      throw Error(ErrorCode::AtSingularity, "evaluation at a singular point " + fmt(p));
}

}  // namespace

Cx evaluate(const HarmonicMap& f, Cx z) {
  require_regular(f, z);
  Cx v = f.h()(z) + std::conj(f.g()(z));
  for (const auto& t : f.logs()) v += t.c * std::log(std::abs(z - t.s));
  return v;
}

Wirtinger wirtinger(const HarmonicMap& f, Cx z) {
  require_regular(f, z);
  return {f.analytic_derivative()(z), std::conj(f.coanalytic_derivative()(z))};
}

double jacobian(const HarmonicMap& f, Cx z) {
  const Wirtinger w = wirtinger(f, z);
  return std::norm(w.dz) - std::norm(w.dzbar);
}

RationalFn dilatation(const HarmonicMap& f) {
  if (f.analytic_derivative().is_zero())
    throw Error(ErrorCode::DegenerateAnalyticPart, "d/dz f vanishes identically");
  if (f.coanalytic_derivative().is_zero()) return {};
  return f.coanalytic_derivative() / f.analytic_derivative();
}

LocalExpansion local_expansion(const HarmonicMap& f, Cx z0, int order) {
  if (order < 1) throw Error(ErrorCode::InvalidInput, "expansion order must be positive");
  Cx center = z0;
  for (const Cx& p : f.singular_points()) {
    if (near(p, z0, kClusterTol)) {
      center = p;
      break;
    }
    if (near(p, z0, 1e-6)) throw Error(ErrorCode::NotIsolated, "expansion point too close to " + fmt(p));
  }
  // the window must reach the leading term of a pole, whatever order was asked for
  for (const RationalFn* r : {&f.h(), &f.g()})
    for (const auto& q : r->poles())
      if (near(q.root, center, kClusterTol)) order = std::max(order, q.multiplicity);
  const LaurentSeries lh = laurent_coeffs(f.h(), center, -order, order);
  const LaurentSeries lg = laurent_coeffs(f.g(), center, -order, order);

  LocalExpansion e;
  e.center = center;
  e.order = order;
  e.a_coeffs.assign(2 * order + 1, Cx{});
  e.b_coeffs.assign(2 * order + 1, Cx{});
  for (int k = -order; k <= order; ++k) {
    e.a_coeffs[k + order] = lh[k];
    e.b_coeffs[k + order] = k == 0 ? Cx{} : lg[k];
  }
  e.a_coeffs[order] += std::conj(lg[0]);
  for (const auto& t : f.logs()) {
    if (near(t.s, center, kClusterTol)) {
      e.c += t.c;
      continue;
    }
    const auto tay = log_taylor(t.s, center, order);
    e.a_coeffs[order] += t.c * std::log(std::abs(center - t.s));
    for (int k = 1; k <= order; ++k) {
      e.a_coeffs[k + order] += 0.5 * t.c * tay[k];
      e.b_coeffs[k + order] += 0.5 * std::conj(t.c) * tay[k];
    }
  }

  double m = 0;
  for (int k = -order; k <= order; ++k) {
    if (k == 0) continue;
    m = std::max({m, std::abs(e.a(k)), std::abs(e.b(k))});
  }
  const double tol0 = 1e-10 * m;
  const double tol = 1e-13 * std::max(m, std::abs(e.a(0)));
  e.lead = order + 1;
  e.all_zero = true;
  for (int k = -order; k <= order; ++k) {
    const double t = k == 0 ? tol0 : tol;
    if (std::abs(e.a(k)) > t || std::abs(e.b(k)) > t) {
      e.lead = k;
      e.all_zero = false;
      break;
    }
  }
  // a zero of higher order than the window: widen it
  if (e.all_zero && order < 32) return local_expansion(f, z0, 2 * order);
  return e;
}

LocalExpansion expansion_at_infinity(const HarmonicMap& f, Cx eta, int order) {
  Cx constant = -eta;
  Cx at_zero{};
  std::vector<LogTerm> logs;
  for (const auto& t : f.logs()) {
    // c log|1/w - s| = c log|s| + c log|w - 1/s| - c log|w|
    at_zero -= t.c;
    if (std::abs(t.s) <= 1e-14) continue;
    constant += t.c * std::log(std::abs(t.s));
    logs.push_back({1.0 / t.s, t.c});
  }
  if (at_zero != Cx{}) logs.push_back({0.0, at_zero});
  RationalFn hf = compose_reciprocal(f.h()) + RationalFn(Poly::constant(constant));
  RationalFn gf = compose_reciprocal(f.g());
  HarmonicMap F(std::move(hf), std::move(gf), std::move(logs));
  return local_expansion(F, 0.0, order);
}

namespace {

bool tied(Cx a, Cx b) {
  const double x = std::abs(a), y = std::abs(b);
  return std::abs(x - y) <= 1e-9 * std::max(x, y);
}

}  // namespace

int zero_index(const LocalExpansion& e) {
  if (e.all_zero || e.lead < 1) throw Error(ErrorCode::InvalidInput, "expansion does not describe a zero");
  const int n = e.lead;
  if (tied(e.a(n), e.b(n))) throw Error(ErrorCode::IndeterminateIndex, "tied leading coefficients at a zero");
  return std::abs(e.a(n)) > std::abs(e.b(n)) ? n : -n;
}

int pole_index(const LocalExpansion& e) {
  if (!e.all_zero && e.lead < 0) {
    const int n = -e.lead;
    if (tied(e.a(-n), e.b(-n)))
      throw Error(ErrorCode::IndeterminateIndex, "tied leading coefficients at a pole");
    return std::abs(e.a(-n)) > std::abs(e.b(-n)) ? -n : n;
  }
  if (e.c != Cx{}) return 0;
  throw Error(ErrorCode::InvalidInput, "expansion does not describe a pole");
}

int index_at_infinity(const HarmonicMap& f, Cx eta) {
  const LocalExpansion e = expansion_at_infinity(f, eta, 4);
  if (!e.all_zero && e.lead < 0) return pole_index(e);
  if (e.c != Cx{}) return 0;
  if (e.all_zero) throw Error(ErrorCode::IndeterminateIndex, "f - eta vanishes identically near infinity");
  if (e.lead == 0) return 0;
  return zero_index(e);
}

const char* to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::removable: return "removable";
    case SingularityKind::pole: return "pole";
    case SingularityKind::log_pole: return "log_pole";
    case SingularityKind::indeterminate: return "indeterminate";
  }
  return "?";
}

const char* to_string(IndexRecord::Kind k) {
  switch (k) {
    case IndexRecord::Kind::zero: return "zero";
    case IndexRecord::Kind::pole: return "pole";
    case IndexRecord::Kind::infinity: return "infinity";
  }
  return "?";
}

SingularityKind classify_singularity(const HarmonicMap& f, Cx z0) {
  const LocalExpansion e = local_expansion(f, z0, 4);
  if (!e.all_zero && e.lead < 0)
    return tied(e.a(e.lead), e.b(e.lead)) ? SingularityKind::indeterminate : SingularityKind::pole;
  if (e.c != Cx{}) return SingularityKind::log_pole;
  return SingularityKind::removable;
}

std::vector<IndexRecord> pole_records(const HarmonicMap& f) {
  std::vector<IndexRecord> out;
  for (const Cx& p : f.singular_points()) {
    IndexRecord r;
    r.kind = IndexRecord::Kind::pole;
    r.basis = local_expansion(f, p, 4);
    r.location = r.basis.center;
    switch (classify_singularity(f, p)) {
      case SingularityKind::removable: continue;
      case SingularityKind::indeterminate:
        throw Error(ErrorCode::IndeterminateIndex, "pole with tied leading coefficients at " + fmt(p));
      case SingularityKind::log_pole: r.index = 0; break;
      case SingularityKind::pole: r.index = pole_index(r.basis); break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

int pole_count(const std::vector<IndexRecord>& poles) {
  int s = 0;
  for (const auto& r : poles) s += std::abs(r.index);
  return s;
}

DegeneracyReport is_non_degenerate(const HarmonicMap& f) {
  DegeneracyReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  for (const Cx& p : f.singular_points()) {
    switch (classify_singularity(f, p)) {
      case SingularityKind::indeterminate:
        fail("pole at " + fmt(p) + " has leading coefficients of equal modulus");
        break;
      case SingularityKind::log_pole:
        rep.notes.push_back("pure logarithmic pole at " + fmt(p) + " accepted with index 0");
        break;
      default: break;
    }
  }
  if (f.analytic_derivative().is_zero()) {
    fail("d/dz f vanishes identically");
    return rep;
  }
  const RationalFn w = dilatation(f);
  if (w.is_zero()) return rep;
  const int gr = w.growth();
  if (gr > 0) {
    fail("f is sense-reversing near infinity (co-analytic part dominates)");
  } else if (gr == 0) {
    const double lim = std::abs(w.num().lead());
    if (std::abs(lim - 1.0) <= 1e-9)
      fail("dilatation has modulus 1 at infinity; orientation near infinity undetermined");
    else if (lim > 1.0)
      fail("f is sense-reversing near infinity (co-analytic part dominates)");
  }
  return rep;
}

}  // namespace harmonic
