#include "harmonic/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "harmonic/counting.hpp"
#include "harmonic/error.hpp"
#include "harmonic/valence.hpp"

namespace harmonic {

std::vector<Cx> random_etas(const MapAnalysis& an, int n, std::mt19937_64& rng, double clearance) {
  std::vector<Cx> out;
  const BoundingBox& b = an.box;
  const Cx c(0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax));
  const double half = 0.65 * std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1.0});
  std::uniform_real_distribution<double> u(-1, 1);
  for (long tries = 0; static_cast<int>(out.size()) < n && tries < 2000L * std::max(n, 1); ++tries) {
    const double s = tries % 4 == 3 ? 3 * half : half;
    const Cx eta = c + s * Cx(u(rng), u(rng));
    if (critical_value_distance(an, eta) < clearance * an.margin) continue;
    out.push_back(eta);
  }
  return out;
}

Agreement agreement_at(const MapAnalysis& an, Cx eta, const ValidateOptions& opt) {
  Agreement a;
  a.eta = eta;
  const CountReport r = count_preimages(an, eta);
  a.formula = r.N;
  NewtonOptions nopt = opt.newton;
  nopt.strict = false;
  const SolveReport s = solve_preimages(an, eta, nopt);
  if (s.certified) {
    a.newton = static_cast<int>(s.points.size());
  } else {
    a.note = "CountMismatch: solver found " + std::to_string(s.points.size()) + " of " + std::to_string(s.expected);
  }
  a.oracle = brute_force_count(an.f, eta, opt.oracle).count;
  for (const auto& p : s.points) a.sphere_sum += p.sense == Sense::preserving ? 1 : -1;
  for (const auto& q : an.poles) a.sphere_sum += q.index;
  a.sphere_sum += infinity_index(an, eta);
  return a;
}

namespace {

bool segments_cross(Cx p, Cx q, Cx a, Cx b) {
  auto cross = [](Cx u, Cx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(q - p, a - p), d2 = cross(q - p, b - p);
  const double d3 = cross(b - a, p - a), d4 = cross(b - a, q - a);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// caustic segments met by [a, b], over all curves
int crossings_on(const MapAnalysis& an, Cx a, Cx b) {
  int n = 0;
  for (const auto& c : an.caustics)
    for (size_t k = 0; k + 1 < c.samples.size(); ++k) n += segments_cross(a, b, c.samples[k].w, c.samples[k + 1].w);
  return n;
}

}  // namespace

std::vector<FoldCrossing> random_fold_crossings(const MapAnalysis& an, int n, std::mt19937_64& rng) {
  std::vector<FoldCrossing> out;
  if (an.caustics.empty()) return out;
  std::vector<Cx> hazards;
  for (const auto& c : an.caustics)
    for (const auto& q : c.cusps) hazards.push_back(q.w);
  for (const auto& m : detect_multiple_caustic(an)) hazards.push_back(m.w);
  for (const Cx& w : an.isolated_images) hazards.push_back(w);

  std::vector<size_t> weight;
  for (const auto& c : an.caustics) weight.push_back(c.degenerate ? 0 : c.samples.size());
  std::discrete_distribution<size_t> pick_curve(weight.begin(), weight.end());
  const double d = 5 * an.margin;
  for (long tries = 0; static_cast<int>(out.size()) < n && tries < 500L * std::max(n, 1); ++tries) {
    const size_t ci = pick_curve(rng);
    const auto& c = an.caustics[ci];
    std::uniform_int_distribution<size_t> pick(0, c.samples.size() - 2);
    // cross between two samples, never through one
    const size_t k = pick(rng);
    const auto &s0 = c.samples[k], &s1 = c.samples[k + 1];
    if (s0.at_vertex || s1.at_vertex || std::abs(s0.tau) == 0 || std::abs(s1.tau) == 0) continue;
    const Cx mid = 0.5 * (s0.w + s1.w), tau = s0.tau / std::abs(s0.tau) + s1.tau / std::abs(s1.tau);
    if (std::abs(tau) < 1) continue;
    bool near = false;
    for (const Cx& w : hazards) near = near || std::abs(w - mid) < 4 * d;
    if (near) continue;
    const Cx nrm = Cx(0, 1) * tau / std::abs(tau);
    const Cx a = mid - d * nrm, b = mid + d * nrm;
    // nothing but the crossed arc may come near either end
    if (critical_value_distance(an, a) < 0.9 * d || critical_value_distance(an, b) < 0.9 * d) continue;
    if (crossings_on(an, a, b) != 1) continue;
    FoldCrossing f{a, b};
    try {
      f.delta_winding = crossing_delta(c, a, b);
    } catch (const Error&) {
      continue;
    }
    f.n_before = count_preimages(an, a).N;
    f.n_after = count_preimages(an, b).N;
    out.push_back(f);
  }
  return out;
}

std::vector<CheckResult> validate_map(const MapAnalysis& an, const ValidateOptions& opt) {
  std::vector<CheckResult> out;
  if (!an.degeneracy.ok) {
    std::string why;
    for (const auto& v : an.degeneracy.violations) why += (why.empty() ? "" : "; ") + v;
    out.push_back({"non_degenerate", false, why});
    return out;
  }
  out.push_back({"non_degenerate", true, ""});
  std::mt19937_64 rng(opt.seed);

  const std::vector<Cx> etas = random_etas(an, opt.samples, rng, opt.clearance);
  int agree = 0, balanced = 0;
  std::string first_bad, first_unbalanced;
  std::vector<int> counts;
  for (const Cx& eta : etas) {
    const Agreement a = agreement_at(an, eta, opt);
    counts.push_back(a.formula);
    std::ostringstream os;
    os << "eta " << eta << " formula " << a.formula << " newton " << a.newton << " oracle " << a.oracle;
    if (!a.note.empty()) os << " (" << a.note << ")";
    if (a.agrees())
      ++agree;
    else if (first_bad.empty())
      first_bad = os.str();
    if (a.sphere_sum == 0 && a.newton >= 0)
      ++balanced;
    else if (first_unbalanced.empty())
      first_unbalanced = os.str() + " sphere sum " + std::to_string(a.sphere_sum);
  }
  const int m = static_cast<int>(etas.size());
  const bool enough = m == opt.samples;
  out.push_back({"triple_agreement", enough && agree == m,
                 std::to_string(agree) + "/" + std::to_string(m) + (first_bad.empty() ? "" : "; " + first_bad)});
  out.push_back({"index_balance", enough && balanced == m,
                 std::to_string(balanced) + "/" + std::to_string(m) +
                     (first_unbalanced.empty() ? "" : "; " + first_unbalanced)});

  bool parity = true;
  for (int c : counts) parity = parity && (c - counts.front()) % 2 == 0;
  out.push_back({"parity", parity, "over " + std::to_string(counts.size()) + " targets"});

  if (!an.caustics.empty() && opt.crossings > 0) {
    const auto xs = random_fold_crossings(an, opt.crossings, rng);
    int good = 0;
    std::string bad;
    for (const auto& x : xs) {
      const int dN = x.n_after - x.n_before;
      const bool ok = std::abs(dN) == 2 && dN == 2 * x.delta_winding && (x.n_before - counts.front()) % 2 == 0;
      if (ok)
        ++good;
      else if (bad.empty())
        bad = "N " + std::to_string(x.n_before) + " -> " + std::to_string(x.n_after);
    }
    const int k = static_cast<int>(xs.size());
    // a caustic made of doubled arcs has no simple fold to cross
    const bool doubled = k == 0 && !detect_multiple_caustic(an).empty();
    out.push_back({"fold_crossings", (k == opt.crossings || doubled) && good == k,
                   std::to_string(good) + "/" + std::to_string(k) + (doubled ? " (doubled arcs only)" : "") +
                       (bad.empty() ? "" : "; " + bad)});
  }

  double worst = 0;
  for (size_t i = 0; i < an.caustics.size(); ++i) {
    if (an.caustics[i].degenerate) continue;
    worst = std::max(worst, curvature_check(an.f, an.field, an.critical.curves[i], an.caustics[i]).max_deviation);
  }
  std::ostringstream os;
  os << "max deviation " << worst;
  out.push_back({"curvature", worst < 1e-3, os.str()});
  return out;
}

}  // namespace harmonic
