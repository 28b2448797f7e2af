// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/newton.hpp"
#include "harmonic/oracle.hpp"
#include "harmonic/tiles.hpp"
#include "harmonic/valence.hpp"
#include "harmonic/validate.hpp"

using namespace harmonic;

namespace {

// pinned tolerances and budgets
constexpr double kBudgetMpwCount = 10, kBudgetTiles = 60, kBudgetLog = 60, kBudgetWilm = 30, kBudgetNexp = 10;
constexpr double kBudgetTriple = 300;
constexpr double kResidual = 1e-10;      // solver residual for wilmshurst zeros
constexpr double kJacobian = 1e-7;       // |J| on traced exp:N samples
constexpr double kCircle = 1e-9;         // | |z| - 1 | on those samples
constexpr double kCurvature = 1e-3;      // |d/dt arg tau + 1/2|
constexpr double kSlopeLo = 0.45, kSlopeHi = 0.55;
constexpr int kTripleSamples = 20, kCrossingsTotal = 100, kBalanceSamples = 10;
constexpr std::uint64_t kSeed = 42;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const std::string& name, const std::function<bool(std::ostream&)>& body, double budget = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "threw " << e.what();
  }
  const double dt = seconds_since(t0);
  if (budget > 0 && dt > budget) {
    ok = false;
    detail << " over budget " << budget << " s";
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << dt << " s) " << detail.str() << std::endl;
}

std::string join(const std::multiset<int>& s) {
  std::string out;
  for (int v : s) out += (out.empty() ? "" : ",") + std::to_string(v);
  return "{" + out + "}";
}

std::set<int> counts_of(const TileReport& t) {
  std::set<int> s;
  for (const auto& tile : t.tiles) s.insert(tile.preimage_count);
  return s;
}

}  // namespace

int main() {
  std::cout.precision(6);
  set_default_seed(kSeed);

  report(1, "mpw golden counts", [](std::ostream& os) {
    const MapAnalysis an = analyze(catalog_map("mpw").map);
    const int n0 = count_preimages(an, 0.0).N, n1 = count_preimages(an, Cx(10, 10)).N;
    os << "N(0)=" << n0 << " N(10+10i)=" << n1;
    return n0 == 10 && n1 == 4;
  }, kBudgetMpwCount);

  report(2, "mpw tile spectrum confirmed by Newton", [](std::ostream& os) {
    const MapAnalysis an = analyze(catalog_map("mpw").map);
    const TileReport t = tile_decomposition(an);
    bool confirmed = true;
    for (const auto& tile : t.tiles) {
      const SolveReport s = solve_preimages(an, tile.representative);
      confirmed = confirmed && s.certified && static_cast<int>(s.points.size()) == tile.preimage_count;
    }
    const std::set<int> c = counts_of(t);
    os << "tiles " << t.tiles.size() << " counts " << join({c.begin(), c.end()}) << " newton " << (confirmed ? "agrees" : "disagrees");
    return c == std::set<int>{4, 6, 8, 10} && confirmed;
  }, kBudgetTiles);

  report(3, "log example golden values", [](std::ostream& os) {
    const MapAnalysis an = analyze(catalog_map("log-example").map);
    const TileReport t = tile_decomposition(an);
    int outer = -1;
    for (const auto& tile : t.tiles)
      if (tile.shape == TileShape::outer) outer = tile.preimage_count;
    const int inf = an.fixed_infinity_index.value_or(infinity_index(an, 100.0));
    const std::set<int> c = counts_of(t);
    os << "P=" << an.P << " ind_inf=" << inf << " outer=" << outer << " counts " << join({c.begin(), c.end()});
    return an.P == 2 && inf == -2 && outer == 4 && c.count(6) && c.count(2);
  }, kBudgetLog);

  report(4, "wilmshurst n=3", [](std::ostream& os) {
    const MapAnalysis an = analyze(catalog_map("wilmshurst:3").map);
    const int n = count_preimages(an, 0.0).N;
    const SolveReport s = solve_preimages(an, 0.0);
    double worst = 0, gap = 1e300;
    for (size_t i = 0; i < s.points.size(); ++i) {
      worst = std::max(worst, s.points[i].residual);
      for (size_t j = i + 1; j < s.points.size(); ++j) gap = std::min(gap, std::abs(s.points[i].z - s.points[j].z));
    }
    // the stitched circuit has to pass through both vertices 0 and 1
    bool through0 = false, through1 = false;
    for (const auto& c : an.critical.curves)
      for (int v : c.vertex_ids) {
        const Cx z = an.critical.vertices[v].z;
        through0 = through0 || std::abs(z) < 1e-8;
        through1 = through1 || std::abs(z - 1.0) < 1e-8;
      }
    os << "N=" << n << " zeros " << s.points.size() << " max residual " << worst << " min gap " << gap
       << " circuit through 0/1 " << through0 << through1;
    return n == 9 && s.points.size() == 9 && worst < kResidual && gap > 1e-6 && through0 && through1;
  }, kBudgetWilm);

  report(5, "exp:N critical set and index", [](std::ostream& os) {
    const HarmonicMap f = catalog_map("nexp").map;
    const MapAnalysis an = analyze(f);
    double jmax = 0, rdev = 0;
    size_t samples = 0;
    for (const auto& c : an.critical.curves)
      for (const auto& s : c.samples) {
        jmax = std::max(jmax, std::abs(jacobian(f, s.z)));
        rdev = std::max(rdev, std::abs(std::abs(s.z) - 1));
        ++samples;
      }
    const bool m0 = an.critical.isolated.size() == 1 && std::abs(an.critical.isolated[0].z) < 1e-12;
    const int ind0 = zero_index(local_expansion(f, 0.0));
    os << "curves " << an.critical.curves.size() << " samples " << samples << " max|J| " << jmax << " max||z|-1| " << rdev
       << " M={0} " << m0 << " ind(f;0)=" << ind0;
    return an.critical.curves.size() == 1 && samples > 0 && jmax < kJacobian && rdev < kCircle && m0 && ind0 == -2;
  }, kBudgetNexp);

  report(6, "triple agreement formula = Newton = oracle", [](std::ostream& os) {
    int total = 0, agree = 0;
    std::string first;
    for (const auto& key : catalog_keys()) {
      const MapAnalysis an = analyze(catalog_map(key).map);
      std::mt19937_64 rng(kSeed);
      const auto etas = random_etas(an, kTripleSamples, rng);
      if (static_cast<int>(etas.size()) != kTripleSamples) {
        os << key << " only " << etas.size() << " targets; ";
        return false;
      }
      for (const Cx& eta : etas) {
        const Agreement a = agreement_at(an, eta);
        ++total;
        if (a.agrees()) {
          ++agree;
        } else if (first.empty()) {
          std::ostringstream m;
          m << key << " eta " << eta << ": " << a.formula << "/" << a.newton << "/" << a.oracle << " " << a.note;
          first = m.str();
        }
      }
    }
    os << agree << "/" << total << " agree" << (first.empty() ? "" : "; first mismatch " + first);
    return total > 0 && agree == total;
  }, kBudgetTriple);

  report(7, "caustic curvature law", [](std::ostream& os) {
    double worst = 0;
    int checked = 0;
    for (const auto& key : catalog_keys()) {
      const MapAnalysis an = analyze(catalog_map(key).map);
      for (size_t i = 0; i < an.caustics.size(); ++i) {
        if (an.caustics[i].degenerate) continue;
        const CurvatureReport r = curvature_check(an.f, an.field, an.critical.curves[i], an.caustics[i]);
        worst = std::max(worst, r.max_deviation);
        checked += r.checked;
      }
    }
    os << "max deviation " << worst << " over " << checked << " samples";
    return checked > 0 && worst < kCurvature;
  });

  report(8, "fold scaling", [](std::ostream& os) {
    const MapAnalysis an = analyze(catalog_map("mpw").map);
    // a fold point of the first caustic far from its cusps and from the
    // other strands
    const auto& c = an.caustics[0];
    const CausticSample* best = nullptr;
    double far = -1;
    for (size_t i = 0; i < c.samples.size(); i += 4) {
      const auto& s = c.samples[i];
      if (s.at_vertex) continue;
      double d = 1e300;
      for (const auto& q : c.cusps) d = std::min(d, std::abs(s.w - q.w));
      for (const auto& other : an.caustics)
        for (const auto& q : other.samples)
          if (std::abs(q.z - s.z) > 0.1) d = std::min(d, std::abs(q.w - s.w));
      if (d > far) far = d, best = &s;
    }
    if (!best) return false;
    const double deltas[] = {1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<double> lx, ly;
    bool minus_empty = true, plus_two = true;
    for (double d : deltas) {
      const FoldPrediction p = fold_predict(an.f, best->z, d);
      const NewtonRun a = newton_iterate(an.f, p.w_plus, p.eta_plus), b = newton_iterate(an.f, p.w_minus, p.eta_plus);
      if (!a.converged || !b.converged) return false;
      lx.push_back(std::log(d));
      ly.push_back(std::log(std::abs(a.z - b.z)));
      const double r = 2 * std::abs(p.w_plus - p.z0);
      int near_plus = 0, near_minus = 0;
      for (const auto& q : solve_preimages(an, p.eta_plus).points) near_plus += std::abs(q.z - p.z0) < r;
      for (const auto& q : solve_preimages(an, p.eta_minus).points) near_minus += std::abs(q.z - p.z0) < r;
      plus_two = plus_two && near_plus == 2;
      minus_empty = minus_empty && near_minus == 0;
    }
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) sx += lx[i], sy += ly[i], sxx += lx[i] * lx[i], sxy += lx[i] * ly[i];
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    os << "slope " << slope << " plus side 2 local " << plus_two << " minus side 0 local " << minus_empty;
    return slope >= kSlopeLo && slope <= kSlopeHi && plus_two && minus_empty;
  });

  report(9, "parity and +-2 at fold crossings", [](std::ostream& os) {
    int total = 0, good = 0;
    bool parity = true;
    std::vector<std::string> keys;
    for (const auto& key : catalog_keys()) {
      const MapAnalysis an = analyze(catalog_map(key).map);
      if (detect_multiple_caustic(an).empty()) keys.push_back(key);
    }
    const int per = kCrossingsTotal / static_cast<int>(keys.size()) + 1;
    for (size_t m = 0; m < keys.size() && total < kCrossingsTotal; ++m) {
      const MapAnalysis an = analyze(catalog_map(keys[m]).map);
      std::mt19937_64 rng(kSeed + m);
      const int want = std::min(per, kCrossingsTotal - total);
      const auto xs = random_fold_crossings(an, want, rng);
      if (static_cast<int>(xs.size()) != want) {
        os << keys[m] << " gave " << xs.size() << " crossings; ";
        return false;
      }
      const int base = count_preimages(an, random_etas(an, 1, rng).at(0)).N;
      for (const auto& x : xs) {
        ++total;
        const int dN = x.n_after - x.n_before;
        good += std::abs(dN) == 2 && dN == 2 * x.delta_winding;
        parity = parity && (x.n_before - base) % 2 == 0 && (x.n_after - base) % 2 == 0;
      }
    }
    os << good << "/" << total << " crossings change N by 2, parity " << (parity ? "kept" : "broken");
    return total == kCrossingsTotal && good == total && parity;
  });

  report(10, "index balance", [](std::ostream& os) {
    int total = 0, good = 0;
    for (const auto& key : catalog_keys()) {
      const MapAnalysis an = analyze(catalog_map(key).map);
      std::mt19937_64 rng(kSeed + 7);
      for (const Cx& eta : random_etas(an, kBalanceSamples, rng)) {
        const CountReport r = count_preimages(an, eta);
        const SolveReport s = solve_preimages(an, eta);
        int sphere = infinity_index(an, eta);
        for (const auto& p : s.points) sphere += p.sense == Sense::preserving ? 1 : -1;
        for (const auto& q : an.poles) sphere += q.index;
        ++total;
        good += 2 * r.winding_sum() + r.P - r.ind_infinity == static_cast<int>(s.points.size()) && sphere == 0;
      }
    }
    os << good << "/" << total << " balanced";
    return total == 5 * kBalanceSamples && good == total;
  });

  report(11, "perturbation does not lose zeros", [](std::ostream& os) {
    const HarmonicMap f = catalog_map("double-caustic").map;
    const MapAnalysis an = analyze(f);
    const auto pairs = detect_multiple_caustic(an);
    if (pairs.empty()) {
      os << "no multiple caustic found";
      return false;
    }
    const double scale = std::max(f.h().num().max_abs_coeff(), f.g().num().max_abs_coeff());
    const PerturbationCheck p = perturbation_check(f, pairs[0].z1, pairs[0].z2, 0.0, 1e-3 * scale);
    os << "eps " << p.eps << " zeros " << p.count_before << " -> " << p.count_after << " image gap " << p.separation;
    return p.holds && p.count_after >= p.count_before;
  });

  return failures;
}
