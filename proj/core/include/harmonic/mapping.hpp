#pragma once

#include <string>
#include <vector>

#include "harmonic/numerics.hpp"

namespace harmonic {

/// c * log|z - s|
struct LogTerm {
  Cx s;
  Cx c;
};

/// f = h + conj(g) + sum c_j log|z - s_j| with rational h and g.
class HarmonicMap {
 public:
  HarmonicMap() = default;
  HarmonicMap(RationalFn h, RationalFn g, std::vector<LogTerm> logs = {});

  const RationalFn& h() const { return h_; }
  const RationalFn& g() const { return g_; }
  const std::vector<LogTerm>& logs() const { return logs_; }

  // h' + sum c/(2(z-s)), the analytic function equal to d/dz f
  const RationalFn& analytic_derivative() const { return a_; }
  // g' + sum conj(c)/(2(z-s)), so that d/dzbar f = conj of this
  const RationalFn& coanalytic_derivative() const { return b_; }

  // Poles of h and g and log anchors, deduplicated.
  const std::vector<Cx>& singular_points() const { return sing_; }
  // max(1, largest modulus among singular points)
  double scale() const { return scale_; }

  HarmonicMap shifted(Cx eta) const;        // f - eta
  HarmonicMap perturbed(const Poly& p) const;  // f + p, p analytic
  HarmonicMap conjugate() const;            // conj(f)

 private:
  RationalFn h_, g_;
  std::vector<LogTerm> logs_;
  RationalFn a_, b_;
  std::vector<Cx> sing_;
  double scale_ = 1.0;
};

Cx evaluate(const HarmonicMap& f, Cx z);

struct Wirtinger {
  Cx dz;
  Cx dzbar;
};

Wirtinger wirtinger(const HarmonicMap& f, Cx z);
double jacobian(const HarmonicMap& f, Cx z);

/// omega = conj(d/dzbar f) / (d/dz f) as a rational function.
RationalFn dilatation(const HarmonicMap& f);

/// f(z) = sum a_k u^k + conj(sum b_k u^k) + c log|u|, u = z - center.
/// b_0 is always zero; a_0 carries the whole constant.
struct LocalExpansion {
  Cx center;
  int order = 0;
  std::vector<Cx> a_coeffs, b_coeffs;  // index k + order
  Cx c;
  int lead = 0;  // smallest k with a_k or b_k nonzero
  bool all_zero = false;

  Cx a(int k) const { return at(a_coeffs, k); }
  Cx b(int k) const { return at(b_coeffs, k); }

 private:
  Cx at(const std::vector<Cx>& v, int k) const {
    int i = k + order;
    return i >= 0 && i < static_cast<int>(v.size()) ? v[i] : Cx{};
  }
};

LocalExpansion local_expansion(const HarmonicMap& f, Cx z0, int order = 4);

/// Expansion of f(1/w) - eta at w = 0.
LocalExpansion expansion_at_infinity(const HarmonicMap& f, Cx eta, int order = 4);

int zero_index(const LocalExpansion& e);
int pole_index(const LocalExpansion& e);
int index_at_infinity(const HarmonicMap& f, Cx eta);

enum class SingularityKind { removable, pole, log_pole, indeterminate };
const char* to_string(SingularityKind k);
SingularityKind classify_singularity(const HarmonicMap& f, Cx z0);

struct IndexRecord {
  enum class Kind { zero, pole, infinity };
  Kind kind = Kind::pole;
  Cx location;  // unused for infinity
  int index = 0;
  LocalExpansion basis;
};
const char* to_string(IndexRecord::Kind k);

/// Index records of all finite poles (including pure log poles with index 0).
/// Throws IndeterminateIndex on a tied pole.
std::vector<IndexRecord> pole_records(const HarmonicMap& f);
/// Sum of |index| over finite poles.
int pole_count(const std::vector<IndexRecord>& poles);

struct DegeneracyReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
};

DegeneracyReport is_non_degenerate(const HarmonicMap& f);

}  // namespace harmonic
