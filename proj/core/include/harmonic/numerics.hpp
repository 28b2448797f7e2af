#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace harmonic {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Coefficients whose magnitude falls below this fraction of the largest one
// are treated as structural zeros.
inline constexpr double kCoeffFloor = 1e-13;
// Relative distance below which two roots are considered the same point.
inline constexpr double kClusterTol = 1e-8;
inline constexpr int kMaxDegree = 64;

/// Dense polynomial, coefficients in ascending powers.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Cx> coeffs);
  Poly(std::initializer_list<Cx> coeffs) : Poly(std::vector<Cx>(coeffs)) {}

  static Poly constant(Cx c);
  static Poly monomial(Cx c, int k);
  static Poly from_roots(const std::vector<Cx>& roots, Cx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Cx>& coeffs() const { return c_; }
  Cx operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Cx{}; }
  Cx lead() const { return c_.empty() ? Cx{} : c_.back(); }
  double max_abs_coeff() const;

  Cx operator()(Cx z) const;
  // Sum of |c_i| |z|^i: the natural scale of rounding errors in p(z).
  double abs_eval(Cx z) const;

  Poly derivative() const;
  // p(z + z0)
  Poly shifted(Cx z0) const;
  // p(a z + b)
  Poly compose_linear(Cx a, Cx b) const;
  // z^n p(1/z); n must be at least degree()
  Poly reversed(int n) const;
  // quotient of p / (z - r); the remainder is dropped
  Poly deflate(Cx r) const;
  Poly conj_coeffs() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Cx s, const Poly& a);

 private:
  void normalize();
  std::vector<Cx> c_;
};

struct RootOptions {
  int max_iterations = 1000;
  std::uint64_t seed = 0;  // 0 selects the process default
};

// Process-wide default RNG seed used by the root finder (42 unless changed).
void set_default_seed(std::uint64_t seed);
std::uint64_t default_seed();

/// All roots of p with multiplicity (Aberth-Ehrlich iteration).
/// Throws NonConvergence if the iteration stalls.
std::vector<Cx> poly_roots(const Poly& p, const RootOptions& opt = {});

struct RootCluster {
  Cx root;
  int multiplicity = 1;
};

/// Groups numerically coincident roots of p into clusters with multiplicity.
std::vector<RootCluster> cluster_roots(const Poly& p, const std::vector<Cx>& roots);

struct RationalValue {
  Cx value;
  bool pole = false;
};

/// Rational function num / den with den monic and stored in factored form.
class RationalFn {
 public:
  RationalFn() = default;
  RationalFn(Poly num);  // NOLINT: polynomials convert implicitly
  RationalFn(Poly num, const Poly& den);

  // Builds num / prod (z - r)^m without searching for roots of a denominator.
  static RationalFn from_poles(Poly num, std::vector<RootCluster> poles);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const std::vector<RootCluster>& poles() const { return poles_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return poles_.empty(); }
  // deg num - deg den; a large negative value for the zero function
  int growth() const;

  RationalValue eval(Cx z) const;
  // Value at z; returns an infinite value at a pole.
  Cx operator()(Cx z) const;

  RationalFn derivative() const;
  RationalFn compose_linear(Cx a, Cx b) const;
  RationalFn conj_coeffs() const;

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);

 private:
  void rebuild_den();
  void cancel_common();
  Poly num_;
  Poly den_ = Poly::constant(1.0);
  std::vector<RootCluster> poles_;
};

/// Evaluates r at z. Throws Indeterminate for an unresolved 0/0.
RationalValue rational_eval(const RationalFn& r, Cx z);

/// Laurent coefficients of a rational function at a point.
struct LaurentSeries {
  Cx center;
  int pole_order = 0;
  int kmin = 0;
  std::vector<Cx> coeffs;  // coeffs[k - kmin]
  Cx operator[](int k) const {
    int i = k - kmin;
    return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[i] : Cx{};
  }
};

/// Coefficients c_k for k in [kmin, kmax] of r around z0. A z0 within
/// kClusterTol of a pole is snapped onto it; closer than 1e-6 otherwise
/// throws NotIsolated.
LaurentSeries laurent_coeffs(const RationalFn& r, Cx z0, int kmin, int kmax);

// Taylor coefficients of log(z - s) about z0, k = 0..kmax. Requires s != z0.
std::vector<Cx> log_taylor(Cx s, Cx z0, int kmax);

// r(1/z) as a rational function of z.
RationalFn compose_reciprocal(const RationalFn& r);

double rel_scale(Cx z);  // max(1, |z|)

}  // namespace harmonic
