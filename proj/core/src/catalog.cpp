#include "harmonic/catalog.hpp"

#include <cmath>
#include <cstdio>

#include "harmonic/error.hpp"

namespace harmonic {

namespace {

Poly binomial_shift(int n, Cx shift) {
  // (z + shift)^n
  return Poly::monomial(1.0, n).shifted(shift);
}

int parse_int(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "bad integer in catalog key '" + key + "'");
  }
}

}  // namespace

CatalogEntry catalog_map(const std::string& key) {
  const Cx I(0, 1);
  if (key == "mpw") {
    const double a3 = 0.6 * 0.6 * 0.6;
    RationalFn g(Poly{0, 0, -1.0}, Poly{-a3, 0, 0, 1});
    return {key, "z - conj(z^2/(z^3 - 0.6^3))", HarmonicMap(Poly{0, 1}, g)};
  }
  if (key == "log-example") {
    RationalFn g(Poly{1, 2}, Poly{0, 1, 1});
    return {key, "z^2 + 1/conj(z) + 1/(conj(z)+1) + 2 log|z|",
            HarmonicMap(Poly{0, 0, 1}, g, {{0.0, 2.0}})};
  }
  if (key.rfind("wilmshurst:", 0) == 0) {
    const int n = parse_int(key.substr(11), key);
    if (n < 1 || n > 20) throw Error(ErrorCode::InvalidInput, "wilmshurst degree must be in 1..20");
    Poly zn = Poly::monomial(1.0, n);
    Poly zm1 = binomial_shift(n, -1.0);
    return {key, "z^n + (z-1)^n + conj(i z^n - i (z-1)^n), n = " + std::to_string(n),
            HarmonicMap(zn + zm1, I * zn - I * zm1)};
  }
  if (key == "nexp") {
    return {key, "z^3/3 + conj(z)^2/2", HarmonicMap(Poly::monomial(1.0 / 3.0, 3), Poly::monomial(0.5, 2))};
  }
  if (key == "double-caustic") {
    Poly p{-1, 0, 1};
    return {key, "p^2/2 + conj(p), p = z^2 - 1", HarmonicMap(Cx(0.5) * (p * p), p)};
  }
  if (key.rfind("power:", 0) == 0) {
    const std::string rest = key.substr(6);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::InvalidInput, "power key needs n,m");
    const int n = parse_int(rest.substr(0, comma), key);
    const int m = parse_int(rest.substr(comma + 1), key);
    if (m < 1 || n <= m || n > kMaxDegree) throw Error(ErrorCode::InvalidInput, "power key needs n > m >= 1");
    return {key, "z^n/n + conj(z)^m/m", HarmonicMap(Poly::monomial(1.0 / n, n), Poly::monomial(1.0 / m, m))};
  }
  throw Error(ErrorCode::InvalidInput, "unknown catalog key '" + key + "'");
}

std::vector<std::string> catalog_keys() { return {"mpw", "log-example", "wilmshurst:3", "nexp", "double-caustic"}; }

}  // namespace harmonic
