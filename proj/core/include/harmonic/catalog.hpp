#pragma once

#include <string>
#include <vector>

#include "harmonic/mapping.hpp"

namespace harmonic {

struct CatalogEntry {
  std::string key;
  std::string formula;
  HarmonicMap map;
};

/// Builtin example maps. Recognized keys:
///   mpw              z - conj(z^2 / (z^3 - 0.6^3))
///   log-example      z^2 + 1/conj(z) + 1/(conj(z)+1) + 2 log|z|
///   wilmshurst:n     z^n + (z-1)^n + conj(i z^n - i (z-1)^n)
///   nexp             z^3/3 + conj(z)^2/2
///   double-caustic   p^2/2 + conj(p), p = z^2 - 1
///   power:n,m        z^n/n + conj(z)^m/m, n > m
/// Throws InvalidInput for anything else.
CatalogEntry catalog_map(const std::string& key);

/// Keys exercised by the validation suites.
std::vector<std::string> catalog_keys();

}  // namespace harmonic
