#pragma once

#include <string>

#include "harmonic/mapping.hpp"

namespace harmonic {

/// Parses a map file:
///   {"h": {"num": [[re,im],...], "den": [...]}, "g": {...},
///    "log": [{"s": [re,im], "c": [re,im]}]}
/// Coefficients are in ascending powers. "den", "g" and "log" are optional.
HarmonicMap parse_map_json(const std::string& json_text);

/// Inverse of parse_map_json (denominators are written monic).
std::string map_to_json(const HarmonicMap& f);

struct LoadedMap {
  std::string id;
  std::string description;
  HarmonicMap map;
};

/// A catalog key, or else a path to a map file.
LoadedMap load_map(const std::string& source);

}  // namespace harmonic
