#include "harmonic/map_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "harmonic/catalog.hpp"
#include "harmonic/error.hpp"

namespace harmonic {

using nlohmann::json;

namespace {

Cx parse_cx(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::InvalidInput, std::string("expected [re, im] for ") + what);
  return {j[0].get<double>(), j[1].get<double>()};
}

Poly parse_poly(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array");
  std::vector<Cx> c;
  for (const auto& e : j) c.push_back(parse_cx(e, what));
  if (c.size() > static_cast<size_t>(kMaxDegree) + 1)
    throw Error(ErrorCode::InvalidInput, std::string(what) + " exceeds the degree cap of 64");
  return Poly(std::move(c));
}

RationalFn parse_rational(const json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an object");
  if (!j.contains("num")) throw Error(ErrorCode::InvalidInput, std::string(what) + " lacks \"num\"");
  Poly num = parse_poly(j["num"], what);
  if (!j.contains("den")) return RationalFn(std::move(num));
  Poly den = parse_poly(j["den"], what);
  if (den.is_zero()) throw Error(ErrorCode::InvalidInput, std::string(what) + " has a zero denominator");
  return RationalFn(std::move(num), den);
}

// 15 significant digits, like every other number the library writes
double r15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

json cx_json(Cx c) { return {r15(c.real()), r15(c.imag())}; }

json poly_json(const Poly& p) {
  json a = json::array();
  for (const Cx& c : p.coeffs()) a.push_back(cx_json(c));
  if (p.is_zero()) a.push_back({0.0, 0.0});
  return a;
}

json rational_json(const RationalFn& r) { return {{"num", poly_json(r.num())}, {"den", poly_json(r.den())}}; }

}  // namespace

HarmonicMap parse_map_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "map file must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "h" && k != "g" && k != "log") throw Error(ErrorCode::InvalidInput, "unknown map file field '" + k + "'");
  if (!j.contains("h")) throw Error(ErrorCode::InvalidInput, "map file lacks \"h\"");
  RationalFn h = parse_rational(j["h"], "h");
  RationalFn g = j.contains("g") ? parse_rational(j["g"], "g") : RationalFn();
  std::vector<LogTerm> logs;
  if (j.contains("log")) {
    if (!j["log"].is_array()) throw Error(ErrorCode::InvalidInput, "\"log\" must be an array");
    for (const auto& t : j["log"]) {
      if (!t.is_object() || !t.contains("s") || !t.contains("c"))
        throw Error(ErrorCode::InvalidInput, "log term needs \"s\" and \"c\"");
      logs.push_back({parse_cx(t["s"], "log anchor"), parse_cx(t["c"], "log coefficient")});
    }
  }
  return HarmonicMap(std::move(h), std::move(g), std::move(logs));
}

std::string map_to_json(const HarmonicMap& f) {
  json j;
  j["h"] = rational_json(f.h());
  j["g"] = rational_json(f.g());
  json l = json::array();
  for (const auto& t : f.logs()) l.push_back({{"s", cx_json(t.s)}, {"c", cx_json(t.c)}});
  j["log"] = l;
  return j.dump(2);
}

LoadedMap load_map(const std::string& source) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(source, ec)) {
    std::ifstream in(source);
    std::stringstream ss;
    ss << in.rdbuf();
    return {fs::path(source).stem().string(), "map file " + source, parse_map_json(ss.str())};
  }
  CatalogEntry e = catalog_map(source);
  return {e.key, e.formula, std::move(e.map)};
}

}  // namespace harmonic
