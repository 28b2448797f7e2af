#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "harmonic/analysis.hpp"
#include "harmonic/catalog.hpp"
#include "harmonic/counting.hpp"
#include "harmonic/error.hpp"
#include "harmonic/export.hpp"
#include "harmonic/map_io.hpp"
#include "harmonic/newton.hpp"
#include "harmonic/parallel.hpp"
#include "harmonic/tiles.hpp"
#include "harmonic/valence.hpp"
#include "harmonic/validate.hpp"

namespace fs = std::filesystem;
using namespace harmonic;

namespace {

struct RunConfig {
  std::string map;
  std::string eta_text;
  std::string to_text;
  std::string out = ".";
  double tol = 0;  // 0 keeps the library default
  int grid = 0;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string format = "csv";
  int samples = 20;
  int steps = 200;
};

Cx parse_cx(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream is(t);
  double re = 0, im = 0;
  if (!(is >> re)) throw Error(ErrorCode::InvalidInput, "cannot read a complex number from '" + s + "'");
  is >> im;
  return {re, im};
}

std::string show(Cx z) { return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i"; }

void write_file(const RunConfig& cfg, const std::string& name, const std::string& text) {
  fs::create_directories(cfg.out);
  const fs::path p = fs::path(cfg.out) / name;
  std::ofstream os(p);
  if (!os) throw Error(ErrorCode::InvalidInput, "cannot write " + p.string());
  os << text;
  std::cout << "wrote " << p.string() << "\n";
}

template <class F>
std::string render(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

NewtonOptions newton_options(const RunConfig& cfg) {
  NewtonOptions o;
  if (cfg.tol > 0) o.tol = cfg.tol;
  if (cfg.grid > 0) {
    o.grid = cfg.grid;
    o.max_grid = cfg.grid;
  }
  return o;
}

LoadedMap need_map(const RunConfig& cfg) {
  if (cfg.map.empty()) throw Error(ErrorCode::InvalidInput, "--map is required");
  return load_map(cfg.map);
}

Cx need_eta(const RunConfig& cfg) {
  if (cfg.eta_text.empty()) throw Error(ErrorCode::InvalidInput, "--eta is required");
  return parse_cx(cfg.eta_text);
}

MapAnalysis analyzed(const LoadedMap& m) {
  MapAnalysis an = analyze(m.map);
  if (!an.degeneracy.ok) {
    std::string why;
    for (const auto& v : an.degeneracy.violations) why += "\n  " + v;
    throw Error(ErrorCode::DegenerateMap, m.id + why);
  }
  return an;
}

int cmd_analyze(const RunConfig& cfg) {
  const LoadedMap m = need_map(cfg);
  const MapAnalysis an = analyzed(m);
  int cusps = 0;
  for (const auto& c : an.caustics) cusps += static_cast<int>(c.cusps.size());
  std::cout << "map " << m.id << "\n"
            << "critical curves " << an.critical.curves.size() << ", vertices " << an.critical.vertices.size()
            << ", isolated points " << an.critical.isolated.size() << ", cusps " << cusps << "\n"
            << "P " << an.P;
  if (an.fixed_infinity_index) std::cout << ", ind at infinity " << *an.fixed_infinity_index;
  std::cout << "\n";
  for (const auto& r : an.poles) std::cout << "  pole " << show(r.location) << " index " << r.index << "\n";
  for (const auto& q : an.critical.isolated) std::cout << "  isolated critical point " << show(q.z) << "\n";
  write_file(cfg, "critical.csv", render([&](std::ostream& os) { write_critical_csv(os, an.critical); }));
  write_file(cfg, "critical.svg", render([&](std::ostream& os) { write_critical_svg(os, an); }));
  write_file(cfg, "caustics.csv", render([&](std::ostream& os) { write_caustics_csv(os, an.caustics); }));
  write_file(cfg, "caustics.svg", render([&](std::ostream& os) { write_caustics_svg(os, an); }));
  write_file(cfg, "indices.json", analysis_json(an, m.id) + "\n");
  return 0;
}

int cmd_count(const RunConfig& cfg) {
  const LoadedMap m = need_map(cfg);
  const Cx eta = need_eta(cfg);
  const MapAnalysis an = analyzed(m);
  CountReport r;
  try {
    r = count_preimages(an, eta);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EtaOnCaustic) throw;
    std::cerr << "refusing to count: eta is " << fmt(critical_value_distance(an, eta))
              << " from the critical values, margin " << fmt(an.margin) << "\n";
    return 2;
  }
  if (cfg.format == "json") {
    std::cout << count_json(r) << "\n";
  } else {
    std::cout << "N = 2 * " << r.winding_sum() << " + " << r.P << " - (" << r.ind_infinity << ") = " << r.N << "\n";
    for (const auto& w : r.windings) std::cout << "  curve " << w.component_id << " winding " << w.winding << "\n";
    std::cout << "clearance " << fmt(r.clearance) << "\n";
  }
  if (cfg.out != ".") write_file(cfg, "count.json", count_json(r) + "\n");
  return 0;
}

int cmd_tiles(const RunConfig& cfg) {
  const LoadedMap m = need_map(cfg);
  const MapAnalysis an = analyzed(m);
  TileOptions o;
  if (cfg.grid > 0) o.max_grid = cfg.grid;
  const TileReport t = tile_decomposition(an, o);
  for (const auto& tile : t.tiles) {
    std::cout << "tile " << tile.id << " count " << tile.preimage_count << " " << to_string(tile.shape) << " at "
              << show(tile.representative) << " neighbors";
    for (int q : tile.neighbors) std::cout << " " << q;
    std::cout << "\n";
  }
  write_file(cfg, "tiles.json", tiles_json(t) + "\n");
  write_file(cfg, "tiles.svg", render([&](std::ostream& os) { write_tiles_svg(os, an, t); }));
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  const LoadedMap m = need_map(cfg);
  const Cx eta = need_eta(cfg);
  const MapAnalysis an = analyzed(m);
  const SolveReport r = solve_preimages(an, eta, newton_options(cfg));
  if (cfg.format == "json") {
    std::cout << solve_json(r) << "\n";
  } else {
    std::cout << r.points.size() << " pre-images" << (r.certified ? " (certified)" : "") << "\n";
    for (const auto& p : r.points)
      std::cout << "  " << show(p.z) << "  " << to_string(p.sense) << "  residual " << fmt(p.residual) << "\n";
    for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
  }
  if (cfg.out != ".") write_file(cfg, "preimages.csv", render([&](std::ostream& os) { write_preimages_csv(os, r); }));
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  std::vector<std::string> maps;
  if (cfg.map.empty())
    maps = catalog_keys();
  else
    maps.push_back(cfg.map);
  ValidateOptions o;
  o.seed = cfg.seed;
  o.samples = cfg.samples;
  o.newton = newton_options(cfg);
  bool all = true;
  for (const auto& key : maps) {
    const LoadedMap m = load_map(key);
    const MapAnalysis an = analyze(m.map);
    for (const auto& c : validate_map(an, o)) {
      all = all && c.passed;
      std::cout << (c.passed ? "PASS " : "FAIL ") << m.id << " " << c.name;
      if (!c.detail.empty()) std::cout << "  " << c.detail;
      std::cout << "\n";
    }
  }
  return all ? 0 : 1;
}

int cmd_export(const RunConfig& cfg) {
  const LoadedMap m = need_map(cfg);
  const MapAnalysis an = analyzed(m);
  if (cfg.format == "csv") {
    write_file(cfg, "critical.csv", render([&](std::ostream& os) { write_critical_csv(os, an.critical); }));
    write_file(cfg, "caustics.csv", render([&](std::ostream& os) { write_caustics_csv(os, an.caustics); }));
    BoundingBox b;
    const double r = critical_radius(an);
    b.xmin = b.ymin = -1.5 * r;
    b.xmax = b.ymax = 1.5 * r;
    const Cx eta = cfg.eta_text.empty() ? Cx{} : parse_cx(cfg.eta_text);
    write_file(cfg, "phase.csv", render([&](std::ostream& os) { write_phase_csv(os, an.f, eta, b, cfg.grid > 0 ? cfg.grid : 200); }));
  } else if (cfg.format == "svg") {
    write_file(cfg, "critical.svg", render([&](std::ostream& os) { write_critical_svg(os, an); }));
    write_file(cfg, "caustics.svg", render([&](std::ostream& os) { write_caustics_svg(os, an); }));
    const TileReport t = tile_decomposition(an);
    write_file(cfg, "tiles.svg", render([&](std::ostream& os) { write_tiles_svg(os, an, t); }));
  } else {
    write_file(cfg, "indices.json", analysis_json(an, m.id) + "\n");
    write_file(cfg, "tiles.json", tiles_json(tile_decomposition(an)) + "\n");
  }
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  const LoadedMap m = need_map(cfg);
  const Cx from = need_eta(cfg);
  const Cx to = cfg.to_text.empty() ? Cx{} : parse_cx(cfg.to_text);
  const MapAnalysis an = analyzed(m);
  const TileReport tiles = tile_decomposition(an);
  ScanOptions o;
  o.steps = cfg.steps;
  o.tiles = &tiles;
  ValenceScan s = valence_scan(an, from, to, o);
  s.map_id = m.id;
  std::cout << "achieved";
  for (int n : s.achieved_counts) std::cout << " " << n;
  std::cout << "\non the caustics";
  for (int n : s.crossing_counts) std::cout << " " << n;
  std::cout << "\n";
  write_file(cfg, "scan.csv", render([&](std::ostream& os) { write_scan_csv(os, s); }));
  write_file(cfg, "scan.json", scan_json(s) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical sets, caustics and pre-image counts of planar harmonic maps"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--map", cfg.map, "catalog key or map JSON file");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--tol", cfg.tol, "Newton residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--grid", cfg.grid, "seed grid (solve, validate), raster cap (tiles), phase grid (export)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--threads", cfg.threads, "worker threads (default: all cores)");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "critical set, caustics and index table");
  auto* count_cmd = app.add_subcommand("count", "number of pre-images of eta from the counting formula");
  auto* tiles_cmd = app.add_subcommand("tiles", "caustic tiles with their counts");
  auto* solve_cmd = app.add_subcommand("solve", "all pre-images of eta by harmonic Newton");
  auto* validate_cmd = app.add_subcommand("validate", "invariant suites (all catalog maps without --map)");
  auto* export_cmd = app.add_subcommand("export", "curves, phase grid, tiles in one format");
  auto* scan_cmd = app.add_subcommand("scan", "counts along a segment of eta values");
  for (auto* s : {analyze_cmd, count_cmd, tiles_cmd, solve_cmd, validate_cmd, export_cmd, scan_cmd}) common(s);
  for (auto* s : {count_cmd, solve_cmd, export_cmd, scan_cmd}) s->add_option("--eta", cfg.eta_text, "target as re,im");
  scan_cmd->add_option("--to", cfg.to_text, "end of the segment (default 0)");
  scan_cmd->add_option("--steps", cfg.steps, "points along the segment")->check(CLI::PositiveNumber);
  validate_cmd->add_option("--samples", cfg.samples, "random eta per map")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  set_default_seed(cfg.seed);
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  try {
    if (*analyze_cmd) return cmd_analyze(cfg);
    if (*count_cmd) return cmd_count(cfg);
    if (*tiles_cmd) return cmd_tiles(cfg);
    if (*solve_cmd) return cmd_solve(cfg);
    if (*validate_cmd) return cmd_validate(cfg);
    if (*export_cmd) return cmd_export(cfg);
    if (*scan_cmd) return cmd_scan(cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
