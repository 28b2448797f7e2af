#include "harmonic/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace harmonic {

using nlohmann::json;

std::string fmt(double x) {
  if (!std::isfinite(x)) return x != x ? "nan" : x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

namespace {

// rounded to 15 digits so the JSON text carries no more than that
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fmt(x));
}

json cx(Cx z) { return json::array({num(z.real()), num(z.imag())}); }

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

}  // namespace

void write_critical_csv(std::ostream& os, const CriticalSet& cs) {
  os << "curve,t,x,y,vertex\n";
  for (const auto& c : cs.curves)
    for (const auto& s : c.samples)
      os << c.component_id << ',' << fmt(s.t) << ',' << fmt(s.z.real()) << ',' << fmt(s.z.imag()) << ','
         << s.vertex_id << '\n';
}

void write_caustics_csv(std::ostream& os, const std::vector<CausticCurve>& cs) {
  os << "curve,t,x,y,u,v,tau_x,tau_y,psi\n";
  for (const auto& c : cs)
    for (const auto& s : c.samples)
      os << c.source << ',' << fmt(s.t) << ',' << fmt(s.z.real()) << ',' << fmt(s.z.imag()) << ',' << fmt(s.w.real())
         << ',' << fmt(s.w.imag()) << ',' << fmt(s.tau.real()) << ',' << fmt(s.tau.imag()) << ',' << fmt(s.psi) << '\n';
}

void write_preimages_csv(std::ostream& os, const SolveReport& r) {
  os << "x,y,sense,residual,iterations\n";
  for (const auto& p : r.points)
    os << fmt(p.z.real()) << ',' << fmt(p.z.imag()) << ',' << to_string(p.sense) << ',' << fmt(p.residual) << ','
       << p.iterations << '\n';
}

void write_scan_csv(std::ostream& os, const ValenceScan& s) {
  os << "eta_re,eta_im,N,tile,on_caustic\n";
  for (const auto& r : s.records)
    os << fmt(r.eta.real()) << ',' << fmt(r.eta.imag()) << ',' << r.N << ',' << r.tile_id << ','
       << (r.on_caustic ? 1 : 0) << '\n';
}

void write_phase_csv(std::ostream& os, const HarmonicMap& f, Cx eta, const BoundingBox& box, int n) {
  os << "x,y,phase\n";
  const double dx = (box.xmax - box.xmin) / std::max(1, n - 1), dy = (box.ymax - box.ymin) / std::max(1, n - 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Cx z(box.xmin + i * dx, box.ymin + j * dy);
      double ph = std::numeric_limits<double>::quiet_NaN();
      try {
        ph = std::arg(evaluate(f, z) - eta);
      } catch (const std::exception&) {
      }
      os << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(ph) << '\n';
    }
}

void SvgPlot::polyline(const std::vector<Cx>& pts, const std::string& color, double width) {
  lines_.push_back({pts, color, width});
}
void SvgPlot::point(Cx z, const std::string& color, double radius) { dots_.push_back({z, color, radius}); }
void SvgPlot::label(Cx z, const std::string& text, const std::string& color) { texts_.push_back({z, text, color}); }

void SvgPlot::write(std::ostream& os, int pixels) const {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto grow = [&](Cx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  };
  for (const auto& l : lines_)
    for (const Cx& z : l.pts) grow(z);
  for (const auto& d : dots_) grow(d.z);
  for (const auto& t : texts_) grow(t.z);
  if (x0 > x1) x0 = y0 = -1, x1 = y1 = 1;
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double pad = 0.05 * span;
  x0 -= pad;
  y0 -= pad;
  const double s = pixels / (span + 2 * pad);
  const double H = (y1 - y0 + pad) * s, W = (x1 - x0 + pad) * s;
  auto X = [&](Cx z) { return fmt((z.real() - x0) * s); };
  auto Y = [&](Cx z) { return fmt(H - (z.imag() - y0) * s); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H) << "\" viewBox=\"0 0 "
     << fmt(W) << ' ' << fmt(H) << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  for (const auto& l : lines_) {
    os << "<path fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"" << fmt(l.width) << "\" d=\"";
    bool pen = false;
    for (const Cx& z : l.pts) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        pen = false;
        continue;
      }
      os << (pen ? " L" : " M") << X(z) << ' ' << Y(z);
      pen = true;
    }
    os << "\"/>\n";
  }
  for (const auto& d : dots_)
    os << "<circle cx=\"" << X(d.z) << "\" cy=\"" << Y(d.z) << "\" r=\"" << fmt(d.r) << "\" fill=\"" << d.color << "\"/>\n";
  for (const auto& t : texts_)
    os << "<text x=\"" << X(t.z) << "\" y=\"" << Y(t.z) << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"" << t.color
       << "\" text-anchor=\"middle\">" << t.text << "</text>\n";
  os << "</svg>\n";
}

void write_critical_svg(std::ostream& os, const MapAnalysis& an) {
  SvgPlot p;
  int k = 0;
  for (const auto& c : an.critical.curves) {
    std::vector<Cx> pts;
    for (const auto& s : c.samples) pts.push_back(s.z);
    p.polyline(pts, kPalette[k++ % 8], 1.5);
  }
  for (const auto& v : an.critical.vertices) p.point(v.z, "#000", 3);
  for (const auto& m : an.critical.isolated) p.point(m.z, "#d62728", 4);
  for (const Cx& s : an.f.singular_points()) p.point(s, "#888", 3);
  p.write(os);
}

void write_caustics_svg(std::ostream& os, const MapAnalysis& an) {
  SvgPlot p;
  int k = 0;
  for (const auto& c : an.caustics) {
    p.polyline(polyline(c), kPalette[k++ % 8], 1.5);
    for (const auto& q : c.cusps) p.point(q.w, "#000", 2.5);
  }
  for (const Cx& w : an.isolated_images) p.point(w, "#d62728", 4);
  p.write(os);
}

void write_tiles_svg(std::ostream& os, const MapAnalysis& an, const TileReport& tiles) {
  SvgPlot p;
  for (const auto& c : an.caustics) p.polyline(polyline(c), "#1f77b4", 1.2);
  for (const auto& t : tiles.tiles) p.label(t.representative, std::to_string(t.preimage_count));
  p.write(os);
}

std::string analysis_json(const MapAnalysis& an, const std::string& map_id) {
  json j;
  if (!map_id.empty()) j["map"] = map_id;
  j["non_degenerate"] = an.degeneracy.ok;
  j["violations"] = an.degeneracy.violations;
  j["notes"] = an.degeneracy.notes;
  json poles = json::array();
  for (const auto& r : an.poles) poles.push_back({{"kind", to_string(r.kind)}, {"z", cx(r.location)}, {"index", r.index}});
  j["poles"] = poles;
  j["P"] = an.P;
  if (an.fixed_infinity_index) j["infinity_index"] = *an.fixed_infinity_index;
  if (an.limit_at_infinity) j["limit_at_infinity"] = cx(*an.limit_at_infinity);
  json iso = json::array();
  for (const auto& m : an.critical.isolated) iso.push_back({{"z", cx(m.z)}, {"omega_abs", num(m.omega_limit_abs)}});
  j["isolated_critical_points"] = iso;
  json verts = json::array();
  for (const auto& v : an.critical.vertices) verts.push_back({{"z", cx(v.z)}, {"branching", v.branching}});
  j["vertices"] = verts;
  json curves = json::array();
  for (size_t i = 0; i < an.critical.curves.size(); ++i) {
    json c = {{"id", an.critical.curves[i].component_id}, {"samples", an.critical.curves[i].samples.size()}};
    if (i < an.caustics.size()) {
      json cusps = json::array();
      for (const auto& q : an.caustics[i].cusps) cusps.push_back({{"t", num(q.t)}, {"z", cx(q.z)}, {"w", cx(q.w)}});
      c["cusps"] = cusps;
    }
    curves.push_back(c);
  }
  j["critical_curves"] = curves;
  j["caustic_box"] = {num(an.box.xmin), num(an.box.xmax), num(an.box.ymin), num(an.box.ymax)};
  j["margin"] = num(an.margin);
  return j.dump(2);
}

std::string count_json(const CountReport& r) {
  json w = json::array();
  for (const auto& e : r.windings) w.push_back({{"curve", e.component_id}, {"winding", e.winding}});
  json j = {{"eta", cx(r.eta)},  {"N", r.N},           {"P", r.P}, {"ind_infinity", r.ind_infinity}, {"windings", w},
            {"route", to_string(r.route)}, {"clearance", num(r.clearance)}};
  return j.dump(2);
}

std::string solve_json(const SolveReport& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"z", cx(p.z)}, {"sense", to_string(p.sense)}, {"residual", num(p.residual)}, {"iterations", p.iterations}});
  json j = {{"eta", cx(r.eta)},         {"expected", r.expected},       {"certified", r.certified},
            {"escalations", r.escalations}, {"warnings", r.warnings}, {"preimages", pts}};
  return j.dump(2);
}

std::string tiles_json(const TileReport& r) {
  json tiles = json::array();
  for (const auto& t : r.tiles)
    tiles.push_back({{"id", t.id},
                     {"representative", cx(t.representative)},
                     {"winding_vector", t.winding_vector},
                     {"count", t.preimage_count},
                     {"shape", to_string(t.shape)},
                     {"neighbors", t.neighbors},
                     {"clearance", num(t.clearance)}});
  json j = {{"grid", r.grid}, {"dropped", r.dropped}, {"tiles", tiles}};
  return j.dump(2);
}

std::string scan_json(const ValenceScan& s) {
  json path = json::array();
  for (const Cx& z : s.path) path.push_back(cx(z));
  json j = {{"map", s.map_id},
            {"achieved_counts", s.achieved_counts},
            {"crossing_counts", s.crossing_counts},
            {"records", s.records.size()},
            {"detours", s.detours},
            {"path", path}};
  return j.dump(2);
}

}  // namespace harmonic
