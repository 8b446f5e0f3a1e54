#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dbubble/candidates.hpp"
#include "dbubble/equilibrium.hpp"
#include "dbubble/geometry.hpp"
#include "dbubble/transforms.hpp"

namespace dbubble {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// Twelve significant digits, the fixed format of every report.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_rounded(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

namespace detail {

// Round through the fixed text format so JSON numbers match the CSV exactly.
inline Json json_number(double v) {
  if (!std::isfinite(v)) return format_number(v);
  return std::stod(format_number(v));
}

inline Json json_point(Point p) { return Json::array({json_number(p.x), json_number(p.y)}); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Perimeter table.

/// Rows are candidate kinds and columns p values; unrounded rows first, then
/// the three-decimal presentation rows. Failed cells are left empty.
inline std::string table_csv(const PerimeterTable& t) {
  std::ostringstream out;
  out << "kind";
  for (const auto& r : t.rows) out << ',' << format_number(r.p);
  out << "\r\n";
  for (bool rounded : {false, true}) {
    for (auto kind : kAllCandidateKinds) {
      out << to_string(kind) << (rounded ? "_rounded" : "");
      for (const auto& r : t.rows) {
        out << ',';
        const auto& cell = r.cell(kind);
        if (cell.value) out << (rounded ? format_rounded(*cell.value) : format_number(*cell.value));
      }
      out << "\r\n";
    }
  }
  return out.str();
}

inline Json table_json(const PerimeterTable& t, double tol) {
  Json j;
  j["version"] = kVersion;
  j["areas"] = Json::array({1.0, 1.0});
  j["construction_tolerance"] = detail::json_number(tol);
  j["quadrature_tolerance"] = detail::json_number(kDefaultQuadratureTolerance);
  Json ps = Json::array();
  for (const auto& r : t.rows) ps.push_back(detail::json_number(r.p));
  j["p"] = ps;
  Json rows = Json::array();
  for (auto kind : kAllCandidateKinds) {
    Json row;
    row["kind"] = to_string(kind);
    Json values = Json::array();
    Json rounded = Json::array();
    Json errors = Json::array();
    for (const auto& r : t.rows) {
      const auto& cell = r.cell(kind);
      values.push_back(cell.value ? detail::json_number(*cell.value) : Json());
      rounded.push_back(cell.value ? Json(format_rounded(*cell.value)) : Json());
      errors.push_back(cell.value ? Json() : Json(cell.error));
    }
    row["values"] = values;
    row["rounded"] = rounded;
    row["errors"] = errors;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

// ---------------------------------------------------------------------------
// Candidate geometry.

inline Json segment_json(const Segment& s) {
  Json j;
  if (const auto* a = std::get_if<CircularArc>(&s)) {
    j["type"] = "arc";
    j["center"] = detail::json_point(a->center);
    j["radius"] = detail::json_number(a->radius);
    j["start_angle"] = detail::json_number(a->start_angle);
    j["end_angle"] = detail::json_number(a->end_angle);
    j["ccw"] = a->ccw;
  } else if (const auto* l = std::get_if<LineSegment>(&s)) {
    j["type"] = "line";
    j["a"] = detail::json_point(l->a);
    j["b"] = detail::json_point(l->b);
  } else {
    const auto& p = std::get<Polyline>(s);
    j["type"] = "polyline";
    j["count"] = p.size();
    Json pts = Json::array();
    for (const auto& q : p.points) pts.push_back(detail::json_point(q));
    j["points"] = pts;
  }
  return j;
}

inline Json curve_json(const BoundaryCurve& c) {
  Json segs = Json::array();
  for (const auto& s : c.segments()) segs.push_back(segment_json(s));
  return segs;
}

inline Json candidate_json(const DoubleBubbleCandidate& c) {
  Json j;
  j["version"] = kVersion;
  j["kind"] = to_string(c.kind);
  j["p"] = detail::json_number(c.p.value());
  j["weighted_areas"] = Json::array({detail::json_number(c.weighted_areas[0]), detail::json_number(c.weighted_areas[1])});
  j["weighted_perimeter"] = detail::json_number(c.weighted_perimeter);
  Json params;
  for (const auto& [k, v] : c.parameters) params[k] = detail::json_number(v);
  j["parameters"] = params;
  Json verts = Json::array();
  for (const auto& v : c.vertices) verts.push_back(detail::json_point(v));
  j["vertices"] = verts;
  Json edges = Json::array();
  for (const auto& e : c.edges) {
    Json ej;
    ej["left"] = e.left;
    ej["right"] = e.right;
    ej["interface"] = e.is_interface();
    ej["segments"] = curve_json(e.curve);
    edges.push_back(ej);
  }
  j["edges"] = edges;
  return j;
}

namespace detail {

inline std::string svg_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string svg_xy(Point p) { return svg_number(p.x) + "," + svg_number(p.y); }

// Path data for a curve in mathematical coordinates; the caller flips y.
inline void append_path(std::string& d, const BoundaryCurve& c, bool move) {
  if (move) d += "M" + svg_xy(c.start());
  for (const auto& s : c.segments()) {
    if (const auto* a = std::get_if<CircularArc>(&s)) {
      // Split so no piece reaches a full turn.
      const int pieces = a->sweep() > kPi ? 2 : 1;
      for (int k = 1; k <= pieces; ++k) {
        const double th = a->start_angle + (a->end_angle - a->start_angle) * k / pieces;
        d += "A" + svg_number(a->radius) + "," + svg_number(a->radius) + " 0 0," + (a->ccw ? "1 " : "0 ") +
             svg_xy(a->at_angle(th));
      }
    } else if (const auto* l = std::get_if<LineSegment>(&s)) {
      d += "L" + svg_xy(l->b);
    } else {
      const auto& p = std::get<Polyline>(s);
      const std::size_t stride = std::max<std::size_t>(1, (p.size() - 1) / 512);
      for (std::size_t i = stride; i < p.size(); i += stride) d += "L" + svg_xy(p.points[i]);
      if ((p.size() - 1) % stride != 0) d += "L" + svg_xy(p.points.back());
    }
  }
  if (c.closed()) d += "Z";
}

}  // namespace detail

/// SVG 1.1 drawing: region 1 hatched, region 2 dotted, one stroked path per
/// boundary piece, and the origin marked.
inline std::string candidate_svg(const DoubleBubbleCandidate& c) {
  double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
  for (const auto& e : c.edges) {
    for (const auto& q : e.curve.sample_points(64)) {
      lo_x = std::min(lo_x, q.x);
      hi_x = std::max(hi_x, q.x);
      lo_y = std::min(lo_y, q.y);
      hi_y = std::max(hi_y, q.y);
    }
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double mx = 0.1 * std::max(hi_x - lo_x, 1e-9 * span);
  const double my = 0.1 * std::max(hi_y - lo_y, 1e-9 * span);
  const double w = hi_x - lo_x + 2.0 * mx;
  const double h = hi_y - lo_y + 2.0 * my;
  const double stroke = 0.004 * std::max(w, h);
  using detail::svg_number;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"" +
       svg_number(600.0 * h / w) + "\" viewBox=\"" + svg_number(lo_x - mx) + " " + svg_number(-(hi_y + my)) + " " +
       svg_number(w) + " " + svg_number(h) + "\">\n";
  const double cell = 0.03 * std::max(w, h);
  s += "<defs>\n";
  s += "<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"" + svg_number(cell) + "\" height=\"" +
       svg_number(cell) + "\"><path d=\"M0," + svg_number(cell) + "L" + svg_number(cell) + ",0\" stroke=\"#3465a4\" stroke-width=\"" +
       svg_number(stroke / 2) + "\"/></pattern>\n";
  s += "<pattern id=\"dots\" patternUnits=\"userSpaceOnUse\" width=\"" + svg_number(cell) + "\" height=\"" +
       svg_number(cell) + "\"><circle cx=\"" + svg_number(cell / 2) + "\" cy=\"" + svg_number(cell / 2) + "\" r=\"" +
       svg_number(cell / 6) + "\" fill=\"#cc0000\"/></pattern>\n";
  s += "</defs>\n";
  s += "<g transform=\"scale(1,-1)\">\n";
  const Region* regions[2] = {&c.region1, &c.region2};
  const char* fills[2] = {"url(#hatch)", "url(#dots)"};
  for (int i = 0; i < 2; ++i) {
    std::string d;
    for (const auto& loop : regions[i]->loops) detail::append_path(d, loop, true);
    s += "<path class=\"region" + std::to_string(i + 1) + "\" d=\"" + d + "\" fill=\"" + fills[i] +
         "\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
  }
  for (const auto& e : c.edges) {
    std::string d;
    detail::append_path(d, e.curve, true);
    s += "<path class=\"" + std::string(e.is_interface() ? "interface" : "boundary") + "\" d=\"" + d +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + svg_number(stroke) + "\"/>\n";
  }
  s += "<circle class=\"origin\" cx=\"0\" cy=\"0\" r=\"" + svg_number(2.5 * stroke) + "\" fill=\"black\"/>\n";
  s += "</g>\n</svg>\n";
  return s;
}

// ---------------------------------------------------------------------------
// Other reports.

inline std::string pinch_csv(const std::vector<PinchSample>& samples) {
  std::ostringstream out;
  out << "r,saved_perimeter,added_perimeter,delta,area_imbalance\r\n";
  for (const auto& s : samples) {
    out << format_number(s.r) << ',' << format_number(s.result.saved_perimeter) << ','
        << format_number(s.result.added_perimeter) << ',' << format_number(s.result.delta) << ','
        << format_number(s.result.area_imbalance) << "\r\n";
  }
  return out.str();
}

inline Json geodesic_json(const GeodesicPath& g, DensityExponent p) {
  Json j;
  j["version"] = kVersion;
  j["p"] = detail::json_number(p.value());
  j["kind"] = to_string(g.kind);
  Json w = Json::array();
  for (const auto& q : g.waypoints) w.push_back(detail::json_point(q));
  j["waypoints"] = w;
  j["weighted_length"] = detail::json_number(g.weighted_length);
  j["via_origin_length"] = detail::json_number(g.via_origin_length);
  j["chord_length"] = std::isfinite(g.chord_length) ? detail::json_number(g.chord_length) : Json();
  return j;
}

}  // namespace dbubble
