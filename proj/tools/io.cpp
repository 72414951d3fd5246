#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace thurston::io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw GeometryError(ErrorCode::MalformedInput, what);
}

double parse_double(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  const std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size()) malformed("not a number: '" + str + "'");
  return v;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

void round_numbers(Json& j) {
  if (j.is_number_float()) {
    j = round12(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& item : j) round_numbers(item);
  }
}

std::string dump(Json j) {
  round_numbers(j);
  return j.dump(2) + "\n";
}

Point parse_point(std::string_view text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    v.push_back(parse_double(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (v.size() != 3) malformed("point needs three comma separated coordinates: '" + std::string(text) + "'");
  return {v[0], v[1], v[2]};
}

std::vector<Point> parse_points(std::string_view text) {
  std::vector<Point> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    const std::size_t end = semi == std::string_view::npos ? text.size() : semi;
    out.push_back(parse_point(text.substr(start, end - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

Json to_json(const Point& p) { return Json::array({p.x, p.y, p.z}); }

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) malformed("point must be an array [x, y, z]");
  for (const auto& c : j) {
    if (!c.is_number()) malformed("point coordinates must be numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Point> points_from_json(const Json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected) {
    malformed("expected an array of " + std::to_string(expected) + " points");
  }
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(point_from_json(p));
  return out;
}

Json load_input(const std::string& arg) {
  try {
    if (!arg.empty() && arg.front() == '{') return Json::parse(arg);
    std::ifstream in(arg);
    if (!in) malformed("cannot open input file '" + arg + "'");
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    malformed(std::string("malformed JSON: ") + e.what());
  }
}

GeometryKind geometry_from(const Json& j, const std::string& flag) {
  if (j.is_object() && j.contains("geometry")) {
    if (!j["geometry"].is_string()) malformed("\"geometry\" must be a string");
    const GeometryKind g = parse_geometry(j["geometry"].get<std::string>());
    if (!flag.empty() && parse_geometry(flag) != g) {
      malformed("--geometry disagrees with the geometry of the input");
    }
    return g;
  }
  if (flag.empty()) malformed("no geometry given (use --geometry s2r|h2r)");
  return parse_geometry(flag);
}

Json to_json(const CircumsphereResult& r, GeometryKind g, const Tetrahedron& t) {
  Json j;
  j["center"] = to_json(r.center);
  j["radius"] = r.radius ? Json(*r.radius) : Json(nullptr);
  j["classification"] = std::string(to_string(r.classification));
  j["residual"] = r.residual;
  Json d = Json::array();
  if (r.radius) {
    for (const Point& a : t.vertices) d.push_back(distance(g, a, r.center));
  }
  j["vertex_distances"] = d;
  j["solver"] = {{"converged", r.report.converged},
                 {"iterations", r.report.iterations},
                 {"residual_norm", r.report.residual_norm},
                 {"start", r.start_label}};
  Json alts = Json::array();
  for (const Point& p : r.alternatives) alts.push_back(to_json(p));
  j["alternatives"] = alts;
  return j;
}

Json mesh_report(const MeshResult& r) {
  double max_residual = 0.0;
  for (double v : r.mesh.residuals) max_residual = std::max(max_residual, std::abs(v));
  Json j;
  j["outcome"] = r.outcome == MeshOutcome::Ok ? "ok" : "empty";
  j["vertices"] = r.mesh.vertices.size();
  j["triangles"] = r.mesh.triangles.size();
  j["max_abs_residual"] = max_residual;
  j["max_distance_defect"] = r.max_distance_defect;
  j["tolerance"] = r.tolerance;
  j["within_tolerance"] = r.max_distance_defect <= r.tolerance;
  j["skipped_cells"] = r.skipped_cells;
  return j;
}

Json to_json(const RatioCheck& c) {
  return {{"ratio1", c.ratio1}, {"ratio2", c.ratio2}, {"composition", c.composition}};
}

Json to_json(const SampleCell& c) {
  Json j;
  j["i"] = c.i;
  j["j"] = c.j;
  j["lambda1"] = c.lambda1;
  j["lambda2"] = c.lambda2;
  j["status"] = std::string(to_string(c.result.status));
  const bool usable =
      c.result.status == SurfaceStatus::Ok || c.result.status == SurfaceStatus::Endpoint;
  j["point"] = usable ? to_json(c.result.point) : Json(nullptr);
  if (c.result.status == SurfaceStatus::Ok) {
    j["distance_to_a0"] = c.result.distance_to_a0;
    j["defects"] = to_json(c.check);
    j["components"] = c.result.components;
    j["candidates"] = c.result.candidates.size();
    j["truncated"] = c.result.truncated;
  }
  if (!c.result.message.empty()) j["message"] = c.result.message;
  return j;
}

Json to_json(const TriangleSurfaceSample& s) {
  int usable = 0, empty = 0, failed = 0, ambiguous = 0;
  double worst = 0.0;
  Json cells = Json::array();
  for (const SampleCell& c : s.cells) {
    cells.push_back(to_json(c));
    switch (c.result.status) {
      case SurfaceStatus::Ok:
        worst = std::max(worst, c.check.max());
        [[fallthrough]];
      case SurfaceStatus::Endpoint: ++usable; break;
      case SurfaceStatus::EmptyCurve: ++empty; break;
      case SurfaceStatus::Failed: ++failed; break;
    }
    ambiguous += c.result.ambiguous();
  }
  Json j;
  Json verts = Json::array();
  for (const Point& p : s.triangle.v) verts.push_back(to_json(p));
  j["vertices"] = verts;
  j["kind"] = std::string(to_string(s.triangle.kind));
  j["grid"] = s.n;
  j["summary"] = {{"usable", usable},
                  {"empty_curve", empty},
                  {"failed", failed},
                  {"ambiguous", ambiguous},
                  {"max_ratio_defect", worst}};
  if (s.triangle.kind == TriangleKind::Fibre) {
    const PlaneFit fit = fit_plane_through_origin(s);
    j["summary"]["plane_normal"] = Json::array({fit.normal.x(), fit.normal.y(), fit.normal.z()});
    j["summary"]["plane_deviation"] = fit.max_deviation;
  }
  const auto side = side_deviation(s);
  j["summary"]["side_deviation"] = Json::array({side[0], side[1], side[2]});
  j["cells"] = cells;
  return j;
}

Json to_json(const TheoremProduct& p) {
  return {{"product", p.product},
          {"ratios", Json::array({p.ratios[0], p.ratios[1], p.ratios[2]})},
          {"experimental", p.experimental}};
}

namespace {

Json triangle_json(const GeodesicTriangle& t) {
  Json v = Json::array();
  for (const Point& p : t.v) v.push_back(to_json(p));
  return v;
}

GeodesicTriangle triangle_from(const Json& j, GeometryKind g) {
  if (!j.contains("vertices")) malformed("config needs \"vertices\"");
  const auto v = points_from_json(j["vertices"], 3);
  return classify_triangle(g, v[0], v[1], v[2]);
}

Point member(const Json& j, const char* key) {
  if (!j.contains(key)) malformed(std::string("config needs \"") + key + "\"");
  return point_from_json(j[key]);
}

}  // namespace

Json to_json(const CevaConfig& c) {
  return {{"geometry", std::string(to_string(c.triangle.geometry))},
          {"kind", std::string(to_string(c.triangle.kind))},
          {"vertices", triangle_json(c.triangle)},
          {"t", to_json(c.t)},
          {"p", to_json(c.p)},
          {"q", to_json(c.q)},
          {"r", to_json(c.r)}};
}

Json to_json(const MenelausConfig& c) {
  return {{"geometry", std::string(to_string(c.triangle.geometry))},
          {"kind", std::string(to_string(c.triangle.kind))},
          {"vertices", triangle_json(c.triangle)},
          {"p", to_json(c.p)},
          {"q", to_json(c.q)},
          {"r", to_json(c.r)}};
}

CevaConfig ceva_from_json(const Json& j, GeometryKind g) {
  return {triangle_from(j, g), member(j, "t"), member(j, "p"), member(j, "q"), member(j, "r")};
}

MenelausConfig menelaus_from_json(const Json& j, GeometryKind g) {
  return {triangle_from(j, g), member(j, "p"), member(j, "q"), member(j, "r")};
}

Json error_json(std::string_view code, std::string_view message) {
  return {{"error", std::string(code)}, {"message", std::string(message)}};
}

}  // namespace thurston::io
