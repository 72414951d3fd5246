#pragma once

// JSON and text conversions shared by the command line tool and the tests.

#include "thurston/apollonius.hpp"
#include "thurston/circumsphere.hpp"
#include "thurston/geometry.hpp"
#include "thurston/theorems.hpp"
#include "thurston/triangle_surface.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace thurston::io {

using Json = nlohmann::ordered_json;

/// Value printed with 12 significant digits and parsed back.
double round12(double x);
/// Applies round12 to every floating point number in place.
void round_numbers(Json& j);
/// round_numbers followed by a two-space indented dump and a newline.
std::string dump(Json j);

/// "x,y,z" (x0 = 1 implicit).
Point parse_point(std::string_view text);
/// "x,y,z;x,y,z;..."
std::vector<Point> parse_points(std::string_view text);

Json to_json(const Point& p);
Point point_from_json(const Json& j);
std::vector<Point> points_from_json(const Json& j, std::size_t expected);

/// Inline JSON when the argument starts with '{', otherwise a file path.
Json load_input(const std::string& arg);

/// Geometry from `j["geometry"]` when present, else from the flag value; the
/// two must agree when both are given.
GeometryKind geometry_from(const Json& j, const std::string& flag);

Json to_json(const CircumsphereResult& r, GeometryKind g, const Tetrahedron& t);
Json mesh_report(const MeshResult& r);
Json to_json(const RatioCheck& c);
Json to_json(const SampleCell& c);
Json to_json(const TriangleSurfaceSample& s);
Json to_json(const TheoremProduct& p);

Json to_json(const CevaConfig& c);
Json to_json(const MenelausConfig& c);
CevaConfig ceva_from_json(const Json& j, GeometryKind g);
MenelausConfig menelaus_from_json(const Json& j, GeometryKind g);

Json error_json(std::string_view code, std::string_view message);

}  // namespace thurston::io
