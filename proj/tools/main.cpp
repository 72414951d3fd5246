// thurston: command line front end for the S2xR / H2xR kernel.
//
//   thurston distance --geometry s2r --p1 1,0,0 --p2 0,1,0
//   thurston circumsphere --geometry h2r --input h2r_tetrahedron.json
//   thurston ceva-check --geometry s2r --random 100 --seed 7
//
// Results go to stdout (or --output) as JSON; errors go to stderr as
// {"error": code, "message": text} with a nonzero exit status.

#include "io.hpp"

#include "thurston/apollonius.hpp"
#include "thurston/circumsphere.hpp"
#include "thurston/geodesic.hpp"
#include "thurston/theorems.hpp"
#include "thurston/triangle_surface.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <thread>

using thurston::io::Json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitGeometry = 2;
constexpr int kExitInternal = 3;

unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("GEO_NUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

void emit(const Json& j, const std::string& path) {
  const std::string text = thurston::io::dump(j);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw thurston::GeometryError(thurston::ErrorCode::MalformedInput,
                                  "cannot write output file '" + path + "'");
  }
  out << text;
}

void write_obj_file(const thurston::SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw thurston::GeometryError(thurston::ErrorCode::MalformedInput,
                                  "cannot write OBJ file '" + path + "'");
  }
  thurston::write_obj(out, mesh);
}

Json header(const std::string& command, thurston::GeometryKind g) {
  Json j;
  j["command"] = command;
  j["geometry"] = std::string(thurston::to_string(g));
  return j;
}

thurston::Box parse_box(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  thurston::Box box;
  if (v.size() == 2) {
    box.lo.setConstant(v[0]);
    box.hi.setConstant(v[1]);
  } else if (v.size() == 6) {
    box.lo = {v[0], v[1], v[2]};
    box.hi = {v[3], v[4], v[5]};
  } else {
    throw thurston::GeometryError(thurston::ErrorCode::MalformedInput,
                                  "--box takes lo,hi or xlo,ylo,zlo,xhi,yhi,zhi");
  }
  if ((box.hi.array() <= box.lo.array()).any()) {
    throw thurston::GeometryError(thurston::ErrorCode::MalformedInput, "--box has hi <= lo");
  }
  return box;
}

Json box_json(const thurston::Box& b) {
  return {{"lo", Json::array({b.lo.x(), b.lo.y(), b.lo.z()})},
          {"hi", Json::array({b.hi.x(), b.hi.y(), b.hi.z()})}};
}

std::vector<thurston::TriangleKind> kinds_from(const std::string& s) {
  if (s == "general") return {thurston::TriangleKind::General};
  if (s == "fibre") return {thurston::TriangleKind::Fibre};
  if (s == "both") return {thurston::TriangleKind::General, thurston::TriangleKind::Fibre};
  throw thurston::GeometryError(thurston::ErrorCode::MalformedInput,
                                "--kind must be general, fibre or both");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace thurston;

  CLI::App app{"Geodesic computations in the S2xR and H2xR geometries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "thurston 0.1.0");

  std::string geometry;
  std::string output;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-g,--geometry", geometry, "s2r or h2r");
    sub->add_option("-o,--output", output, "JSON output path (default stdout)");
  };

  std::string p1_text, p2_text;
  auto* distance_cmd = app.add_subcommand("distance", "Geodesic distance of two points");
  common(distance_cmd);
  distance_cmd->add_option("--p1", p1_text, "x,y,z")->required();
  distance_cmd->add_option("--p2", p2_text, "x,y,z")->required();

  double gu = 0.0, gv = 0.0, gtau = 1.0;
  int gsamples = 64;
  std::string target_text;
  auto* geodesic_cmd = app.add_subcommand("geodesic", "Sample a geodesic from the origin point");
  common(geodesic_cmd);
  geodesic_cmd->add_option("--u", gu, "direction angle u");
  geodesic_cmd->add_option("--v", gv, "inclination v");
  geodesic_cmd->add_option("--tau", gtau, "arc length")->check(CLI::NonNegativeNumber);
  geodesic_cmd->add_option("--target", target_text, "x,y,z: invert the geodesic to this point");
  geodesic_cmd->add_option("--samples", gsamples, "polyline segments")->check(CLI::PositiveNumber);

  std::string mesh_input, box_text = "-3,3", obj_path;
  double lambda = 1.0;
  int resolution = 64;
  auto* mesh_cmd = app.add_subcommand("apollonius-mesh", "Mesh an Apollonius surface");
  common(mesh_cmd);
  mesh_cmd->add_option("--input", mesh_input, "JSON {geometry, p1, p2, lambda} or file");
  mesh_cmd->add_option("--p1", p1_text, "x,y,z");
  mesh_cmd->add_option("--p2", p2_text, "x,y,z");
  mesh_cmd->add_option("--lambda", lambda, "distance ratio")->check(CLI::NonNegativeNumber);
  mesh_cmd->add_option("--box", box_text, "lo,hi or xlo,ylo,zlo,xhi,yhi,zhi");
  mesh_cmd->add_option("--resolution", resolution, "cells per axis")->check(CLI::Range(8, 1024));
  mesh_cmd->add_option("--obj", obj_path, "OBJ output path");

  std::string tet_input, vertices_text;
  int newton_iterations = 200;
  double newton_tol = 1e-12;
  auto* sphere_cmd = app.add_subcommand("circumsphere", "Circumscribed sphere of a tetrahedron");
  common(sphere_cmd);
  sphere_cmd->add_option("--input", tet_input, "JSON {geometry, vertices} or file");
  sphere_cmd->add_option("--vertices", vertices_text, "x,y,z;x,y,z;x,y,z;x,y,z");
  sphere_cmd->add_option("--newton-tol", newton_tol, "Newton residual tolerance");
  sphere_cmd->add_option("--newton-iterations", newton_iterations, "Newton iteration cap");

  std::string tri_input, sidecar_path;
  int grid = 8;
  SurfaceOptions surface_options;
  auto* tri_cmd = app.add_subcommand("triangle-surface", "Sample the surface of a geodesic triangle");
  common(tri_cmd);
  tri_cmd->add_option("--input", tri_input, "JSON {geometry, vertices} or file");
  tri_cmd->add_option("--vertices", vertices_text, "x,y,z;x,y,z;x,y,z");
  tri_cmd->add_option("--grid", grid, "cells per lambda axis")->check(CLI::Range(2, 256));
  tri_cmd->add_option("--obj", obj_path, "OBJ output path");
  tri_cmd->add_option("--sidecar", sidecar_path, "JSON sidecar path (default: the main output)");
  tri_cmd->add_option("--box-scale", surface_options.box_scale, "search box half-width / max |a_i|");
  tri_cmd->add_option("--trace-tol", surface_options.tol, "curve residual tolerance");
  tri_cmd->add_option("--seed-cells", surface_options.seed_cells, "seed scan cells per axis");

  int random_count = 0;
  std::uint64_t seed = 1;
  std::string kind_text = "both", theorem_input;
  double theorem_tol = 1e-7;
  bool dump_configs = false;
  auto theorem = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--input", theorem_input, "JSON config or file");
    sub->add_option("--random", random_count, "number of random configurations");
    sub->add_option("--seed", seed, "base seed; config k uses seed + k");
    sub->add_option("--kind", kind_text, "general, fibre or both");
    sub->add_option("--tol", theorem_tol, "acceptance tolerance on the product");
    sub->add_flag("--dump-configs", dump_configs, "include every generated configuration");
  };
  auto* ceva_cmd = app.add_subcommand("ceva-check", "Ceva product for cevian configurations");
  theorem(ceva_cmd);
  auto* menelaus_cmd = app.add_subcommand("menelaus-check", "Menelaus product for transversals");
  theorem(menelaus_cmd);

  int oracle_samples = 1000, oracle_steps = 10000;
  double tau_max = 3.0;
  auto* oracle_cmd = app.add_subcommand("oracle-diff", "Closed-form distance vs arc-length quadrature");
  common(oracle_cmd);
  oracle_cmd->add_option("--samples", oracle_samples, "random geodesics")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--steps", oracle_steps, "Simpson steps")->check(CLI::Range(2, 10000000));
  oracle_cmd->add_option("--tau-max", tau_max, "largest arc length")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << io::error_json("malformed_input", e.what()).dump() << "\n";
    return kExitUsage;
  }

  try {
    if (distance_cmd->parsed()) {
      const GeometryKind g = io::geometry_from(Json(), geometry);
      const Point p1 = io::parse_point(p1_text);
      const Point p2 = io::parse_point(p2_text);
      Json j = header("distance", g);
      j["p1"] = io::to_json(p1);
      j["p2"] = io::to_json(p2);
      j["distance"] = distance(g, p1, p2);
      j["distance_via_inversion"] = distance_via_inversion(g, p1, p2);
      emit(j, output);
    } else if (geodesic_cmd->parsed()) {
      const GeometryKind g = io::geometry_from(Json(), geometry);
      GeodesicParams params{gu, gv, gtau};
      Json j = header("geodesic", g);
      if (!target_text.empty()) {
        const Inversion inv = invert_geodesic(g, io::parse_point(target_text));
        params = inv.params;
        j["target"] = io::to_json(io::parse_point(target_text));
        j["branch"] = std::string(to_string(inv.branch));
      }
      j["parameters"] = {{"u", params.u}, {"v", params.v}, {"tau", params.tau}, {"samples", gsamples}};
      Json poly = Json::array();
      for (int k = 0; k <= gsamples; ++k) {
        poly.push_back(io::to_json(geodesic_point(g, params.u, params.v, params.tau * k / gsamples)));
      }
      j["endpoint"] = io::to_json(geodesic_point(g, params));
      j["polyline"] = poly;
      emit(j, output);
    } else if (mesh_cmd->parsed()) {
      Json in = mesh_input.empty() ? Json::object() : io::load_input(mesh_input);
      const GeometryKind g = io::geometry_from(in, geometry);
      ApolloniusSpec spec{g, {}, {}, lambda};
      spec.p1 = in.contains("p1") ? io::point_from_json(in["p1"]) : io::parse_point(p1_text);
      spec.p2 = in.contains("p2") ? io::point_from_json(in["p2"]) : io::parse_point(p2_text);
      if (in.contains("lambda")) spec.lambda = in["lambda"].get<double>();
      const Box box = parse_box(box_text);
      MeshOptions options;
      options.threads = thread_cap();
      const MeshResult result =
          extract_isosurface(spec, box, {resolution, resolution, resolution}, options);
      Json j = header("apollonius-mesh", g);
      j["parameters"] = {{"p1", io::to_json(spec.p1)},
                         {"p2", io::to_json(spec.p2)},
                         {"lambda", spec.lambda},
                         {"box", box_json(box)},
                         {"resolution", resolution},
                         {"edge_refine_iterations", options.edge_refine_iterations},
                         {"threads", options.threads}};
      j["mesh"] = io::mesh_report(result);
      if (spec.lambda == 1.0) {
        j["mesh"]["bisector_symmetry_defect"] = bisector_symmetry_defect(spec, result.mesh);
      }
      if (!obj_path.empty()) {
        write_obj_file(result.mesh, obj_path);
        j["obj"] = obj_path;
      }
      emit(j, output);
    } else if (sphere_cmd->parsed()) {
      Json in = tet_input.empty() ? Json::object() : io::load_input(tet_input);
      const GeometryKind g = io::geometry_from(in, geometry);
      const std::vector<Point> v = in.contains("vertices") ? io::points_from_json(in["vertices"], 4)
                                                           : io::parse_points(vertices_text);
      if (v.size() != 4) {
        throw GeometryError(ErrorCode::MalformedInput, "a tetrahedron needs four vertices");
      }
      const Tetrahedron t{{v[0], v[1], v[2], v[3]}};
      CircumsphereOptions options;
      options.newton.tol = newton_tol;
      options.newton.max_iterations = newton_iterations;
      const CircumsphereResult r = circumscribed_sphere(g, t, options);
      Json j = header("circumsphere", g);
      Json verts = Json::array();
      for (const Point& p : v) verts.push_back(io::to_json(p));
      j["parameters"] = {{"vertices", verts},
                         {"newton_tol", newton_tol},
                         {"newton_iterations", newton_iterations},
                         {"fd_step", options.newton.fd_step}};
      j.update(io::to_json(r, g, t));
      emit(j, output);
    } else if (tri_cmd->parsed()) {
      Json in = tri_input.empty() ? Json::object() : io::load_input(tri_input);
      const GeometryKind g = io::geometry_from(in, geometry);
      const std::vector<Point> v = in.contains("vertices") ? io::points_from_json(in["vertices"], 3)
                                                           : io::parse_points(vertices_text);
      if (v.size() != 3) {
        throw GeometryError(ErrorCode::MalformedInput, "a triangle needs three vertices");
      }
      if (in.contains("grid")) grid = in["grid"].get<int>();
      const GeodesicTriangle tri = classify_triangle(g, v[0], v[1], v[2]);
      const TriangleSurfaceSample sample = sample_triangle_surface(tri, grid, surface_options);
      Json j = header("triangle-surface", g);
      j["parameters"] = {{"grid", grid},
                         {"lambda_map", "tan(s*pi/2), s = k/grid"},
                         {"box_scale", surface_options.box_scale},
                         {"trace_tol", surface_options.tol},
                         {"seed_cells", surface_options.seed_cells},
                         {"tie_tol", surface_options.tie_tol}};
      Json body = io::to_json(sample);
      if (!obj_path.empty()) {
        write_obj_file(sample_mesh(sample), obj_path);
        j["obj"] = obj_path;
      }
      if (!sidecar_path.empty()) {
        Json sidecar = header("triangle-surface", g);
        sidecar["parameters"] = j["parameters"];
        sidecar.update(body);
        emit(sidecar, sidecar_path);
        j["sidecar"] = sidecar_path;
        j["kind"] = body["kind"];
        j["summary"] = body["summary"];
      } else {
        j.update(body);
      }
      emit(j, output);
    } else if (ceva_cmd->parsed() || menelaus_cmd->parsed()) {
      const bool ceva = ceva_cmd->parsed();
      const std::string name = ceva ? "ceva-check" : "menelaus-check";
      const double expected = ceva ? 1.0 : -1.0;
      if (!theorem_input.empty()) {
        const Json in = io::load_input(theorem_input);
        const GeometryKind g = io::geometry_from(in, geometry);
        const TheoremProduct p = ceva ? ceva_product(io::ceva_from_json(in, g))
                                      : menelaus_product(io::menelaus_from_json(in, g));
        Json j = header(name, g);
        j["parameters"] = {{"tol", theorem_tol}};
        j.update(io::to_json(p));
        j["deviation"] = std::abs(p.product - expected);
        j["pass"] = std::abs(p.product - expected) <= theorem_tol;
        emit(j, output);
      } else {
        if (random_count <= 0) {
          throw GeometryError(ErrorCode::MalformedInput, "give --input or --random N");
        }
        const GeometryKind g = io::geometry_from(Json(), geometry);
        Json j = header(name, g);
        j["parameters"] = {{"random", random_count}, {"seed", seed}, {"kind", kind_text}, {"tol", theorem_tol}};
        Json suites = Json::array();
        bool pass = true;
        for (TriangleKind kind : kinds_from(kind_text)) {
          Json s;
          s["kind"] = std::string(to_string(kind));
          double worst = 0.0;
          int experimental = 0;
          Json configs = Json::array();
          for (int k = 0; k < random_count; ++k) {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
            Json cj;
            TheoremProduct p;
            if (ceva) {
              const CevaConfig c = random_ceva_config(g, kind, rng);
              p = ceva_product(c);
              if (dump_configs) cj = io::to_json(c);
            } else {
              const MenelausConfig c = random_menelaus_config(g, kind, rng);
              p = menelaus_product(c);
              if (dump_configs) cj = io::to_json(c);
            }
            worst = std::max(worst, std::abs(p.product - expected));
            experimental += p.experimental;
            if (dump_configs) {
              cj["seed"] = seed + static_cast<std::uint64_t>(k);
              cj.update(io::to_json(p));
              configs.push_back(cj);
            }
          }
          s["count"] = random_count;
          s["experimental"] = experimental;
          s["max_deviation"] = worst;
          s["pass"] = worst <= theorem_tol;
          pass = pass && worst <= theorem_tol;
          if (dump_configs) s["configs"] = configs;
          suites.push_back(s);
        }
        j["suites"] = suites;
        j["pass"] = pass;
        emit(j, output);
      }
    } else if (oracle_cmd->parsed()) {
      const GeometryKind g = io::geometry_from(Json(), geometry);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> du(-std::numbers::pi, std::numbers::pi);
      std::uniform_real_distribution<double> dv(-std::numbers::pi / 2, std::numbers::pi / 2);
      std::uniform_real_distribution<double> dt(0.0, tau_max);
      double worst = 0.0;
      double sum = 0.0;
      Json worst_sample;
      for (int k = 0; k < oracle_samples; ++k) {
        const double u = du(rng);
        const double v = dv(rng);
        const double tau = dt(rng);
        const double closed = distance(g, kOrigin, geodesic_point(g, u, v, tau));
        const double quad = arc_length_quadrature(g, u, v, tau, oracle_steps);
        const double dev = std::abs(closed - quad);
        sum += dev;
        if (dev >= worst) {
          worst = dev;
          worst_sample = {{"u", u}, {"v", v}, {"tau", tau}, {"closed_form", closed}, {"quadrature", quad}};
        }
      }
      Json j = header("oracle-diff", g);
      j["parameters"] = {{"samples", oracle_samples}, {"steps", oracle_steps}, {"tau_max", tau_max}, {"seed", seed}};
      j["max_deviation"] = worst;
      j["mean_deviation"] = sum / oracle_samples;
      j["worst_sample"] = worst_sample;
      emit(j, output);
    }
  } catch (const GeometryError& e) {
    std::cerr << io::error_json(to_string(e.code()), e.what()).dump() << "\n";
    return kExitGeometry;
  } catch (const Json::exception& e) {
    std::cerr << io::error_json("malformed_input", e.what()).dump() << "\n";
    return kExitGeometry;
  } catch (const std::exception& e) {
    std::cerr << io::error_json("internal", e.what()).dump() << "\n";
    return kExitInternal;
  }
  return 0;
}
