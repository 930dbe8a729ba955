#include "conformal_cli/config.hpp"

#include "conformal/errors.hpp"
#include "conformal/theorem.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace conformal::cli {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::config, message); }

const std::vector<std::string> kVars{"u", "v"};

std::array<expr::Expression, 3> parse_triple(const json& spec, std::string_view where) {
  if (!spec.is_object()) fail(std::string(where) + " must be an object with xx, xy, yy");
  check_keys(spec, {"xx", "xy", "yy"}, where);
  for (const char* k : {"xx", "xy", "yy"}) {
    if (!spec.contains(k)) fail(std::string(where) + " is missing '" + k + "'");
  }
  return {expr::Expression::parse(expression_text(spec["xx"], where), kVars),
          expr::Expression::parse(expression_text(spec["xy"], where), kVars),
          expr::Expression::parse(expression_text(spec["yy"], where), kVars)};
}

std::vector<std::array<expr::Expression, 3>> parse_triples(const json& spec, const Surface& surface,
                                                           std::string_view where) {
  std::vector<std::array<expr::Expression, 3>> out;
  if (spec.is_array()) {
    if (spec.size() != surface.charts().size()) {
      fail(std::string(where) + " needs one entry per chart");
    }
    for (const auto& item : spec) out.push_back(parse_triple(item, where));
  } else {
    out.push_back(parse_triple(spec, where));
  }
  return out;
}

}  // namespace

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    json doc = json::parse(buffer.str());
    if (!doc.is_object()) fail("config must be a JSON object");
    return doc;
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
}

void check_keys(const json& object, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (auto a : allowed) known = known || it.key() == a;
    if (!known) fail("unknown key '" + it.key() + "' in " + std::string(where));
  }
}

double get_number(const json& object, const char* key, double fallback) {
  if (!object.contains(key)) return fallback;
  if (!object[key].is_number()) fail(std::string("'") + key + "' must be a number");
  return object[key].get<double>();
}

int get_int(const json& object, const char* key, int fallback) {
  if (!object.contains(key)) return fallback;
  if (!object[key].is_number_integer()) fail(std::string("'") + key + "' must be an integer");
  return object[key].get<int>();
}

bool get_bool(const json& object, const char* key, bool fallback) {
  if (!object.contains(key)) return fallback;
  if (!object[key].is_boolean()) fail(std::string("'") + key + "' must be a boolean");
  return object[key].get<bool>();
}

std::string expression_text(const json& value, std::string_view where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
    return buf[0] == '-' ? "(" + std::string(buf) + ")" : std::string(buf);
  }
  fail(std::string(where) + " entries must be expression strings or numbers");
}

void apply_tolerances(const json& t, ZeroSearchOptions& o) {
  if (!t.is_object()) fail("tolerances must be an object");
  check_keys(t,
             {"activation", "zero", "newton", "max_iterations", "dedupe", "boundary_margin",
              "initial_samples", "max_depth"},
             "tolerances");
  o.winding.activation = get_number(t, "activation", o.winding.activation);
  o.zero_tolerance = get_number(t, "zero", o.zero_tolerance);
  o.newton_tolerance = get_number(t, "newton", o.newton_tolerance);
  o.max_iterations = get_int(t, "max_iterations", o.max_iterations);
  o.dedupe_radius = get_number(t, "dedupe", o.dedupe_radius);
  o.boundary_margin = get_number(t, "boundary_margin", o.boundary_margin);
  o.winding.initial_samples =
      static_cast<std::size_t>(get_int(t, "initial_samples", static_cast<int>(o.winding.initial_samples)));
  o.winding.max_depth = get_int(t, "max_depth", o.winding.max_depth);
}

ZeroSearchOptions search_options(const json& config) {
  ZeroSearchOptions o;
  if (const char* env = std::getenv(kToleranceEnv); env && *env) {
    json t;
    try {
      t = json::parse(env);
    } catch (const json::parse_error& e) {
      fail(std::string(kToleranceEnv) + " is not valid JSON: " + e.what());
    }
    apply_tolerances(t, o);
  }
  if (config.contains("tolerances")) apply_tolerances(config["tolerances"], o);
  const int grid = get_int(config, "grid", static_cast<int>(o.grid));
  if (grid < 8) fail("grid must be at least 8");
  o.grid = static_cast<std::size_t>(grid);
  return o;
}

Surface parse_surface(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    fail("surface must be an object with a string 'kind'");
  }
  const std::string kind = spec["kind"];
  if (kind == "disc") {
    check_keys(spec, {"kind", "radius"}, "surface");
    return Surface::disc(get_number(spec, "radius", 1.0));
  }
  if (kind == "annulus") {
    check_keys(spec, {"kind", "inner", "outer"}, "surface");
    return Surface::annulus(get_number(spec, "inner", 0.5), get_number(spec, "outer", 1.0));
  }
  if (kind == "torus") {
    check_keys(spec, {"kind", "tau"}, "surface");
    cplx tau(0.0, 1.0);
    if (spec.contains("tau")) {
      const json& t = spec["tau"];
      if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number()) {
        fail("torus 'tau' must be [re, im]");
      }
      tau = {t[0].get<double>(), t[1].get<double>()};
    }
    return Surface::torus(tau);
  }
  if (kind == "sphere") {
    check_keys(spec, {"kind", "extent"}, "surface");
    return Surface::sphere_atlas(get_number(spec, "extent", 1.6));
  }
  fail("unknown surface kind '" + kind + "'");
}

TensorField parse_metric(const json* spec, const Surface& surface) {
  if (!spec) return TensorField::euclidean();
  return TensorField::from_expressions(TensorRole::metric, parse_triples(*spec, surface, "metric"));
}

TensorField parse_tensor(const json& spec, const Surface& surface, TensorRole role,
                         std::uint64_t seed) {
  if (spec.is_object() && spec.contains("random_trig")) {
    check_keys(spec, {"random_trig"}, "tensor");
    const json& r = spec["random_trig"];
    check_keys(r, {"degree"}, "tensor.random_trig");
    if (surface.kind() != SurfaceKind::torus) fail("random_trig tensors need a torus surface");
    const int degree = get_int(r, "degree", 3);
    if (degree < 0 || degree > 3) fail("random_trig degree must lie in 0..3");
    const auto e = random_torus_tensor(surface.tau(), seed, degree);
    return TensorField::from_expressions(
        role, {{expr::Expression::parse(e[0], kVars), expr::Expression::parse(e[1], kVars),
                expr::Expression::parse(e[2], kVars)}});
  }
  return TensorField::from_expressions(role, parse_triples(spec, surface, "tensor"));
}

}  // namespace conformal::cli
