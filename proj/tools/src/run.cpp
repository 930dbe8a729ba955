#include "conformal_cli/run.hpp"

#include "conformal/diffeo.hpp"
#include "conformal/embedded.hpp"
#include "conformal/errors.hpp"
#include "conformal/explorer.hpp"
#include "conformal/holo.hpp"
#include "conformal_cli/config.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>

namespace conformal::cli {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::config, message); }

struct Context {
  const json& config;
  const RunOptions& options;
  json result = json::object();
  ExitStatus status = ExitStatus::pass;
};

std::uint64_t config_seed(const json& config, std::uint64_t fallback) {
  if (!config.contains("seed")) return fallback;
  const json& s = config["seed"];
  if (!s.is_number_integer() || s.get<std::int64_t>() < 0) fail("'seed' must be a nonnegative integer");
  return s.get<std::uint64_t>();
}

const json* optional_key(const json& config, const char* key) {
  return config.contains(key) ? &config[key] : nullptr;
}

const json& required_key(const json& config, const char* key) {
  if (!config.contains(key)) fail(std::string("config is missing '") + key + "'");
  return config[key];
}

void maybe_plot(const Context& ctx, const std::string& stem, const EASection& s, const Surface& surface,
                std::size_t n, const std::vector<ConformalPoint>& points) {
  if (!ctx.options.plot) return;
  if (!ctx.options.out) fail("--plot needs --out");
  emit_plot_data(*ctx.options.out, stem, s, surface, n, points);
}

void run_verify(Context& ctx) {
  const json& c = ctx.config;
  check_keys(c, {"surface", "metric", "tensor", "grid", "seed", "tolerances"}, "verify config");
  const Surface surface = parse_surface(required_key(c, "surface"));
  const TensorField g = parse_metric(optional_key(c, "metric"), surface);
  const TensorField h = parse_tensor(required_key(c, "tensor"), surface, TensorRole::general,
                                     config_seed(c, 0));
  const ZeroSearchOptions options = search_options(c);
  const VerificationReport report = verify_theorem1(g, h, surface, options);
  ctx.result = to_json(report);
  ctx.result["surface"] = to_string(surface.kind());
  if (!report.pass) ctx.status = ExitStatus::identity_failure;
  maybe_plot(ctx, "abs_ha", trace_free_section(g, h), surface, options.grid, report.points);
}

void run_diffeo(Context& ctx) {
  const json& c = ctx.config;
  check_keys(c,
             {"surface", "metric", "map", "targets", "theorem2", "area_corollary", "crossings", "grid",
              "tolerances"},
             "diffeo config");
  const Surface surface = parse_surface(required_key(c, "surface"));
  const TensorField g = parse_metric(optional_key(c, "metric"), surface);
  const json& m = required_key(c, "map");
  check_keys(m, {"u", "v"}, "map");
  if (!m.contains("u") || !m.contains("v")) fail("map needs 'u' and 'v' components");
  std::vector<std::size_t> targets;
  if (c.contains("targets")) targets = c["targets"].get<std::vector<std::size_t>>();
  if (!targets.empty() && targets.size() != surface.boundary().size()) {
    fail("'targets' needs one entry per boundary component");
  }
  const DiffeoMap F = DiffeoMap::parse({expression_text(m["u"], "map"), expression_text(m["v"], "map")},
                                       targets);
  const ZeroSearchOptions options = search_options(c);

  if (get_bool(c, "theorem2", true)) {
    const Theorem2Record rec = verify_theorem2(F, g, surface, options.winding);
    json comps = json::array();
    for (const auto& k : rec.components) {
      comps.push_back({{"component", k.component},
                       {"direct", k.direct},
                       {"ab", k.ab},
                       {"eigendirection", k.eigendirection},
                       {"agree", k.agree}});
    }
    ctx.result["theorem2"] = {{"components", comps}, {"pass", rec.pass}};
    if (!rec.pass) ctx.status = ExitStatus::identity_failure;
  }
  if (get_bool(c, "crossings", false)) {
    json out = json::array();
    for (std::size_t i = 0; i < surface.boundary().size(); ++i) {
      for (const auto& x : boundary_crossings(F, g, surface, i)) {
        out.push_back({{"component", x.component},
                       {"theta", x.theta},
                       {"a", x.a},
                       {"b_prime", x.b_prime},
                       {"q_prime", x.q_prime},
                       {"b_prime_over_a_minus_1", x.stated},
                       {"b_prime_over_a2_minus_1", x.perturbative}});
      }
    }
    ctx.result["crossings"] = out;
  }
  if (get_bool(c, "area_corollary", false)) {
    const AreaCorollaryRecord rec = verify_corollary_area(F, g, surface, options);
    ctx.result["area_corollary"] = {{"report", to_json(rec.report)},
                                    {"boundary_identity_defect", rec.boundary_identity_defect},
                                    {"area_defect", rec.area_defect},
                                    {"windings_vanish", rec.windings_vanish},
                                    {"pass", rec.pass}};
    if (!rec.pass) ctx.status = ExitStatus::identity_failure;
    maybe_plot(ctx, "abs_ha", trace_free_section(g, pullback_field(F.chart_map(), g, surface)), surface,
               options.grid, rec.report.points);
  }
}

void run_vf(Context& ctx) {
  const json& c = ctx.config;
  check_keys(c, {"surface", "metric", "field", "linearization", "grid", "tolerances"}, "vf config");
  const Surface surface = parse_surface(required_key(c, "surface"));
  if (const json* metric = optional_key(c, "metric")) require_isothermal(parse_metric(metric, surface), surface);
  const json& f = required_key(c, "field");
  check_keys(f, {"re", "im"}, "field");
  if (!f.contains("re") || !f.contains("im")) fail("field needs 're' and 'im' components");
  const VectorField field = VectorField::parse({expression_text(f["re"], "field"), expression_text(f["im"], "field")});
  const ZeroSearchOptions options = search_options(c);
  const VerificationReport report = verify_cor_vf(field, surface, options);
  ctx.result = to_json(report);
  if (!report.pass) ctx.status = ExitStatus::identity_failure;
  if (const json* lin = optional_key(c, "linearization")) {
    check_keys(*lin, {"schedule", "points"}, "linearization");
    const std::vector<double> schedule =
        lin->contains("schedule") ? (*lin)["schedule"].get<std::vector<double>>()
                                  : std::vector<double>{1e-2, 5e-3, 2.5e-3};
    std::vector<Vec2> points;
    for (const auto& p : required_key(*lin, "points")) {
      if (!p.is_array() || p.size() != 2) fail("linearization points must be [u, v] pairs");
      points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    const LinearizationRecord rec = linearization_check(field, surface, 0, points, schedule, calibrate_kappa());
    json samples = json::array();
    for (const auto& s : rec.samples) samples.push_back({{"t", s.t}, {"residual", s.residual}});
    ctx.result["linearization"] = {{"kappa", rec.kappa}, {"samples", samples}, {"ratios", rec.ratios}};
  }
  maybe_plot(ctx, "abs_dbar", field.dbar_section(), surface, options.grid, report.points);
}

void run_umbilics(Context& ctx) {
  const json& c = ctx.config;
  check_keys(c, {"semi_axes", "grid", "tolerances"}, "umbilics config");
  const auto axes = required_key(c, "semi_axes").get<std::vector<double>>();
  if (axes.size() != 3) fail("'semi_axes' needs three numbers");
  const Vec3 semi(axes[0], axes[1], axes[2]);
  const ZeroSearchOptions options = search_options(c);
  const UmbilicReport u = umbilics(semi, options);
  ctx.result = to_json(u.report);
  ctx.result["pole_axis"] = u.pole_axis;
  const EmbeddedAtlas atlas = ellipsoid_atlas(semi);
  for (std::size_t k = 0; k < u.report.points.size(); ++k) {
    const auto& p = u.report.points[k];
    const Vec3 x = atlas_point(atlas, p.chart, p.position);
    ctx.result["points"][k]["position"] = {x.x(), x.y(), x.z()};
  }
  if (!u.report.pass) ctx.status = ExitStatus::identity_failure;
  maybe_plot(ctx, "abs_ha", trace_free_section(atlas.first_form(), atlas.second_form()), atlas.surface,
             options.grid, u.report.points);
}

json data_json(const PrescribedData& d) {
  json pts = json::array();
  for (const auto& p : d.points) pts.push_back({{"at", {p.position.x(), p.position.y()}}, {"index", p.index}});
  return {{"points", pts}, {"windings", d.windings}};
}

PrescribedData parse_data(const json& spec) {
  check_keys(spec, {"points", "windings"}, "data");
  PrescribedData d;
  if (spec.contains("points")) {
    for (const auto& p : spec["points"]) {
      check_keys(p, {"at", "index"}, "data.points");
      const auto at = required_key(p, "at").get<std::vector<double>>();
      if (at.size() != 2) fail("data point 'at' must be [u, v]");
      d.points.push_back({Vec2(at[0], at[1]), required_key(p, "index").get<int>()});
    }
  }
  d.windings = required_key(spec, "windings").get<std::vector<int>>();
  return d;
}

void run_realize(Context& ctx) {
  const json& c = ctx.config;
  check_keys(c, {"surface", "metric", "data", "random", "grid", "seed", "tolerances"}, "realize config");
  const Surface surface = parse_surface(required_key(c, "surface"));
  const TensorField g = parse_metric(optional_key(c, "metric"), surface);
  const ZeroSearchOptions options = search_options(c);
  std::vector<PrescribedData> cases;
  if (const json* d = optional_key(c, "data")) cases.push_back(parse_data(*d));
  if (const json* r = optional_key(c, "random")) {
    check_keys(*r, {"count"}, "random");
    std::mt19937_64 rng(config_seed(c, 0));
    const int count = get_int(*r, "count", 1);
    for (int k = 0; k < count; ++k) cases.push_back(random_prescribed_data(surface, rng));
  }
  if (cases.empty()) fail("realize needs 'data' or 'random'");
  json out = json::array();
  bool all = true;
  for (const auto& d : cases) {
    check_prescribed(surface, d);
    const VerificationReport report = verify_theorem1(g, realize_data(surface, g, d), surface, options);
    bool reproduced = report.pass && report.windings == d.windings && report.points.size() == d.points.size();
    for (const auto& p : d.points) {
      bool found = false;
      for (const auto& q : report.points) {
        found = found || ((q.position - p.position).norm() < 1e-6 && q.index == p.index);
      }
      reproduced = reproduced && found;
    }
    all = all && reproduced;
    out.push_back({{"prescribed", data_json(d)}, {"detected", to_json(report)}, {"reproduced", reproduced}});
  }
  ctx.result = {{"cases", out}, {"pass", all}};
  if (!all) ctx.status = ExitStatus::identity_failure;
  maybe_plot(ctx, "abs_ha", realization_section(surface, cases.front()), surface, options.grid, {});
}

void run_explore(Context& ctx) {
  const json& c = ctx.config;
  check_keys(c, {"degree", "restarts", "iterations", "grid", "seed", "betas"}, "explore config");
  ExplorerConfig cfg;
  cfg.degree = get_int(c, "degree", cfg.degree);
  cfg.restarts = get_int(c, "restarts", cfg.restarts);
  cfg.iterations = get_int(c, "iterations", cfg.iterations);
  cfg.grid = static_cast<std::size_t>(get_int(c, "grid", static_cast<int>(cfg.grid)));
  cfg.seed = config_seed(c, cfg.seed);
  if (c.contains("betas")) cfg.betas = c["betas"].get<std::vector<double>>();
  if (cfg.betas.empty()) fail("'betas' must not be empty");
  const SearchResult r = search(cfg);
  json coeffs = json::array();
  for (const cplx& z : r.best.coefficients) coeffs.push_back({z.real(), z.imag()});
  const auto& e = r.evaluation;
  ctx.result = {{"ansatz", "f = (1 - |z|^2) p(z, conj z)"},
                {"degree", r.best.degree},
                {"coefficients", coeffs},
                {"objective", e.objective},
                {"interior_min_ratio", e.interior_min_ratio},
                {"winding", e.winding ? json(*e.winding) : json(nullptr)},
                {"winding_obstructed", e.winding_obstructed},
                {"zero_found", e.zero_found},
                {"smoothed_objective", r.smoothed},
                {"trace", {{"best_restart", r.best_restart},
                           {"restarts", r.restarts},
                           {"iterations", r.iterations},
                           {"seed", r.seed},
                           {"budget_exhausted", r.budget_exhausted}}},
                {"summary", r.summary}};
  // a nonvanishing candidate must carry the winding the corollary forces
  if (e.objective > 0.0 && e.winding != -2) ctx.status = ExitStatus::identity_failure;
  maybe_plot(ctx, "abs_dbar", dbar_candidate_section(r.best), Surface::disc(), cfg.grid, {});
}

const std::map<std::string, std::function<void(Context&)>>& dispatch() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"verify", run_verify}, {"diffeo", run_diffeo},   {"vf", run_vf},
      {"umbilics", run_umbilics}, {"realize", run_realize}, {"explore", run_explore}};
  return table;
}

ExitStatus exit_for(const Error& e) {
  return category(e.kind()) == ErrorCategory::input ? ExitStatus::config_error
                                                     : ExitStatus::hypothesis_violation;
}

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::input: return "input";
    case ErrorCategory::hypothesis: return "hypothesis";
    case ErrorCategory::numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"verify", "diffeo", "vf", "umbilics", "realize", "explore"};
  return names;
}

RunReport run(const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.version = kVersion;
  report.command = options.command;
  report.config = json::object();
  report.result = json::object();
  ExitStatus status = ExitStatus::pass;
  try {
    auto it = dispatch().find(options.command);
    if (it == dispatch().end()) fail("unknown command '" + options.command + "'");
    report.config = load_config(options.config);
    if (options.seed) report.config["seed"] = *options.seed;
    Context ctx{report.config, options};
    it->second(ctx);
    report.result = std::move(ctx.result);
    status = ctx.status;
  } catch (const Error& e) {
    status = exit_for(e);
    report.error = ErrorRecord{std::string(to_string(e.kind())), std::string(category_name(category(e.kind()))),
                               e.what()};
  } catch (const json::exception& e) {
    status = ExitStatus::config_error;
    report.error = ErrorRecord{"ConfigError", "input", std::string("malformed config value: ") + e.what()};
  }
  report.status = status_name(status);
  report.exit_code = static_cast<int>(status);
  if (options.timing) {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (options.out) {
    std::error_code ec;
    fs::create_directories(*options.out, ec);
    std::ofstream out(*options.out / "report.json");
    if (!out) {
      report.error = ErrorRecord{"IoError", "input", "cannot write " + (*options.out / "report.json").string()};
      report.status = status_name(ExitStatus::config_error);
      report.exit_code = static_cast<int>(ExitStatus::config_error);
    } else {
      out << serialize(report);
    }
  }
  return report;
}

void emit_plot_data(const fs::path& dir, const std::string& stem, const EASection& s, const Surface& surface,
                    std::size_t n, const std::vector<ConformalPoint>& points) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  char line[128];
  for (const auto& chart : surface.charts()) {
    const fs::path path = dir / (stem + "_chart" + std::to_string(chart.id) + ".csv");
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
    out << "u,v,value\n";
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = surface.grid_point(chart.id, i, j, n);
        if (!surface.in_domain(chart.id, p)) continue;
        std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g\n", p.x(), p.y(), std::abs(s(chart.id, p)));
        out << line;
      }
    }
  }
  const fs::path path = dir / "points.csv";
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << "chart,u,v,index\n";
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%d,%.12g,%.12g,%d\n", p.chart, p.position.x(), p.position.y(), p.index);
    out << line;
  }
}

}  // namespace conformal::cli
