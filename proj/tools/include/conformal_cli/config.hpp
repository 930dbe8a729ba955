#pragma once

#include "conformal/geometry.hpp"
#include "conformal/surface.hpp"
#include "conformal/winding.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

namespace conformal::cli {

using json = nlohmann::json;

/// Name of the environment variable holding default tolerance overrides (a JSON object).
inline constexpr const char* kToleranceEnv = "CONFORMAL_TOLERANCES";

/// Reads and parses a JSON configuration file. Throws Error(config|io).
json load_config(const std::filesystem::path& path);

/// Throws Error(config) naming the first key of `object` not in `allowed`.
void check_keys(const json& object, std::initializer_list<std::string_view> allowed,
                std::string_view where);

double get_number(const json& object, const char* key, double fallback);
int get_int(const json& object, const char* key, int fallback);
bool get_bool(const json& object, const char* key, bool fallback);
/// Expression text from a JSON string or number.
std::string expression_text(const json& value, std::string_view where);

/// Zero-search options: built-in defaults, then the environment overrides,
/// then the "tolerances" object of the config, then `grid`.
ZeroSearchOptions search_options(const json& config);
/// Applies one tolerance object onto `options`.
void apply_tolerances(const json& tolerances, ZeroSearchOptions& options);

Surface parse_surface(const json& spec);
/// Metric g from an optional {"xx","xy","yy"} object or per-chart list; Euclidean when absent.
TensorField parse_metric(const json* spec, const Surface& surface);
/// General symmetric tensor from {"xx","xy","yy"}, a per-chart list, or
/// {"random_trig": {"degree": d}} on the torus, drawn with `seed`.
TensorField parse_tensor(const json& spec, const Surface& surface, TensorRole role,
                         std::uint64_t seed = 0);

}  // namespace conformal::cli
