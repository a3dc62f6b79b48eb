#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ctorsion/analysis.hpp"
#include "ctorsion/closure_solver.hpp"
#include "ctorsion/curve.hpp"
#include "ctorsion/epicycle.hpp"
#include "ctorsion/spherical_ct.hpp"

namespace ctorsion {

/// Shortest-round-trip-safe decimal: 17 significant digits, locale-free.
std::string format_double(double v);

/// Locale-free parse of a whole field. Throws ValidationError on junk.
double parse_double(std::string_view text);

/// CSV with header `param,x,y,z` or `param,x,y,z,kappa,tau,kappa_g`, one row
/// per sample, LF line endings. Missing invariant columns are written as nan.
std::string to_csv(const Polyline& curve);
Polyline from_csv(std::string_view text);

/// Wraps a spherical curve as a polyline (params = t) for export.
Polyline to_polyline(const SphericalCurve& curve);

/// `v x y z` per vertex and one `l` record. A closed curve drops its repeated
/// last sample and repeats the first index at the end of the `l` record.
/// Throws ValidationError for an empty curve.
std::string to_obj(const Polyline& curve);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const Polyline& curve);
Polyline read_csv(const std::filesystem::path& path);

/// Flat JSON reports: keys are the struct field names, nested fields are
/// joined with a dot (e.g. `integrals.Ixy`).
nlohmann::json to_json(const ClosureReport& report);
nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const ClosureSolution& solution);
nlohmann::json to_json(const ZetaSample& sample);

/// `key = value` lines; blank lines and lines starting with '#' are ignored.
/// Throws ValidationError for a line without '=' or a repeated key.
std::map<std::string, std::string> parse_config(std::string_view text);

}  // namespace ctorsion
