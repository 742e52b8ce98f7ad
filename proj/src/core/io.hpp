#pragma once
// JSON file formats for algebras, modules, resolutions, towers and reports.
// Diagnostics name the offending location as a JSON path ("$.mul[1][0]").

#include <filesystem>
#include <string>

#include <json.hpp>

#include "complete.hpp"
#include "completion.hpp"
#include "module.hpp"
#include "resolve.hpp"

namespace homct {

using Json = nlohmann::json;

/// {"p","dim","basis","unit","mul"}; throws Schema or Validation errors.
AlgebraPtr algebra_from_json(const Json& j);
Json algebra_to_json(const Algebra& a);
AlgebraPtr parse_algebra_file(const std::filesystem::path& path);

/// {"algebra","side","dim","action"}; the algebra field is ignored here.
FdModule module_from_json(const Json& j, const AlgebraPtr& a);
Json module_to_json(const FdModule& m, const std::string& algebra_ref);
/// Resolves "algebra" relative to the module file, or as a fixture name (A1..A4).
FdModule parse_module_file(const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json matrix_to_json(const Matrix& m);
Json tower_to_json(const Tower& t);
Json stabilization_to_json(const StabilizationReport& r);

/// Per-degree dims, differential matrices, Betti table and periodicity certificate.
Json resolution_dump(const FdModule& m, std::size_t depth);

}  // namespace homct
