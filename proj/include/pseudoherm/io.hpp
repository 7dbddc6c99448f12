#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pseudoherm/linalg.hpp"

namespace pseudoherm::io {

/// Matrix JSON: {"dim": N, "entries": [[[re, im], ...], ...]} in row-major
/// order. Extra top-level keys are ignored on read.
ComplexMatrix parse_matrix_json(std::string_view text);
ComplexMatrix parse_matrix_file(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const ComplexMatrix& M);
std::string write_matrix_json(const ComplexMatrix& M);

/// %.17g with '.' decimal separator, independent of the global locale.
std::string format_double(double x);

}  // namespace pseudoherm::io
