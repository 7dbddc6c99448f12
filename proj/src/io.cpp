#include "pseudoherm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pseudoherm/errors.hpp"

namespace pseudoherm::io {

namespace {

using nlohmann::json;

std::string line_col(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
  const auto last_nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
  const std::size_t col = last_nl == std::string_view::npos ? byte : byte - last_nl - 1;
  return "line " + std::to_string(line) + ", column " + std::to_string(col + 1);
}

double read_number(const json& value, const std::string& field) {
  if (!value.is_number()) throw ParseError(field + ": expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ParseError(field + ": non-finite value");
  return x;
}

}  // namespace

ComplexMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("matrix JSON: " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     e.what());
  } catch (const json::exception& e) {
    // e.g. number overflow, which nlohmann reports without a position
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("matrix JSON: top level must be an object");
  if (!doc.contains("dim")) throw ParseError("matrix JSON: missing field \"dim\"");
  if (!doc.contains("entries")) throw ParseError("matrix JSON: missing field \"entries\"");
  const json& dim_field = doc["dim"];
  if (!dim_field.is_number_integer()) throw ParseError("dim: expected an integer");
  const auto dim = dim_field.get<long long>();
  if (dim < 1) throw DimensionError("dim: must be >= 1, got " + std::to_string(dim));

  const json& rows = doc["entries"];
  if (!rows.is_array()) throw ParseError("entries: expected an array of rows");
  if (static_cast<long long>(rows.size()) != dim) {
    throw DimensionError("entries: " + std::to_string(rows.size()) + " rows for dim " +
                         std::to_string(dim));
  }
  ComplexMatrix M(dim, dim);
  for (long long i = 0; i < dim; ++i) {
    const std::string row_field = "entries[" + std::to_string(i) + "]";
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw ParseError(row_field + ": expected an array");
    if (static_cast<long long>(row.size()) != dim) {
      throw DimensionError(row_field + ": " + std::to_string(row.size()) + " entries for dim " +
                           std::to_string(dim) + " (matrix must be square)");
    }
    for (long long j = 0; j < dim; ++j) {
      const std::string field = row_field + "[" + std::to_string(j) + "]";
      const json& pair = row[static_cast<std::size_t>(j)];
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError(field + ": expected a [re, im] pair");
      }
      M(i, j) = Complex(read_number(pair[0], field + "[0]"), read_number(pair[1], field + "[1]"));
    }
  }
  return M;
}

ComplexMatrix parse_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str());
}

nlohmann::json matrix_to_json(const ComplexMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", M.rows()}, {"entries", std::move(rows)}};
}

std::string write_matrix_json(const ComplexMatrix& M) {
  require_valid(M);
  return matrix_to_json(M).dump() + "\n";
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Guard against a non-C numeric locale.
  std::string s(buf);
  std::replace(s.begin(), s.end(), ',', '.');
  return s;
}

}  // namespace pseudoherm::io
