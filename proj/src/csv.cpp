#include "walshfejer/csv.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

namespace wf {

CsvError::CsvError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_grid_csv(std::ostream& out, const GridFunction& f) {
  out << "index,value\n";
  for (Eigen::Index i = 0; i < f.size(); ++i) out << i << ',' << format_real(f[i]) << '\n';
}

void write_coefficients_csv(std::ostream& out, const Vector<double>& coefficients) {
  out << "index,coefficient\n";
  for (Eigen::Index i = 0; i < coefficients.size(); ++i) out << i << ',' << format_real(coefficients(i)) << '\n';
}

void write_kernel_csv(std::ostream& out, const ScaledKernel& kernel) {
  out << "index,scaled_value,scale_factor\n";
  for (Eigen::Index i = 0; i < kernel.values.size(); ++i) {
    out << i << ',' << kernel.values[i] << ',' << kernel.scale_factor << '\n';
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skippable(std::string_view s) { return s.empty() || s.front() == '#'; }

Natural parse_natural(std::string_view text, std::size_t line) {
  Natural value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw CsvError(line, "expected a natural number, got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text, std::size_t line) {
  const std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    throw CsvError(line, "expected a finite number, got '" + copy + "'");
  }
  return value;
}

}  // namespace

GridFunction read_grid_csv(std::istream& in, unsigned max_scale) {
  std::string row;
  std::size_t line = 0;
  if (!std::getline(in, row)) throw CsvError(1, "missing header `index,value`");
  ++line;
  if (trim(row) != "index,value") throw CsvError(line, "expected header `index,value`");

  std::vector<double> values;
  while (std::getline(in, row)) {
    ++line;
    const std::string_view text = trim(row);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw CsvError(line, "expected two comma-separated fields");
    }
    const Natural index = parse_natural(trim(text.substr(0, comma)), line);
    if (index != values.size()) {
      throw CsvError(line, "expected index " + std::to_string(values.size()) + ", got " + std::to_string(index));
    }
    values.push_back(parse_real(trim(text.substr(comma + 1)), line));
    if (values.size() > (std::size_t{1} << max_scale)) {
      throw CsvError(line, "more than 2^" + std::to_string(max_scale) + " rows");
    }
  }
  if (values.empty() || !std::has_single_bit(values.size())) {
    throw CsvError(0, "row count " + std::to_string(values.size()) + " is not a power of two");
  }
  const auto scale = static_cast<unsigned>(std::countr_zero(values.size()));
  return {scale, Eigen::Map<const Vector<double>>(values.data(), static_cast<Eigen::Index>(values.size()))};
}

std::vector<Natural> read_index_list(std::istream& in) {
  std::vector<Natural> out;
  std::string row;
  for (std::size_t line = 1; std::getline(in, row); ++line) {
    const std::string_view text = trim(row);
    if (!skippable(text)) out.push_back(parse_natural(text, line));
  }
  return out;
}

std::vector<double> read_value_list(std::istream& in) {
  std::vector<double> out;
  std::string row;
  for (std::size_t line = 1; std::getline(in, row); ++line) {
    const std::string_view text = trim(row);
    if (!skippable(text)) out.push_back(parse_real(text, line));
  }
  return out;
}

}  // namespace wf
