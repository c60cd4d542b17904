#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "walshfejer/grid.hpp"
#include "walshfejer/kernels.hpp"

namespace wf {

/// Malformed input; line() is 1-based, 0 when the problem is not tied to a line.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// %.17g, enough digits for a double to round-trip.
std::string format_real(double value);

/// Header `index,value`, one row per slot in ascending index order.
void write_grid_csv(std::ostream& out, const GridFunction& f);
/// Header `index,coefficient`.
void write_coefficients_csv(std::ostream& out, const Vector<double>& coefficients);
/// Header `index,scaled_value,scale_factor`; scale_factor repeats on each row.
void write_kernel_csv(std::ostream& out, const ScaledKernel& kernel);

/// Reads `index,value` rows. Indices must run 0, 1, ..., 2^M - 1 with
/// M <= max_scale.
GridFunction read_grid_csv(std::istream& in, unsigned max_scale = kMaxScale);

/// One natural number per line; blank lines and lines starting with '#' are skipped.
std::vector<Natural> read_index_list(std::istream& in);
/// One finite real per line; blank lines and '#' comments are skipped.
std::vector<double> read_value_list(std::istream& in);

}  // namespace wf
