#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "walshfejer/csv.hpp"

using namespace wf;

namespace {

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)read_grid_csv(in);
  } catch (const CsvError& e) {
    return e.line();
  }
  return 9999;
}

}  // namespace

TEST_CASE("reals use 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(-2.0) == "-2");
  std::mt19937_64 engine(41);
  std::uniform_real_distribution<double> draw(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = draw(engine);
    CHECK(std::stod(format_real(v)) == v);
  }
}

TEST_CASE("grid round trip") {
  std::mt19937_64 engine(42);
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  const GridFunction f = GridFunction::generate(6, [&](Natural) { return draw(engine); });
  std::stringstream io;
  write_grid_csv(io, f);
  CHECK(io.str().rfind("index,value\n0,", 0) == 0);
  CHECK(read_grid_csv(io) == f);
}

TEST_CASE("coefficient and kernel formats") {
  std::ostringstream c;
  write_coefficients_csv(c, Vector<double>::Constant(2, 0.5));
  CHECK(c.str() == "index,coefficient\n0,0.5\n1,0.5\n");

  std::ostringstream k;
  write_kernel_csv(k, dirichlet(4, 3));
  CHECK(k.str() == "index,scaled_value,scale_factor\n0,4,1\n1,0,1\n2,0,1\n3,0,1\n4,4,1\n5,0,1\n6,0,1\n7,0,1\n");
}

TEST_CASE("malformed grids name the line") {
  CHECK(error_line("") == 1);
  CHECK(error_line("idx,value\n0,1\n") == 1);
  CHECK(error_line("index,value\n0,1\n1,abc\n") == 3);
  CHECK(error_line("index,value\n0,1\n2,1\n") == 3);
  CHECK(error_line("index,value\n0,1\n1,2,3\n") == 3);
  CHECK(error_line("index,value\n0,1\n1\n") == 3);
  CHECK(error_line("index,value\n0,1\n-1,2\n") == 3);
  CHECK(error_line("index,value\n0,nan\n") == 2);
  CHECK(error_line("index,value\n0,1\n1,2\n2,3\n") == 0);  // three rows
  CHECK(error_line("index,value\n") == 0);

  std::istringstream big("index,value\n0,1\n1,1\n2,1\n3,1\n4,1\n");
  try {
    (void)read_grid_csv(big, 2);
    FAIL("expected an exception");
  } catch (const CsvError& e) {
    CHECK(e.line() == 6);
    CHECK(std::string(e.what()).find("line 6") == 0);
  }
}

TEST_CASE("grids tolerate blank lines and CRLF") {
  std::istringstream in("index,value\r\n0, 1.5\r\n\r\n1,-2\r\n");
  const GridFunction f = read_grid_csv(in);
  CHECK(f.scale() == 1);
  CHECK(f[0] == 1.5);
  CHECK(f[1] == -2.0);
}

TEST_CASE("index and value lists") {
  std::istringstream idx("# sequence\n1\n\n2\n  1024 \n");
  CHECK(read_index_list(idx) == std::vector<Natural>{1, 2, 1024});
  std::istringstream bad("1\n2x\n");
  try {
    (void)read_index_list(bad);
    FAIL("expected an exception");
  } catch (const CsvError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream vals("1\n2.5\n# c\n1e3\n");
  CHECK(read_value_list(vals) == std::vector<double>{1.0, 2.5, 1000.0});
  std::istringstream inf("1\ninf\n");
  CHECK_THROWS_AS(read_value_list(inf), CsvError);
}
