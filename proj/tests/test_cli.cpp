#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Run run(const std::string& args) {
  const std::string command = std::string(WF_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "walshfejer_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("spectrum") {
  const Run alpha = run("spectrum --s 3 --family 9,11,15");
  REQUIRE(alpha.code == 0);
  const json j = json::parse(alpha.out);
  CHECK(j["s"] == 3);
  CHECK(j["A"] == json::array({0, 1, 3}));
  CHECK(j["r1"] == 2);
  CHECK(j["r2"] == 3);
  CHECK(j["r3"] == 3);

  const Run single = run("spectrum --s 3 --family 8");
  REQUIRE(single.code == 0);
  CHECK(json::parse(single.out)["r3"] == 1);

  const Run outside = run("spectrum --s 3 --family 17");
  CHECK(outside.code == 2);
  CHECK(outside.out.find("17") != std::string::npos);
}

TEST_CASE("kernel") {
  const Run d = run("kernel --type dirichlet --n 4 --M 3");
  REQUIRE(d.code == 0);
  CHECK(d.out == "index,scaled_value,scale_factor\n0,4,1\n1,0,1\n2,0,1\n3,0,1\n4,4,1\n5,0,1\n6,0,1\n7,0,1\n");

  const Run closed = run("kernel --type fejer-closed --n 4 --M 3 --format json");
  REQUIRE(closed.code == 0);
  const json j = json::parse(closed.out);
  CHECK(j["scale_factor"] == 8);
  CHECK(j["scaled_values"][0] == 20);

  CHECK(run("kernel --type fejer-closed --n 3 --M 3").code == 2);
  CHECK(run("kernel --type dirichlet --n 9 --M 3").code == 2);
  CHECK(run("kernel --type nope --n 1 --M 3").code == 2);
  CHECK(run("kernel --type dirichlet --n 1 --M 21").code == 2);
}

TEST_CASE("verify") {
  const Run lemma3 = run("verify --suite lemma3 --M 10");
  CHECK(lemma3.code == 0);
  CHECK(json::parse(lemma3.out)["passed"] == true);

  const Run partition = run("verify --suite partition --M 2");
  CHECK(partition.code == 0);
  CHECK(json::parse(partition.out)["cases"][0]["detail"] == "3 cells, expected 3");

  const Run lemma4 = run("verify --suite lemma4 --M 8");
  CHECK(lemma4.code == 0);
  CHECK(json::parse(lemma4.out)["lemma4_constant"]["n"] == 255);

  // The E_0 bound fails for n = 3 mod 4, so this suite reports failure.
  const Run lemma5 = run("verify --suite lemma5 --M 8");
  CHECK(lemma5.code == 1);
  CHECK(json::parse(lemma5.out)["failures"] == 4);

  for (const char* suite : {"eq6", "gat", "parseval", "atoms"}) {
    CHECK(run(std::string("verify --suite ") + suite + " --M 6 --seed 3").code == 0);
  }
  CHECK(run("verify --suite bogus --M 4").code == 2);
  CHECK(run("verify --suite eq6 --M 21").code == 2);
  CHECK(run("verify --suite eq6").code == 2);
}

TEST_CASE("maximal") {
  const fs::path dir = scratch();
  {
    std::ofstream f(dir / "f.csv");
    f << "index,value\n";
    for (int i = 0; i < 64; ++i) f << i << ',' << (i % 3 == 0 ? 1.0 : -0.5) << '\n';
    std::ofstream seq(dir / "seq.txt");
    for (int n = 1; n <= 64; ++n) seq << n << '\n';
  }
  const std::string base = "maximal --weight log2 --seq-file " + (dir / "seq.txt").string() + " --input " +
                           (dir / "f.csv").string();
  const Run first = run(base + " --out " + (dir / "g.csv").string());
  REQUIRE(first.code == 0);
  const json j = json::parse(first.out);
  CHECK(j.contains("l_half_quasinorm"));
  CHECK(j.contains("weak_l_half"));
  CHECK(j.contains("hardy_half_of_input"));
  CHECK(j["weak_l_half"].get<double>() <= j["l_half_quasinorm"].get<double>());
  std::ifstream g(dir / "g.csv");
  std::string header;
  std::getline(g, header);
  CHECK(header == "index,value");
  CHECK(run(base).out == first.out);

  CHECK(run("maximal --M 6 --seed 4 --weight card").code == 0);
  CHECK(run("maximal --M 6 --seed 4").out == run("maximal --M 6 --seed 4").out);
  CHECK(run("maximal --M 6 --weight custom").code == 2);

  {
    std::ofstream bad(dir / "bad.csv");
    bad << "index,value\n0,1\n1,oops\n";
  }
  const Run malformed = run("maximal --input " + (dir / "bad.csv").string());
  CHECK(malformed.code == 2);
  CHECK(malformed.out.find("line 3") != std::string::npos);
  CHECK(run("maximal --input " + (dir / "missing.csv").string()).code == 2);
}

TEST_CASE("counterexample") {
  const Run flat = run("counterexample --family alt-bits --phi const:1 --scales 8,10,12");
  REQUIRE(flat.code == 0);
  CHECK(flat.out.rfind("M,ratio,hardy_half,sup_half\n", 0) == 0);
  const auto rows = csv_rows(flat.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == 8);
  CHECK(rows[0][1] < rows[1][1]);
  CHECK(rows[1][1] < rows[2][1]);
  CHECK(run("counterexample --family alt-bits --phi const:1 --scales 8,10,12").out == flat.out);

  const Run card = run("counterexample --phi card2 --scales 8,10 --format json");
  REQUIRE(card.code == 0);
  CHECK(json::parse(card.out).size() == 2);

  const fs::path dir = scratch();
  {
    std::ofstream fam(dir / "family.txt");
    fam << "2\n5\n10\n";
    std::ofstream phi(dir / "phi.txt");
    phi << "1\n1\n2\n3\n";
  }
  const Run file = run("counterexample --family file:" + (dir / "family.txt").string() + " --phi file:" +
                       (dir / "phi.txt").string() + " --scales 6");
  CHECK(file.code == 0);

  CHECK(run("counterexample --scales 10,8").code == 2);
  CHECK(run("counterexample --phi const:0").code == 2);
  CHECK(run("counterexample --phi weird").code == 2);
  CHECK(run("counterexample --family other").code == 2);
  CHECK(run("counterexample --scales 22").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("--help").code == 0);
}
