// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "walshfejer/counterexample.hpp"
#include "walshfejer/csv.hpp"
#include "walshfejer/dyadic_index.hpp"
#include "walshfejer/kernels.hpp"
#include "walshfejer/operators.hpp"
#include "walshfejer/verify.hpp"

namespace {

using nlohmann::json;
using namespace wf;

constexpr unsigned kCliMaxScale = 20;  // 2^20-point grids at most

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// spectrum ------------------------------------------------------------------

struct SpectrumArgs {
  unsigned s = 0;
  std::vector<Natural> family;
};

int run_spectrum(const SpectrumArgs& a) {
  const BandSpectrum b = band_spectrum(a.s, a.family);
  print_json({{"s", a.s}, {"A", b.endpoints}, {"r1", b.r1()}, {"r2", b.r2()}, {"r3", b.r3()}});
  return kOk;
}

// kernel --------------------------------------------------------------------

struct KernelArgs {
  std::string type;
  Natural n = 1;
  unsigned scale = 0;
  std::string format = "csv";
};

unsigned exponent_of(Natural n) {
  if (!std::has_single_bit(n)) throw UsageError("closed forms need n to be a power of two, got " + std::to_string(n));
  return static_cast<unsigned>(std::countr_zero(n));
}

ScaledKernel make_kernel(const KernelArgs& a) {
  if (a.type == "dirichlet") return dirichlet(a.n, a.scale);
  if (a.type == "dirichlet-closed") return dirichlet_pow2_closed(exponent_of(a.n), a.scale);
  if (a.type == "fejer") return fejer_scaled(a.n, a.scale);
  if (a.type == "fejer-closed") return fejer_pow2_closed(exponent_of(a.n), a.scale);
  if (a.type == "gat") return gat_decomposition(a.n, a.scale);
  if (a.type == "lemma4-rhs") return lemma4_rhs(a.n, a.scale);
  return {a.scale, a.n, 1, walsh_grid(a.n, a.scale)};
}

int run_kernel(const KernelArgs& a) {
  const ScaledKernel k = make_kernel(a);
  if (a.format == "json") {
    const auto& v = k.values.values();
    print_json({{"type", a.type},
                {"n", k.order},
                {"M", k.scale},
                {"scale_factor", k.scale_factor},
                {"scaled_values", std::vector<std::int64_t>(v.data(), v.data() + v.size())}});
  } else {
    write_kernel_csv(std::cout, k);
  }
  return kOk;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  unsigned scale = 0;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& a) {
  if (!is_verify_suite(a.suite)) throw UsageError("unknown suite '" + a.suite + "'");
  const VerifyReport r = run_suite(a.suite, a.scale, a.seed);
  json cases = json::array();
  for (const VerifyCase& c : r.cases) cases.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json out{{"suite", r.suite},
           {"M", r.scale},
           {"seed", a.seed},
           {"passed", r.passed()},
           {"failures", r.failures()},
           {"cases", std::move(cases)}};
  if (r.lemma4_constant) {
    const Lemma4Ratio& c = *r.lemma4_constant;
    out["lemma4_constant"] = {
        {"n", c.n}, {"numerator", c.numerator}, {"denominator", c.denominator}, {"value", c.value()}};
  }
  print_json(out);
  return r.passed() ? kOk : kFailed;
}

// maximal -------------------------------------------------------------------

struct MaximalArgs {
  std::string seq_file;
  std::string weight = "card";
  std::string phi_file;
  std::string input;
  std::string out;
  unsigned scale = 10;
  std::uint64_t seed = 0;
};

WeightSpec parse_weight(const MaximalArgs& a) {
  if (a.weight == "card") return WeightSpec(WeightKind::card_squared);
  if (a.weight == "log2") return WeightSpec(WeightKind::log_squared);
  if (a.weight == "var") return WeightSpec(WeightKind::variation_squared);
  if (a.phi_file.empty()) throw UsageError("--weight custom needs --phi-file");
  auto in = open_input(a.phi_file);
  return WeightSpec::custom(read_value_list(in));
}

int run_maximal(const MaximalArgs& a) {
  GridFunction f;
  if (!a.input.empty()) {
    auto in = open_input(a.input);
    f = read_grid_csv(in, kCliMaxScale);
  } else {
    std::mt19937_64 engine(a.seed);
    std::uniform_real_distribution<double> draw(-1.0, 1.0);
    f = GridFunction::generate(a.scale, [&](Natural) { return draw(engine); });
  }
  std::vector<Natural> sequence;
  if (!a.seq_file.empty()) {
    auto in = open_input(a.seq_file);
    sequence = read_index_list(in);
  } else {
    sequence = full_band_sequence(f.scale());
  }
  const MaximalOperatorSpec spec(std::move(sequence), parse_weight(a));
  const GridFunction sup = weighted_maximal(f, spec);
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw UsageError("cannot write '" + a.out + "'");
    write_grid_csv(out, sup);
  }
  print_json({{"M", f.scale()},
              {"l_half_quasinorm", lp_quasinorm(sup, 0.5)},
              {"weak_l_half", weak_lp(sup, 0.5)},
              {"hardy_half_of_input", hardy_norm(f, 0.5)}});
  return kOk;
}

// counterexample ------------------------------------------------------------

struct CounterexampleArgs {
  std::string family = "alt-bits";
  std::string phi = "const:1";
  std::vector<unsigned> scales{8, 10, 12};
  std::string format = "csv";
};

std::string after_prefix(const std::string& text, const std::string& prefix) {
  return text.rfind(prefix, 0) == 0 ? text.substr(prefix.size()) : std::string();
}

PhiRule parse_phi(const std::string& text) {
  if (text == "card2") return PhiRule::card_squared();
  if (const std::string v = after_prefix(text, "const:"); !v.empty()) {
    std::istringstream in(v);
    return PhiRule::constant(read_value_list(in).at(0));
  }
  if (const std::string path = after_prefix(text, "file:"); !path.empty()) {
    auto in = open_input(path);
    return PhiRule::values(read_value_list(in));
  }
  throw UsageError("--phi must be const:<v>, card2 or file:<path>");
}

CounterexampleSpec parse_family(const CounterexampleArgs& a) {
  if (a.family == "alt-bits") {
    const unsigned top = *std::max_element(a.scales.begin(), a.scales.end());
    if (top < 2) throw UsageError("alt-bits needs a scale of at least 2");
    return CounterexampleSpec::alternating(1, top - 1, parse_phi(a.phi));
  }
  if (const std::string path = after_prefix(a.family, "file:"); !path.empty()) {
    auto in = open_input(path);
    return {read_index_list(in), parse_phi(a.phi)};
  }
  throw UsageError("--family must be alt-bits or file:<path>");
}

int run_counterexample(const CounterexampleArgs& a) {
  if (a.scales.empty()) throw UsageError("--scales needs at least one value");
  const CounterexampleSpec spec = parse_family(a);
  const auto curve = ratio_curve(spec, a.scales);
  if (a.format == "json") {
    json rows = json::array();
    for (const RatioPoint& p : curve) {
      rows.push_back({{"M", p.scale}, {"ratio", p.ratio}, {"hardy_half", p.hardy_half}, {"sup_half", p.sup_half}});
    }
    print_json(rows);
  } else {
    std::cout << "M,ratio,hardy_half,sup_half\n";
    for (const RatioPoint& p : curve) {
      std::cout << p.scale << ',' << format_real(p.ratio) << ',' << format_real(p.hardy_half) << ','
                << format_real(p.sup_half) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh-Fejer kernels, maximal operators and divergence experiments"};
  app.require_subcommand(1);
  const auto scale_range = CLI::Range(0U, kCliMaxScale);
  const auto formats = CLI::IsMember({"csv", "json"});

  SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "Block endpoints A_s of a family inside band s");
  sp->add_option("--s", spectrum.s, "Band exponent")->required()->check(CLI::Range(0U, 63U));
  sp->add_option("--family", spectrum.family, "Comma-separated indices")->required()->delimiter(',');

  KernelArgs kernel;
  auto* kp = app.add_subcommand("kernel", "Exact scaled kernel values as CSV");
  kp->add_option("--type", kernel.type, "Kernel kind")
      ->required()
      ->check(CLI::IsMember({"dirichlet", "dirichlet-closed", "fejer", "fejer-closed", "gat", "lemma4-rhs", "walsh"}));
  kp->add_option("--n", kernel.n, "Order (a power of two for closed forms)")->required();
  kp->add_option("--M", kernel.scale, "Grid scale")->required()->check(scale_range);
  kp->add_option("--format", kernel.format, "csv or json")->check(formats);

  VerifyArgs verify;
  auto* vp = app.add_subcommand("verify", "Run an identity suite; exit 1 on any failure");
  vp->add_option("--suite", verify.suite, "eq6, lemma3, gat, lemma4, lemma5, partition, parseval or atoms")->required();
  vp->add_option("--M", verify.scale, "Grid scale")->required()->check(scale_range);
  vp->add_option("--seed", verify.seed, "Seed for randomized suites");

  MaximalArgs maximal;
  auto* mp = app.add_subcommand("maximal", "Weighted maximal Fejer operator");
  mp->add_option("--seq-file", maximal.seq_file, "One index per line (default: every n < 2^M)");
  mp->add_option("--weight", maximal.weight, "card, log2, var or custom")
      ->check(CLI::IsMember({"card", "log2", "var", "custom"}));
  mp->add_option("--phi-file", maximal.phi_file, "One weight per band, for --weight custom");
  mp->add_option("--input", maximal.input, "Grid CSV `index,value` (default: random grid)");
  mp->add_option("--out", maximal.out, "Where to write the maximal function CSV");
  mp->add_option("--M", maximal.scale, "Scale of the random grid when --input is absent")->check(scale_range);
  mp->add_option("--seed", maximal.seed, "Seed of the random grid");

  CounterexampleArgs counter;
  auto* cp = app.add_subcommand("counterexample", "Ratio curve of the divergence construction");
  cp->add_option("--family", counter.family, "alt-bits or file:<path>");
  cp->add_option("--phi", counter.phi, "const:<v>, card2 or file:<path>");
  cp->add_option("--scales", counter.scales, "Comma-separated ascending scales")->delimiter(',')->check(scale_range);
  cp->add_option("--format", counter.format, "csv or json")->check(formats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sp) return run_spectrum(spectrum);
    if (*kp) return run_kernel(kernel);
    if (*vp) return run_verify(verify);
    if (*mp) return run_maximal(maximal);
    return run_counterexample(counter);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
