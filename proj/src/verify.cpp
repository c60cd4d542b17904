#include "walshfejer/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "walshfejer/operators.hpp"

namespace wf {

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const VerifyCase& c) { return !c.passed; }));
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"eq6", "lemma3", "gat", "lemma4", "lemma5", "partition", "parseval", "atoms"};
  return names;
}

bool is_verify_suite(std::string_view name) {
  const auto& names = verify_suites();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

constexpr int kRandomFunctions = 10;
constexpr int kRandomAtoms = 20;
constexpr double kRoundTripTolerance = 1e-12;
constexpr double kDualPathTolerance = 1e-10;
constexpr unsigned kDualPathMaxScale = 12;

std::string mismatch_detail(const IntegerGrid& a, const IntegerGrid& b) {
  const Vector<std::int64_t> diff = a.values() - b.values();
  const auto bad = (diff.array() != 0).count();
  return bad == 0 ? "exact" : std::to_string(bad) + " mismatched points";
}

void eq6(VerifyReport& r) {
  for (unsigned m = 0; m <= r.scale; ++m) {
    const IntegerGrid def = dirichlet(Natural{1} << m, r.scale).values;
    const IntegerGrid closed = dirichlet_pow2_closed(m, r.scale).values;
    r.cases.push_back({"m=" + std::to_string(m), def == closed, mismatch_detail(def, closed)});
  }
}

void lemma3(VerifyReport& r) {
  for (unsigned m = 0; m <= r.scale; ++m) {
    // fejer_scaled stores 2^m K_{2^m}; the closed form stores 2^{m+1} K_{2^m}.
    const IntegerGrid doubled(r.scale, (2 * fejer_scaled(Natural{1} << m, r.scale).values.values()).eval());
    const IntegerGrid closed = fejer_pow2_closed(m, r.scale).values;
    r.cases.push_back({"m=" + std::to_string(m), doubled == closed, mismatch_detail(doubled, closed)});
  }
}

void gat(VerifyReport& r) {
  const Natural last = Natural{1} << r.scale;
  for (Natural n = 1; n <= last; ++n) {
    const IntegerGrid doubled(r.scale, (2 * fejer_scaled(n, r.scale).values.values()).eval());
    const IntegerGrid decomposed = gat_decomposition(n, r.scale).values;
    r.cases.push_back({"n=" + std::to_string(n), doubled == decomposed, mismatch_detail(doubled, decomposed)});
  }
}

void lemma4(VerifyReport& r) {
  const Natural last = Natural{1} << r.scale;
  Lemma4Ratio worst{0, 0, 1, 0};
  for (Natural n = 1; n <= last; ++n) {
    const Lemma4Ratio q = lemma4_ratio(n, r.scale);
    if (fraction_greater(q, worst)) worst = q;
    r.cases.push_back({"n=" + std::to_string(n), q.support_violations == 0,
                       "ratio " + std::to_string(q.numerator) + "/" + std::to_string(q.denominator) + ", " +
                           std::to_string(q.support_violations) + " support violations"});
  }
  r.lemma4_constant = worst;
}

void lemma5(VerifyReport& r) {
  if (r.scale < 4) throw std::invalid_argument("lemma5 suite needs M >= 4");
  const Natural last = Natural{1} << (r.scale - 4);
  for (Natural n = 1; n <= last; ++n) {
    const auto violations = lemma5_violations(n, r.scale);
    std::string detail = std::to_string(violations.size()) + " violations";
    if (!violations.empty()) {
      const Lemma5Violation& v = violations.front();
      detail += ", first on E_" + std::to_string(v.endpoint) + (v.kind == Endpoint::lower ? " (lower)" : " (upper)") +
                " at x=" + std::to_string(v.point);
    }
    r.cases.push_back({"n=" + std::to_string(n), violations.empty(), detail});
  }
}

void partition(VerifyReport& r) {
  if (r.scale < 2) throw std::invalid_argument("partition suite needs M >= 2");
  const auto cells = complement_partition(r.scale);
  std::vector<unsigned> cover(static_cast<std::size_t>(grid_size(r.scale)), 0);
  for (const DyadicInterval& cell : cells) {
    for (Natural x : cell.members()) ++cover[x];
  }
  const auto overlaps = std::count_if(cover.begin(), cover.end(), [](unsigned c) { return c > 1; });
  const auto missed = std::count(cover.begin() + 1, cover.end(), 0U);
  const std::size_t expected = r.scale * (r.scale + 1) / 2;
  r.cases.push_back({"cell_count", cells.size() == expected,
                     std::to_string(cells.size()) + " cells, expected " + std::to_string(expected)});
  r.cases.push_back({"disjoint", overlaps == 0, std::to_string(overlaps) + " points covered twice"});
  r.cases.push_back({"exhaustive", missed == 0 && cover[0] == 0,
                     std::to_string(missed) + " nonzero points missed, origin covered " + std::to_string(cover[0]) +
                         " times"});
}

void parseval(VerifyReport& r, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  std::uniform_int_distribution<Natural> order(1, Natural{1} << r.scale);
  for (int i = 0; i < kRandomFunctions; ++i) {
    const GridFunction f = GridFunction::generate(r.scale, [&](Natural) { return draw(engine); });
    const Vector<double> c = transform(f);
    const double trip = (inverse_transform(c).values() - f.values()).cwiseAbs().maxCoeff();
    const Vector<double> squares = f.values().cwiseAbs2();
    const double energy = pairwise_sum(squares) / static_cast<double>(f.size());
    const Vector<double> coefficient_squares = c.cwiseAbs2();
    const double gap = std::abs(energy - pairwise_sum(coefficient_squares));
    const std::string tag = "f" + std::to_string(i);
    r.cases.push_back({tag + " round_trip", trip <= kRoundTripTolerance, "max error " + std::to_string(trip)});
    r.cases.push_back({tag + " parseval", gap <= kRoundTripTolerance, "gap " + std::to_string(gap)});
    if (r.scale <= kDualPathMaxScale) {
      const Natural n = order(engine);
      const double dual = (fejer_mean(f, n).values() - fejer_mean_convolution(f, n).values()).cwiseAbs().maxCoeff();
      r.cases.push_back({tag + " fejer_dual_path n=" + std::to_string(n), dual <= kDualPathTolerance,
                         "max error " + std::to_string(dual)});
    }
  }
}

void atoms(VerifyReport& r, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<unsigned> depth(0, r.scale);
  std::uniform_int_distribution<Natural> base(0, (Natural{1} << r.scale) - 1);
  for (int i = 0; i < kRandomAtoms; ++i) {
    const DyadicInterval interval(GroupPoint(r.scale, base(engine)), depth(engine));
    const GridFunction a = random_atom(interval, 0.5, engine());
    const AtomCertificate cert = validate_atom(a, 0.5, interval);
    r.cases.push_back({"random depth=" + std::to_string(interval.depth()) + " residue=" +
                           std::to_string(interval.residue()),
                       cert.valid(), cert.valid() ? "valid" : cert.violations.front()});
  }
  for (unsigned s = 0; s < r.scale; ++s) {
    const Vector<std::int64_t> exact =
        static_cast<std::int64_t>(Natural{1} << s) *
        (dirichlet(Natural{1} << (s + 1), r.scale).values.values() - dirichlet(Natural{1} << s, r.scale).values.values());
    const GridFunction a(r.scale, exact.cast<double>());
    const AtomCertificate cert = validate_atom(a, 0.5, DyadicInterval::at_zero(s, r.scale));
    const bool sharp = cert.sup == std::ldexp(1.0, 2 * static_cast<int>(s));
    r.cases.push_back({"band s=" + std::to_string(s), cert.valid() && sharp,
                       cert.valid() ? "sup " + std::to_string(cert.sup) : cert.violations.front()});
  }
}

}  // namespace

VerifyReport run_suite(std::string_view suite, unsigned scale, std::uint64_t seed) {
  if (!is_verify_suite(suite)) throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  VerifyReport r{std::string(suite), checked_scale(scale), {}, std::nullopt};
  if (suite == "eq6") eq6(r);
  else if (suite == "lemma3") lemma3(r);
  else if (suite == "gat") gat(r);
  else if (suite == "lemma4") lemma4(r);
  else if (suite == "lemma5") lemma5(r);
  else if (suite == "partition") partition(r);
  else if (suite == "parseval") parseval(r, seed);
  else atoms(r, seed);
  return r;
}

}  // namespace wf
