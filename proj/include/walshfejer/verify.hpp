#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walshfejer/kernels.hpp"

namespace wf {

struct VerifyCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  unsigned scale = 0;
  std::vector<VerifyCase> cases;
  std::optional<Lemma4Ratio> lemma4_constant;  // lemma4 suite only

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

/// eq6, lemma3, gat, lemma4, lemma5, partition, parseval, atoms.
const std::vector<std::string>& verify_suites();
bool is_verify_suite(std::string_view name);

/// Runs one suite at scale M. Randomized suites draw from seed.
/// Throws std::invalid_argument for an unknown suite or a scale the suite
/// cannot use.
VerifyReport run_suite(std::string_view suite, unsigned scale, std::uint64_t seed = 0);

}  // namespace wf
