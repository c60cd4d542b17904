#include "walshfejer/dyadic_index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace wf {

namespace {

void require_positive(Natural n, const char* what) {
  if (n == 0) {
    throw std::domain_error(std::string(what) + " is undefined for n = 0");
  }
}

void sort_unique(std::vector<unsigned>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

BlockDecomposition::BlockDecomposition(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].lower > blocks_[i].upper || blocks_[i].upper > 63) {
      throw std::invalid_argument("block endpoints out of order");
    }
    if (i > 0 && blocks_[i].lower < blocks_[i - 1].upper + 2) {
      throw std::invalid_argument("blocks must be separated by at least one zero bit");
    }
  }
}

Natural BlockDecomposition::reconstruct() const {
  Natural n = 0;
  for (const Block& b : blocks_) {
    for (unsigned k = b.lower; k <= b.upper; ++k) n |= Natural{1} << k;
  }
  return n;
}

DyadicIndex expand(Natural n) {
  DyadicIndex out;
  out.value = n;
  for (Natural m = n; m != 0; m >>= 1) out.bits.push_back(static_cast<std::uint8_t>(m & 1U));
  return out;
}

unsigned lead(Natural n) {
  require_positive(n, "|n|");
  return static_cast<unsigned>(std::bit_width(n) - 1);
}

unsigned low(Natural n) {
  require_positive(n, "[n]");
  return static_cast<unsigned>(std::countr_zero(n));
}

unsigned rho(Natural n) {
  require_positive(n, "rho(n)");
  return lead(n) - low(n);
}

unsigned variation(Natural n) {
  // n_0 plus the number of digit changes; the digit above the top bit is 0.
  return static_cast<unsigned>(std::popcount(n ^ (n << 1)) + ((n >> 63) & 1U));
}

Natural tail(Natural n, std::size_t i) {
  const auto r = static_cast<std::size_t>(std::popcount(n));
  if (i < 1 || i > r) {
    throw std::out_of_range("tail index " + std::to_string(i) + " outside 1.." + std::to_string(r));
  }
  Natural rest = n;
  for (std::size_t k = 0; k < i; ++k) rest &= ~(Natural{1} << (std::bit_width(rest) - 1));
  return rest;
}

BlockDecomposition blocks(Natural n) {
  require_positive(n, "block decomposition");
  std::vector<Block> out;
  Natural m = n;
  unsigned offset = 0;
  while (m != 0) {
    const auto zeros = static_cast<unsigned>(std::countr_zero(m));
    m >>= zeros;
    offset += zeros;
    const auto ones = static_cast<unsigned>(std::countr_one(m));
    out.push_back({offset, offset + ones - 1});
    m = ones >= 64 ? 0 : m >> ones;
    offset += ones;
  }
  return BlockDecomposition(std::move(out));
}

BandSpectrum band_spectrum(unsigned s, std::span<const Natural> family) {
  if (s > 63) throw std::out_of_range("band exponent exceeds 63");
  if (family.empty()) throw std::invalid_argument("band spectrum of an empty family");
  BandSpectrum spec;
  spec.band = s;
  for (Natural m : family) {
    if (m == 0 || lead(m) != s) {
      throw std::invalid_argument("index " + std::to_string(m) + " is outside band [2^" +
                                  std::to_string(s) + ", 2^" + std::to_string(s + 1) + ")");
    }
    spec.members.push_back(m);
    for (const Block& b : blocks(m)) {
      spec.lowers.push_back(b.lower);
      spec.uppers.push_back(b.upper);
    }
  }
  sort_unique(spec.lowers);
  sort_unique(spec.uppers);
  spec.endpoints = spec.lowers;
  spec.endpoints.insert(spec.endpoints.end(), spec.uppers.begin(), spec.uppers.end());
  sort_unique(spec.endpoints);
  return spec;
}

std::vector<Natural> alpha_sequence(unsigned s) {
  if (s == 0 || s > 62) throw std::out_of_range("alpha sequence needs 1 <= s <= 62");
  std::vector<Natural> out;
  for (unsigned k = 0; k < s; ++k) out.push_back((Natural{1} << s) + (Natural{1} << (k + 1)) - 1);
  return out;
}

std::vector<Natural> beta_sequence(unsigned s) {
  if (s == 0 || s > 62) throw std::out_of_range("beta sequence needs 1 <= s <= 62");
  std::vector<Natural> out;
  for (unsigned k = 0; k < s; ++k) out.push_back((Natural{1} << (s + 1)) - (Natural{1} << k));
  return out;
}

}  // namespace wf
