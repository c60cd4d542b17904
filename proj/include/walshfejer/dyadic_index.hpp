#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wf {

using Natural = std::uint64_t;

/// A natural number together with its binary digits, least significant first.
struct DyadicIndex {
  Natural value = 0;
  std::vector<std::uint8_t> bits;
};

/// A maximal run of one-bits covering positions lower..upper inclusive.
struct Block {
  unsigned lower = 0;
  unsigned upper = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Maximal runs of one-bits of an index, in ascending bit order.
class BlockDecomposition {
 public:
  BlockDecomposition() = default;
  explicit BlockDecomposition(std::vector<Block> blocks);

  std::span<const Block> blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }
  auto begin() const { return blocks_.begin(); }
  auto end() const { return blocks_.end(); }

  /// Sum of 2^k over every covered position.
  Natural reconstruct() const;

 private:
  std::vector<Block> blocks_;
};

/// Block endpoints of the members of one dyadic band [2^s, 2^{s+1}).
struct BandSpectrum {
  unsigned band = 0;
  std::vector<Natural> members;
  std::vector<unsigned> lowers;     // sorted, distinct
  std::vector<unsigned> uppers;     // sorted, distinct
  std::vector<unsigned> endpoints;  // lowers U uppers, sorted

  std::size_t r1() const { return lowers.size(); }
  std::size_t r2() const { return uppers.size(); }
  std::size_t r3() const { return endpoints.size(); }
};

DyadicIndex expand(Natural n);

/// Position of the highest one-bit, |n|. Throws for n = 0.
unsigned lead(Natural n);
/// Position of the lowest one-bit, [n]. Throws for n = 0.
unsigned low(Natural n);
/// lead(n) - low(n). Throws for n = 0.
unsigned rho(Natural n);

/// n_0 + sum_k |n_k - n_{k-1}|.
unsigned variation(Natural n);

/// With n = 2^{n_1} + ... + 2^{n_r}, n_1 > ... > n_r, returns
/// 2^{n_{i+1}} + ... + 2^{n_r}. Requires 1 <= i <= r.
Natural tail(Natural n, std::size_t i);

BlockDecomposition blocks(Natural n);

/// Throws if the family is empty or a member lies outside [2^s, 2^{s+1}).
BandSpectrum band_spectrum(unsigned s, std::span<const Natural> family);

/// alpha_k^s = 2^s + 2^{k+1} - 1 for k = 0..s-1.
std::vector<Natural> alpha_sequence(unsigned s);
/// beta_k^s = 2^{s+1} - 2^k for k = 0..s-1.
std::vector<Natural> beta_sequence(unsigned s);

}  // namespace wf
