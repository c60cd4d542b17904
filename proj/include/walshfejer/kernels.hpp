#pragma once

#include <cstdint>
#include <vector>

#include "walshfejer/dyadic_index.hpp"
#include "walshfejer/grid.hpp"

namespace wf {

/// An exact integer grid holding scale_factor times a kernel quantity, so
/// that half-integer kernel values stay integral.
struct ScaledKernel {
  unsigned scale = 0;
  Natural order = 0;
  Natural scale_factor = 1;
  IntegerGrid values;

  /// values / scale_factor in the requested floating type.
  template <typename Real>
  Grid<Real> as() const {
    return Grid<Real>(scale, (values.values().template cast<Real>() / static_cast<Real>(scale_factor)).eval());
  }
};

/// w_n on G_M as +-1 integers. Requires n < 2^M.
IntegerGrid walsh_grid(Natural n, unsigned scale);

/// D_n = sum_{k<n} w_k, by synthesis of the indicator of {0..n-1}.
/// Requires n <= 2^M.
ScaledKernel dirichlet(Natural n, unsigned scale);

/// D_{2^m}: 2^m on I_m, 0 elsewhere. Requires m <= M.
ScaledKernel dirichlet_pow2_closed(unsigned m, unsigned scale);

/// n K_n = sum_{k=1}^n D_k = sum_{k<n} (n-k) w_k, scale factor n.
/// Requires 1 <= n <= 2^M.
ScaledKernel fejer_scaled(Natural n, unsigned scale);

/// Piecewise form of 2^{m+1} K_{2^m}:
///   2^m (2^m + 1)  on I_m,
///   2^m 2^t        on I_m(e_t), t < m,
///   0              elsewhere.
ScaledKernel fejer_pow2_closed(unsigned m, unsigned scale);

/// 2 n K_n assembled from the decomposition over n = 2^{n_1} + ... + 2^{n_r}:
///   sum_A (prod_{j<A} w_{2^{n_j}}) (2^{n_A} K_{2^{n_A}} + n^{(A)} D_{2^{n_A}}),
/// built only from the closed forms above. Scale factor 2n.
ScaledKernel gat_decomposition(Natural n, unsigned scale);

/// 2 sum_A (2^{l_A} K_{2^{l_A}} + 2^{t_A} K_{2^{t_A}} + 2^{l_A} sum_{k=l_A}^{t_A} D_{2^k})
/// over the blocks (l_A, t_A) of n. Scale factor 2. Requires 1 <= n <= 2^M.
ScaledKernel lemma4_rhs(Natural n, unsigned scale);

/// max_x |n K_n(x)| / RHS(x) as an exact fraction, with 0/0 read as 0.
/// Points where RHS vanishes but n K_n does not are counted as violations.
struct Lemma4Ratio {
  Natural n = 0;
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  std::size_t support_violations = 0;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

Lemma4Ratio lemma4_ratio(Natural n, unsigned scale);
Lemma4Ratio lemma4_ratio(const ScaledKernel& fejer, const ScaledKernel& rhs);

/// True iff a/b > c/d for positive denominators.
bool fraction_greater(const Lemma4Ratio& a, const Lemma4Ratio& b);

enum class Endpoint { lower, upper };

/// E_l = I_{l+1}(e_{l-1} + e_l); for l = 0 the set I_2(e_0 + e_1) is used.
DyadicInterval lower_endpoint_set(unsigned l, unsigned scale);
/// E_t = I_{t+3}(e_{t+1} + e_{t+2}). Throws std::domain_error when t + 3 > M.
DyadicInterval upper_endpoint_set(unsigned t, unsigned scale);

/// One claimed lower bound |n K_n| >= 2^{bound_exponent} on a set.
struct LowerBoundSet {
  Block block;
  Endpoint kind = Endpoint::lower;
  unsigned endpoint = 0;
  DyadicInterval set;
  int bound_exponent = 0;  // 2 * endpoint - 5

  double bound() const;
};

std::vector<LowerBoundSet> lemma5_sets(Natural n, unsigned scale);

struct Lemma5Violation {
  Natural n = 0;
  Block block;
  Endpoint kind = Endpoint::lower;
  unsigned endpoint = 0;
  Natural point = 0;
  std::int64_t scaled_value = 0;  // n K_n at the point
};

/// Every point of every realized set where |n K_n| falls below its bound.
std::vector<Lemma5Violation> lemma5_violations(Natural n, unsigned scale);

}  // namespace wf
