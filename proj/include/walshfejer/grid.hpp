#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "walshfejer/dyadic_index.hpp"

namespace wf {

/// Largest scale a grid may have (2^26 values).
inline constexpr unsigned kMaxScale = 26;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline unsigned checked_scale(unsigned scale) {
  if (scale > kMaxScale) {
    throw std::out_of_range("scale " + std::to_string(scale) + " exceeds " + std::to_string(kMaxScale));
  }
  return scale;
}

/// Number of points of G_M.
inline Eigen::Index grid_size(unsigned scale) { return Eigen::Index{1} << checked_scale(scale); }

/// A function on the truncated group G_M. The value at array index
/// sum_j x_j 2^j is f(x), so coordinate 0 is the least significant bit.
template <typename Scalar>
class Grid {
 public:
  using value_type = Scalar;

  Grid() : Grid(0U) {}
  explicit Grid(unsigned scale) : scale_(checked_scale(scale)), values_(Vector<Scalar>::Zero(grid_size(scale))) {}
  Grid(unsigned scale, Vector<Scalar> values) : scale_(checked_scale(scale)), values_(std::move(values)) {
    if (values_.size() != grid_size(scale)) {
      throw std::invalid_argument("grid of scale " + std::to_string(scale) + " needs " +
                                  std::to_string(grid_size(scale)) + " values, got " +
                                  std::to_string(values_.size()));
    }
  }

  static Grid constant(unsigned scale, Scalar c) {
    return Grid(scale, Vector<Scalar>::Constant(grid_size(scale), c));
  }

  /// Grid with value f(index) at every index.
  template <typename F>
  static Grid generate(unsigned scale, F&& f) {
    Vector<Scalar> v(grid_size(scale));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = static_cast<Scalar>(f(static_cast<Natural>(i)));
    return Grid(scale, std::move(v));
  }

  unsigned scale() const { return scale_; }
  Eigen::Index size() const { return values_.size(); }
  const Vector<Scalar>& values() const { return values_; }
  Vector<Scalar>& values() { return values_; }
  Scalar operator[](Eigen::Index i) const { return values_(i); }
  Scalar& operator[](Eigen::Index i) { return values_(i); }

  template <typename To>
  Grid<To> cast() const {
    return Grid<To>(scale_, values_.template cast<To>());
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.scale_ == b.scale_ && a.values_ == b.values_;
  }

 private:
  unsigned scale_;
  Vector<Scalar> values_;
};

using GridFunction = Grid<double>;
using IntegerGrid = Grid<std::int64_t>;

/// A point of G_M, stored as its array index.
class GroupPoint {
 public:
  GroupPoint(unsigned scale, Natural index);
  static GroupPoint zero(unsigned scale) { return {scale, 0}; }
  /// e_k: the point whose only nonzero coordinate is x_k.
  static GroupPoint unit(unsigned k, unsigned scale);
  static GroupPoint from_coords(std::span<const std::uint8_t> coords);

  unsigned scale() const { return scale_; }
  Natural index() const { return index_; }
  unsigned coord(unsigned k) const;
  std::vector<std::uint8_t> coords() const;

  /// Coordinate-wise addition mod 2. Throws on a scale mismatch.
  friend GroupPoint operator+(const GroupPoint& x, const GroupPoint& y);
  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;

 private:
  unsigned scale_;
  Natural index_;
};

/// r_k(x) = (-1)^{x_k}. Requires k < M.
int rademacher(unsigned k, const GroupPoint& x);

/// w_n(x) = (-1)^{popcount(n & index(x))}. Requires n < 2^M.
int walsh(Natural n, const GroupPoint& x);

inline int walsh_sign(Natural n, Natural x) { return (std::popcount(n & x) & 1) ? -1 : 1; }

/// I_n(x): points agreeing with x in coordinates 0..n-1.
class DyadicInterval {
 public:
  DyadicInterval(GroupPoint base, unsigned depth);
  /// I_n = I_n(0) on G_M.
  static DyadicInterval at_zero(unsigned depth, unsigned scale) { return {GroupPoint::zero(scale), depth}; }

  const GroupPoint& base() const { return base_; }
  unsigned depth() const { return depth_; }
  unsigned scale() const { return base_.scale(); }
  /// Index of the base point modulo 2^depth; members are residue + j 2^depth.
  Natural residue() const { return base_.index() & mask(); }

  bool contains(Natural index) const { return (index & mask()) == residue(); }
  bool contains(const GroupPoint& y) const;
  double measure() const { return std::ldexp(1.0, -static_cast<int>(depth_)); }
  Natural cardinality() const { return Natural{1} << (scale() - depth_); }
  std::vector<Natural> members() const;

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.depth_ == b.depth_ && a.scale() == b.scale() && a.residue() == b.residue();
  }

 private:
  Natural mask() const { return (Natural{1} << depth_) - 1; }

  GroupPoint base_;
  unsigned depth_;
};

/// Cells I_{l+1}(e_k + e_l), 0 <= k < l < M, followed by I_M(e_k), 0 <= k < M.
/// Together they partition G_M minus I_M. Requires M >= 2.
std::vector<DyadicInterval> complement_partition(unsigned scale);

/// In-place unnormalized Walsh-Hadamard butterfly in Paley order:
/// v[n] <- sum_x v[x] (-1)^{popcount(n & x)}. Exact for integer scalars.
template <typename Derived>
void walsh_butterfly(Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("butterfly length must be a power of two");
  Vector<Scalar> upper;
  for (Eigen::Index h = 1; h < n; h <<= 1) {
    for (Eigen::Index i = 0; i < n; i += 2 * h) {
      upper = v.segment(i + h, h);
      v.segment(i + h, h) = v.segment(i, h) - upper;
      v.segment(i, h) += upper;
    }
  }
}

/// sum_n c[n] w_n as a grid. Length must be a power of two.
template <typename Derived>
Grid<typename Derived::Scalar> synthesize(const Eigen::DenseBase<Derived>& coefficients) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = coefficients.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("coefficient array length " + std::to_string(n) + " is not a power of two");
  }
  Vector<Scalar> v = coefficients;
  walsh_butterfly(v);
  return Grid<Scalar>(static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(n))), std::move(v));
}

/// Walsh-Fourier coefficients c[n] = 2^{-M} sum_x f(x) w_n(x).
template <typename Scalar>
Vector<Scalar> transform(const Grid<Scalar>& f) {
  static_assert(std::is_floating_point_v<Scalar>, "transform needs a floating-point grid");
  Vector<Scalar> c = f.values();
  walsh_butterfly(c);
  c /= static_cast<Scalar>(f.size());
  return c;
}

template <typename Derived>
Grid<typename Derived::Scalar> inverse_transform(const Eigen::DenseBase<Derived>& coefficients) {
  return synthesize(coefficients);
}

namespace detail {
template <typename Scalar>
Scalar pairwise_sum(const Scalar* data, Eigen::Index n) {
  if (n <= 16) {
    Scalar s{0};
    for (Eigen::Index i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const Eigen::Index half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}
}  // namespace detail

/// Pairwise (tree) summation with a fixed split order.
template <typename Derived>
typename Derived::Scalar pairwise_sum(const Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Ref<const Vector<Scalar>> contiguous(v.derived());
  return detail::pairwise_sum(contiguous.data(), contiguous.size());
}

template <typename Scalar>
Scalar integrate(const Grid<Scalar>& f) {
  return pairwise_sum(f.values()) / static_cast<Scalar>(f.size());
}

inline void require_positive_exponent(double p) {
  if (!(p > 0.0)) throw std::domain_error("exponent p must be positive");
}

/// (2^{-M} sum |f|^p)^{1/p}.
template <typename Scalar>
Scalar lp_quasinorm(const Grid<Scalar>& f, double p) {
  require_positive_exponent(p);
  const Vector<Scalar> powered = f.values().array().abs().pow(static_cast<Scalar>(p)).matrix();
  const Scalar mean = pairwise_sum(powered) / static_cast<Scalar>(f.size());
  return std::pow(mean, static_cast<Scalar>(1.0 / p));
}

/// (sup_{lambda > 0} lambda^p mu(|f| > lambda))^{1/p}. The supremum over each
/// constant stretch of the distribution function is approached as lambda
/// rises to the next distinct value v of |f|, giving v^p mu(|f| >= v).
template <typename Scalar>
Scalar weak_lp(const Grid<Scalar>& f, double p) {
  require_positive_exponent(p);
  std::vector<Scalar> mags(static_cast<std::size_t>(f.size()));
  for (Eigen::Index i = 0; i < f.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(f[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const auto total = static_cast<Scalar>(mags.size());
  Scalar best{0};
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (mags[i] <= Scalar{0}) break;
    if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;
    const Scalar level = std::pow(mags[i], static_cast<Scalar>(p)) * static_cast<Scalar>(i + 1) / total;
    best = std::max(best, level);
  }
  return std::pow(best, static_cast<Scalar>(1.0 / p));
}

template <typename Scalar>
Scalar sup_norm(const Grid<Scalar>& f) {
  return f.size() == 0 ? Scalar{0} : f.values().cwiseAbs().maxCoeff();
}

}  // namespace wf
