#include "walshfejer/grid.hpp"

namespace wf {

GroupPoint::GroupPoint(unsigned scale, Natural index) : scale_(checked_scale(scale)), index_(index) {
  if (index >= (Natural{1} << scale)) {
    throw std::out_of_range("point index " + std::to_string(index) + " outside G_" + std::to_string(scale));
  }
}

GroupPoint GroupPoint::unit(unsigned k, unsigned scale) {
  if (k >= scale) throw std::out_of_range("e_k needs k < M");
  return {scale, Natural{1} << k};
}

GroupPoint GroupPoint::from_coords(std::span<const std::uint8_t> coords) {
  Natural index = 0;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] > 1) throw std::invalid_argument("coordinates must be 0 or 1");
    index |= Natural{coords[k]} << k;
  }
  return {static_cast<unsigned>(coords.size()), index};
}

unsigned GroupPoint::coord(unsigned k) const {
  if (k >= scale_) throw std::out_of_range("coordinate outside the point's scale");
  return static_cast<unsigned>((index_ >> k) & 1U);
}

std::vector<std::uint8_t> GroupPoint::coords() const {
  std::vector<std::uint8_t> out(scale_);
  for (unsigned k = 0; k < scale_; ++k) out[k] = static_cast<std::uint8_t>((index_ >> k) & 1U);
  return out;
}

GroupPoint operator+(const GroupPoint& x, const GroupPoint& y) {
  if (x.scale_ != y.scale_) throw std::invalid_argument("cannot add points of different scales");
  return {x.scale_, x.index_ ^ y.index_};
}

int rademacher(unsigned k, const GroupPoint& x) {
  if (k >= x.scale()) throw std::out_of_range("Rademacher index must be below the scale");
  return x.coord(k) ? -1 : 1;
}

int walsh(Natural n, const GroupPoint& x) {
  if (n >= (Natural{1} << x.scale())) throw std::out_of_range("Walsh index must be below 2^M");
  return walsh_sign(n, x.index());
}

DyadicInterval::DyadicInterval(GroupPoint base, unsigned depth) : base_(base), depth_(depth) {
  if (depth > base_.scale()) throw std::out_of_range("interval depth exceeds the scale");
}

bool DyadicInterval::contains(const GroupPoint& y) const {
  if (y.scale() != scale()) throw std::invalid_argument("point and interval scales differ");
  return contains(y.index());
}

std::vector<Natural> DyadicInterval::members() const {
  std::vector<Natural> out;
  out.reserve(static_cast<std::size_t>(cardinality()));
  const Natural step = Natural{1} << depth_;
  for (Natural i = residue(); i < (Natural{1} << scale()); i += step) out.push_back(i);
  return out;
}

std::vector<DyadicInterval> complement_partition(unsigned scale) {
  if (scale < 2) throw std::domain_error("complement partition needs M >= 2");
  std::vector<DyadicInterval> cells;
  for (unsigned k = 0; k + 1 < scale; ++k) {
    for (unsigned l = k + 1; l < scale; ++l) {
      cells.emplace_back(GroupPoint::unit(k, scale) + GroupPoint::unit(l, scale), l + 1);
    }
  }
  for (unsigned k = 0; k < scale; ++k) cells.emplace_back(GroupPoint::unit(k, scale), scale);
  return cells;
}

}  // namespace wf
