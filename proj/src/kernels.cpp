#include "walshfejer/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wf {

namespace {

Natural points(unsigned scale) { return Natural{1} << checked_scale(scale); }

void require_order_within(Natural n, unsigned scale, const char* what) {
  if (n > points(scale)) {
    throw std::out_of_range(std::string(what) + " order " + std::to_string(n) + " exceeds 2^" +
                            std::to_string(scale));
  }
}

void require_exponent_within(unsigned m, unsigned scale) {
  if (m > scale) throw std::out_of_range("kernel exponent " + std::to_string(m) + " exceeds the scale");
}

}  // namespace

IntegerGrid walsh_grid(Natural n, unsigned scale) {
  if (n >= points(scale)) throw std::out_of_range("Walsh index must be below 2^M");
  return IntegerGrid::generate(scale, [n](Natural x) { return walsh_sign(n, x); });
}

ScaledKernel dirichlet(Natural n, unsigned scale) {
  require_order_within(n, scale, "Dirichlet");
  Vector<std::int64_t> c = Vector<std::int64_t>::Zero(static_cast<Eigen::Index>(points(scale)));
  c.head(static_cast<Eigen::Index>(n)).setOnes();
  return {scale, n, 1, synthesize(c)};
}

ScaledKernel dirichlet_pow2_closed(unsigned m, unsigned scale) {
  require_exponent_within(m, scale);
  const Natural mask = (Natural{1} << m) - 1;
  const auto height = static_cast<std::int64_t>(Natural{1} << m);
  auto values = IntegerGrid::generate(scale, [&](Natural x) { return (x & mask) == 0 ? height : 0; });
  return {scale, Natural{1} << m, 1, std::move(values)};
}

ScaledKernel fejer_scaled(Natural n, unsigned scale) {
  if (n == 0) throw std::domain_error("Fejer kernel needs n >= 1");
  require_order_within(n, scale, "Fejer");
  Vector<std::int64_t> c = Vector<std::int64_t>::Zero(static_cast<Eigen::Index>(points(scale)));
  for (Natural k = 0; k < n; ++k) c(static_cast<Eigen::Index>(k)) = static_cast<std::int64_t>(n - k);
  return {scale, n, n, synthesize(c)};
}

ScaledKernel fejer_pow2_closed(unsigned m, unsigned scale) {
  require_exponent_within(m, scale);
  const Natural mask = (Natural{1} << m) - 1;
  const auto two_m = static_cast<std::int64_t>(Natural{1} << m);
  auto values = IntegerGrid::generate(scale, [&](Natural x) -> std::int64_t {
    const Natural head = x & mask;
    if (head == 0) return two_m * (two_m + 1);
    if (std::has_single_bit(head)) return two_m * static_cast<std::int64_t>(head);  // x in I_m(e_t), head = 2^t
    return 0;
  });
  return {scale, Natural{1} << m, Natural{1} << (m + 1), std::move(values)};
}

ScaledKernel gat_decomposition(Natural n, unsigned scale) {
  if (n == 0) throw std::domain_error("decomposition needs n >= 1");
  require_order_within(n, scale, "decomposition");
  Vector<std::int64_t> sum = Vector<std::int64_t>::Zero(static_cast<Eigen::Index>(points(scale)));
  Vector<std::int64_t> prefix = Vector<std::int64_t>::Ones(sum.size());
  const auto r = static_cast<std::size_t>(std::popcount(n));
  Natural rest = n;
  for (std::size_t a = 1; a <= r; ++a) {
    const auto power = static_cast<unsigned>(std::bit_width(rest) - 1);
    rest &= ~(Natural{1} << power);
    const auto lower_part = static_cast<std::int64_t>(rest);  // n^{(A)}
    Vector<std::int64_t> term = fejer_pow2_closed(power, scale).values.values();
    term += 2 * lower_part * dirichlet_pow2_closed(power, scale).values.values();
    sum += prefix.cwiseProduct(term);
    if (a < r) prefix = prefix.cwiseProduct(walsh_grid(Natural{1} << power, scale).values());
  }
  return {scale, n, 2 * n, IntegerGrid(scale, std::move(sum))};
}

ScaledKernel lemma4_rhs(Natural n, unsigned scale) {
  if (n == 0) throw std::domain_error("Lemma 4 bound needs n >= 1");
  require_order_within(n, scale, "bound");
  Vector<std::int64_t> sum = Vector<std::int64_t>::Zero(static_cast<Eigen::Index>(points(scale)));
  for (const Block& b : blocks(n)) {
    sum += fejer_pow2_closed(b.lower, scale).values.values();
    sum += fejer_pow2_closed(b.upper, scale).values.values();
    const auto weight = static_cast<std::int64_t>(Natural{1} << (b.lower + 1));
    for (unsigned k = b.lower; k <= b.upper; ++k) {
      sum += weight * dirichlet_pow2_closed(k, scale).values.values();
    }
  }
  return {scale, n, 2, IntegerGrid(scale, std::move(sum))};
}

bool fraction_greater(const Lemma4Ratio& a, const Lemma4Ratio& b) {
  __extension__ using Wide = __int128;
  return static_cast<Wide>(a.numerator) * b.denominator > static_cast<Wide>(b.numerator) * a.denominator;
}

Lemma4Ratio lemma4_ratio(const ScaledKernel& fejer, const ScaledKernel& rhs) {
  if (fejer.scale != rhs.scale || fejer.order != rhs.order) {
    throw std::invalid_argument("kernel and bound belong to different n or M");
  }
  Lemma4Ratio best{fejer.order, 0, 1, 0};
  // |n K_n| / RHS = (2 |n K_n|) / (2 RHS); both sides are stored exactly.
  const auto& lhs = fejer.values.values();
  const auto& r = rhs.values.values();
  for (Eigen::Index x = 0; x < lhs.size(); ++x) {
    const std::int64_t num = 2 * std::llabs(lhs(x));
    if (r(x) == 0) {
      if (num != 0) ++best.support_violations;
      continue;
    }
    const Lemma4Ratio candidate{fejer.order, num, r(x), 0};
    if (fraction_greater(candidate, best)) {
      best.numerator = num;
      best.denominator = r(x);
    }
  }
  const std::int64_t g = std::gcd(best.numerator, best.denominator);
  best.numerator /= g;
  best.denominator /= g;
  return best;
}

Lemma4Ratio lemma4_ratio(Natural n, unsigned scale) {
  return lemma4_ratio(fejer_scaled(n, scale), lemma4_rhs(n, scale));
}

DyadicInterval lower_endpoint_set(unsigned l, unsigned scale) {
  if (l == 0) {
    if (scale < 2) throw std::domain_error("E_0 needs M >= 2");
    return {GroupPoint::unit(0, scale) + GroupPoint::unit(1, scale), 2};
  }
  if (l + 1 > scale) throw std::domain_error("E_l needs M >= l + 1");
  return {GroupPoint::unit(l - 1, scale) + GroupPoint::unit(l, scale), l + 1};
}

DyadicInterval upper_endpoint_set(unsigned t, unsigned scale) {
  if (t + 3 > scale) {
    throw std::domain_error("E_t for t = " + std::to_string(t) + " needs M >= " + std::to_string(t + 3));
  }
  return {GroupPoint::unit(t + 1, scale) + GroupPoint::unit(t + 2, scale), t + 3};
}

double LowerBoundSet::bound() const { return std::ldexp(1.0, bound_exponent); }

std::vector<LowerBoundSet> lemma5_sets(Natural n, unsigned scale) {
  std::vector<LowerBoundSet> out;
  for (const Block& b : blocks(n)) {
    out.push_back({b, Endpoint::upper, b.upper, upper_endpoint_set(b.upper, scale),
                   2 * static_cast<int>(b.upper) - 5});
    out.push_back({b, Endpoint::lower, b.lower, lower_endpoint_set(b.lower, scale),
                   2 * static_cast<int>(b.lower) - 5});
  }
  return out;
}

std::vector<Lemma5Violation> lemma5_violations(Natural n, unsigned scale) {
  const auto sets = lemma5_sets(n, scale);
  const ScaledKernel kernel = fejer_scaled(n, scale);
  std::vector<Lemma5Violation> out;
  for (const LowerBoundSet& s : sets) {
    // |n K_n| >= 2^{2u-5}  <=>  32 |n K_n| >= 2^{2u}
    const std::int64_t threshold = std::int64_t{1} << (2 * s.endpoint);
    for (Natural x : s.set.members()) {
      const std::int64_t v = kernel.values[static_cast<Eigen::Index>(x)];
      if (32 * std::llabs(v) < threshold) out.push_back({n, s.block, s.kind, s.endpoint, x, v});
    }
  }
  return out;
}

}  // namespace wf
