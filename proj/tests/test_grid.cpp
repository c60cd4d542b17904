#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "walshfejer/grid.hpp"

using namespace wf;

namespace {

// w_n(x) as the product of r_k(x)^{n_k}.
int product_walsh(Natural n, const GroupPoint& x) {
  int w = 1;
  for (unsigned k = 0; k < x.scale(); ++k) {
    if ((n >> k) & 1U) w *= rademacher(k, x);
  }
  return w;
}

// c[n] = 2^{-M} sum_x f(x) w_n(x), summed in index order.
Vector<double> naive_transform(const GridFunction& f) {
  Vector<double> c(f.size());
  for (Eigen::Index n = 0; n < f.size(); ++n) {
    double acc = 0.0;
    for (Eigen::Index x = 0; x < f.size(); ++x) acc += f[x] * walsh_sign(static_cast<Natural>(n), static_cast<Natural>(x));
    c(n) = acc / static_cast<double>(f.size());
  }
  return c;
}

GridFunction random_grid(unsigned scale, std::mt19937_64& engine) {
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  return GridFunction::generate(scale, [&](Natural) { return draw(engine); });
}

}  // namespace

TEST_CASE("group addition") {
  const GroupPoint a = GroupPoint::from_coords(std::vector<std::uint8_t>{1, 0, 1});
  const GroupPoint b = GroupPoint::from_coords(std::vector<std::uint8_t>{1, 1, 0});
  CHECK((a + b).coords() == std::vector<std::uint8_t>{0, 1, 1});
  CHECK(a + a == GroupPoint::zero(3));
  CHECK((GroupPoint::unit(0, 4) + GroupPoint::unit(1, 4)).coords() == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK_THROWS_AS(GroupPoint::zero(3) + GroupPoint::zero(4), std::invalid_argument);
  CHECK_THROWS_AS(GroupPoint(3, 8), std::out_of_range);

  for (unsigned m = 0; m <= 4; ++m) {
    const Natural size = Natural{1} << m;
    const GroupPoint zero = GroupPoint::zero(m);
    for (Natural i = 0; i < size; ++i) {
      const GroupPoint x(m, i);
      CHECK(x + zero == x);
      CHECK(x + x == zero);
      for (Natural j = 0; j < size; ++j) {
        const GroupPoint y(m, j);
        CHECK(x + y == y + x);
        for (Natural k = 0; k < size; ++k) {
          const GroupPoint z(m, k);
          CHECK((x + y) + z == x + (y + z));
        }
      }
    }
  }
  std::mt19937_64 engine(7);
  std::uniform_int_distribution<Natural> pick(0, (Natural{1} << 20) - 1);
  for (int t = 0; t < 1000; ++t) {
    const GroupPoint x(20, pick(engine)), y(20, pick(engine)), z(20, pick(engine));
    CHECK((x + y) + z == x + (y + z));
    CHECK(x + y == y + x);
  }
}

TEST_CASE("Rademacher and Walsh functions") {
  const unsigned m = 5;
  for (unsigned k = 0; k < m; ++k) {
    CHECK(rademacher(k, GroupPoint::zero(m)) == 1);
    CHECK(rademacher(k, GroupPoint::unit(k, m)) == -1);
    for (unsigned j = 0; j < m; ++j) {
      if (j != k) CHECK(rademacher(k, GroupPoint::unit(j, m)) == 1);
    }
  }
  CHECK_THROWS_AS(rademacher(m, GroupPoint::zero(m)), std::out_of_range);
  CHECK_THROWS_AS(walsh(Natural{1} << m, GroupPoint::zero(m)), std::out_of_range);

  for (Natural i = 0; i < 32; ++i) {
    const GroupPoint x(m, i);
    CHECK(walsh(0, x) == 1);
    CHECK(walsh(3, x) == ((x.coord(0) + x.coord(1)) % 2 ? -1 : 1));
  }
  for (unsigned scale = 0; scale <= 10; ++scale) {
    const Natural size = Natural{1} << scale;
    for (Natural n = 0; n < size; ++n) {
      for (Natural i = 0; i < size; ++i) REQUIRE(walsh(n, GroupPoint(scale, i)) == product_walsh(n, GroupPoint(scale, i)));
    }
  }
}

TEST_CASE("Walsh system is orthonormal") {
  for (unsigned scale : {1U, 4U, 10U}) {
    const Natural size = Natural{1} << scale;
    const Natural step = scale == 10 ? 37 : 1;
    for (Natural a = 0; a < size; a += step) {
      for (Natural b = 0; b < size; ++b) {
        std::int64_t sum = 0;
        for (Natural x = 0; x < size; ++x) sum += walsh_sign(a, x) * walsh_sign(b, x);
        REQUIRE(sum == (a == b ? static_cast<std::int64_t>(size) : 0));
      }
    }
  }
}

TEST_CASE("dyadic intervals") {
  const DyadicInterval i(GroupPoint(5, 0b10110), 3);
  CHECK(i.residue() == 0b110);
  CHECK(i.measure() == 0.125);
  CHECK(i.cardinality() == 4);
  CHECK(i.members() == std::vector<Natural>{6, 14, 22, 30});
  for (Natural y = 0; y < 32; ++y) {
    const GroupPoint p(5, y);
    bool agree = true;
    for (unsigned j = 0; j < 3; ++j) agree = agree && p.coord(j) == i.base().coord(j);
    CHECK(i.contains(p) == agree);
  }
  CHECK(DyadicInterval::at_zero(0, 5).cardinality() == 32);
  CHECK(DyadicInterval::at_zero(5, 5).members() == std::vector<Natural>{0});
  CHECK_THROWS_AS(DyadicInterval(GroupPoint::zero(3), 4), std::out_of_range);
}

TEST_CASE("transform small cases") {
  const Vector<double> one = transform(GridFunction::constant(6, 1.0));
  CHECK(one(0) == 1.0);
  CHECK(one.tail(63).cwiseAbs().maxCoeff() == 0.0);

  GridFunction r0(1);
  r0[0] = 1.0;
  r0[1] = -1.0;
  const Vector<double> c = transform(r0);
  CHECK(c(0) == 0.0);
  CHECK(c(1) == 1.0);

  Vector<double> unit = Vector<double>::Zero(16);
  unit(0) = 1.0;
  CHECK(inverse_transform(unit) == GridFunction::constant(4, 1.0));
  for (Eigen::Index n = 0; n < 16; ++n) {
    Vector<double> e = Vector<double>::Zero(16);
    e(n) = 1.0;
    const GridFunction w = inverse_transform(e);
    for (Eigen::Index x = 0; x < 16; ++x) CHECK(w[x] == walsh_sign(static_cast<Natural>(n), static_cast<Natural>(x)));
  }
  CHECK_THROWS_AS(inverse_transform(Vector<double>::Zero(6)), std::invalid_argument);
}

TEST_CASE("butterfly agrees with the naive sum") {
  SUBCASE("integer inputs are bit-identical") {
    std::mt19937_64 engine(11);
    std::uniform_int_distribution<int> draw(-1000, 1000);
    for (unsigned scale = 0; scale <= 8; ++scale) {
      const GridFunction f = GridFunction::generate(scale, [&](Natural) { return draw(engine); });
      CHECK(transform(f) == naive_transform(f));
    }
  }
  SUBCASE("real inputs within 1e-12") {
    std::mt19937_64 engine(12);
    for (unsigned scale = 0; scale <= 9; ++scale) {
      const GridFunction f = random_grid(scale, engine);
      CHECK((transform(f) - naive_transform(f)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("round trip and Parseval") {
  std::mt19937_64 engine(13);
  for (unsigned scale = 0; scale <= 14; ++scale) {
    const GridFunction f = random_grid(scale, engine);
    const Vector<double> c = transform(f);
    CHECK((inverse_transform(c).values() - f.values()).cwiseAbs().maxCoeff() <= 1e-12);
    const double energy = integrate(GridFunction(scale, f.values().cwiseAbs2()));
    const Vector<double> c2 = c.cwiseAbs2();
    CHECK(std::abs(energy - pairwise_sum(c2)) <= 1e-12);
  }
}

TEST_CASE("integrals and quasi-norms") {
  CHECK(integrate(GridFunction::constant(5, 3.0)) == 3.0);
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(lp_quasinorm(GridFunction::constant(4, -2.5), p) == doctest::Approx(2.5).epsilon(1e-15));
  }
  const GridFunction indicator = GridFunction::generate(4, [](Natural x) { return (x & 1) == 0 ? 1.0 : 0.0; });
  CHECK(lp_quasinorm(indicator, 0.5) == 0.25);
  CHECK(weak_lp(indicator, 0.5) == 0.25);
  CHECK(weak_lp(GridFunction(3), 1.0) == 0.0);

  // Two levels: |f| = 4 on 1/8 of G, 1 on the rest; sup of lambda mu(|f| > lambda) is max(4/8, 1).
  const GridFunction steps = GridFunction::generate(3, [](Natural x) { return x == 0 ? -4.0 : 1.0; });
  CHECK(weak_lp(steps, 1.0) == 1.0);
  CHECK(weak_lp(steps, 2.0) == doctest::Approx(std::sqrt(2.0)));

  std::mt19937_64 engine(14);
  for (int t = 0; t < 30; ++t) {
    const GridFunction f = random_grid(6, engine);
    for (double p : {0.5, 1.0, 2.0}) CHECK(weak_lp(f, p) <= lp_quasinorm(f, p) * (1 + 1e-15));
  }
  CHECK_THROWS_AS(lp_quasinorm(indicator, 0.0), std::domain_error);
  CHECK_THROWS_AS(weak_lp(indicator, -1.0), std::domain_error);
}

TEST_CASE("complement partition") {
  const auto two = complement_partition(2);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == DyadicInterval(GroupPoint(2, 3), 2));
  CHECK(two[1] == DyadicInterval(GroupPoint(2, 1), 2));
  CHECK(two[2] == DyadicInterval(GroupPoint(2, 2), 2));
  for (unsigned m = 2; m <= 12; ++m) {
    const auto cells = complement_partition(m);
    CHECK(cells.size() == m * (m - 1) / 2 + m);
    std::vector<int> cover(std::size_t{1} << m, 0);
    double measure = 0.0;
    for (const DyadicInterval& c : cells) {
      measure += c.measure();
      for (Natural x : c.members()) ++cover[x];
    }
    std::vector<int> expected(cover.size(), 1);
    expected[0] = 0;
    CHECK(cover == expected);
    CHECK(measure == 1.0 - std::ldexp(1.0, -static_cast<int>(m)));
  }
  CHECK_THROWS_AS(complement_partition(1), std::domain_error);
}

TEST_CASE("grid shape checks") {
  CHECK_THROWS_AS(GridFunction(3, Vector<double>::Zero(7)), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(kMaxScale + 1), std::out_of_range);
}
