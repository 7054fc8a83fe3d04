#include <doctest.h>

#include <cmath>

#include "bohr/series.hpp"
#include "oracles.hpp"

using namespace bohr;
using doctest::Approx;

namespace {

TruncatedPowerSeries z1(int n, int d) { return TruncatedPowerSeries::monomial(MultiIndex::unit(n, 0), 1.0, d); }

}  // namespace

TEST_CASE("multi-index graded order and counts") {
  CHECK(MultiIndex{0, 2} < MultiIndex{1, 1});
  CHECK(MultiIndex{1, 1} < MultiIndex{2, 0});
  CHECK(MultiIndex{3, 0} > MultiIndex{0, 2});
  CHECK((MultiIndex{1, 0} + MultiIndex{0, 2}) == MultiIndex{1, 2});
  CHECK(MultiIndex{2, 1}.multinomial() == 3.0);
  CHECK(MultiIndex{2, 2, 2}.multinomial() == 90.0);
  CHECK(count_of_degree(3, 4) == 15.0);
  int seen = 0;
  MultiIndex last;
  for_each_index_of_degree(3, 4, [&](const MultiIndex& a) {
    CHECK(a.degree() == 4);
    if (seen++ > 0) CHECK(last < a);
    last = a;
  });
  CHECK(seen == 15);
}

TEST_CASE("constant and monomial evaluation") {
  const auto c = TruncatedPowerSeries::constant(1, 3, 0.5);
  const Complex z[] = {Complex{0.7, -0.2}};
  CHECK(eval(c, z) == Complex{0.5, 0.0});
  const auto sq = TruncatedPowerSeries::monomial(MultiIndex{2}, 1.0, 2);
  const Complex two[] = {Complex{2.0, 0.0}};
  CHECK(eval(sq, two) == Complex{4.0, 0.0});
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(TruncatedPowerSeries(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedPowerSeries(1, -1), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedPowerSeries(1, 1, {{MultiIndex{3}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedPowerSeries(2, 3, {{MultiIndex{1}, 1.0}}), std::invalid_argument);
  const TruncatedPowerSeries merged(1, 2, {{MultiIndex{1}, 1.0}, {MultiIndex{1}, 2.0}, {MultiIndex{2}, 0.0}});
  CHECK(merged.terms().size() == 1);
  CHECK(merged.coefficient(MultiIndex{1}) == Complex{3.0, 0.0});
}

TEST_CASE("mobius coefficients match long division") {
  for (double a : {0.1, 0.5, 0.9}) {
    const auto f = mobius_series(a, 25);
    const auto ref = oracle::mobius_coefficients(a, 25);
    for (int k = 0; k <= 25; ++k) CHECK(f.coefficient(MultiIndex{k}).real() == Approx(ref[static_cast<std::size_t>(k)]).epsilon(1e-14));
  }
  const auto f = mobius_series(0.5, 10);
  CHECK(f.constant_term().real() == 0.5);
  CHECK(f.coefficient(MultiIndex{1}).real() == Approx(-0.75));
  CHECK(f.coefficient(MultiIndex{3}).real() == Approx(-0.1875));
  CHECK_THROWS_AS(mobius_series(1.0, 5), std::domain_error);
}

TEST_CASE("mobius value within the tail bound") {
  const auto f = mobius_series(0.5, 30);
  const Complex z[] = {Complex{0.2, 0.0}};
  const double exact = (0.5 - 0.2) / (1.0 - 0.1);
  CHECK(std::abs(eval(f, z) - exact) <= f.tail_bound_at(0.2));
  CHECK(f.tail_bound_at(0.2) < 1e-18);
  CHECK(f.tail_order() == 31);
  CHECK(std::isinf(f.with_tail(TailBound{1.0, 0.5}).tail_bound_at(0.6)));
}

TEST_CASE("rotate and scale") {
  const auto f = mobius_series(0.5, 8);
  const auto same = rotate(f, 0.0);
  for (const auto& t : f.terms()) CHECK(same.coefficient(t.index) == t.coefficient);
  CHECK(rotate(f, std::numbers::pi).constant_term().real() == Approx(-0.5));
  const auto quarter = rotate(f, std::numbers::pi / 2);
  for (const auto& t : f.terms()) CHECK(std::abs(quarter.coefficient(t.index)) == Approx(std::abs(t.coefficient)));
  CHECK(shifted(f, 1.0).constant_term().real() == Approx(1.5));
  CHECK(scaled(f, 2.0).coefficient(MultiIndex{1}).real() == Approx(-1.5));
}

TEST_CASE("compose_linear") {
  const std::vector<Complex> ones{1.0, 1.0};
  const auto lin = compose_linear(z1(1, 3), ones);
  CHECK(lin.coefficient(MultiIndex{1, 0}) == Complex{1.0, 0.0});
  CHECK(lin.coefficient(MultiIndex{0, 1}) == Complex{1.0, 0.0});
  const auto sq = compose_linear(TruncatedPowerSeries::monomial(MultiIndex{2}, 1.0, 2), ones);
  CHECK(sq.coefficient(MultiIndex{2, 0}).real() == Approx(1.0));
  CHECK(sq.coefficient(MultiIndex{1, 1}).real() == Approx(2.0));
  CHECK(sq.coefficient(MultiIndex{0, 2}).real() == Approx(1.0));
  const auto m = compose_linear(mobius_series(0.5, 10), ones);
  // degree-2 index: c_2 * multinomial(1,1) = -0.375 * 2
  CHECK(m.coefficient(MultiIndex{1, 1}).real() == Approx(-0.75));

  // two-variable torus sum oracle on the closed form
  const int N = 32;
  const double rho = 0.5;
  Complex sum{};
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      const Complex w1 = std::polar(rho, 2 * std::numbers::pi * j / N);
      const Complex w2 = std::polar(rho, 2 * std::numbers::pi * k / N);
      const Complex s = w1 + w2;
      sum += (0.5 - s) / (1.0 - 0.5 * s) / (w1 * w2);
    }
  }
  CHECK(std::abs(sum / double(N * N) - m.coefficient(MultiIndex{1, 1})) < 1e-9);
}

TEST_CASE("multiply") {
  const auto f = mobius_series(0.5, 8);
  const auto one = TruncatedPowerSeries::constant(1, 0, 1.0);
  const auto fo = multiply(f, one);
  for (const auto& t : f.terms()) CHECK(std::abs(fo.coefficient(t.index) - t.coefficient) < 1e-15);
  const auto zz = multiply(z1(1, 1), z1(1, 1));
  CHECK(zz.coefficient(MultiIndex{2}) == Complex{1.0, 0.0});
  CHECK(zz.terms().size() == 1);

  const auto g = mobius_series(0.5, 20);
  const auto g2 = multiply(g, g, 20);
  const Complex z[] = {Complex{0.1, 0.0}};
  const Complex exact = std::pow((0.5 - 0.1) / (1.0 - 0.05), 2);
  CHECK(std::abs(eval(g2, z) - exact) < 1e-10);
  CHECK(std::abs(eval(g2, z) - exact) <= g2.tail_bound_at(0.1) + 1e-15);
}

TEST_CASE("compose with an outer Taylor expansion") {
  // 1/(1-w) about 0 applied to z/2
  std::vector<Complex> geometric(16, Complex{1.0, 0.0});
  const auto inner = scaled(z1(1, 15), 0.5);
  const auto f = compose(geometric, inner, 15);
  for (int k = 0; k <= 15; ++k) CHECK(f.coefficient(MultiIndex{k}).real() == Approx(std::pow(0.5, k)));
}

TEST_CASE("coefficient extraction") {
  const auto sq = extract_coefficients([](std::span<const Complex> z) { return z[0] * z[0]; }, 1, 4, 0.9, 16);
  CHECK(std::abs(sq.coefficient(MultiIndex{2}) - 1.0) < 1e-12);
  for (int k : {0, 1, 3, 4}) CHECK(std::abs(sq.coefficient(MultiIndex{k})) < 1e-12);

  const auto mob = extract_coefficients([](std::span<const Complex> z) { return (0.7 - z[0]) / (1.0 - 0.7 * z[0]); }, 1, 10,
                                        0.8, 64);
  const auto ref = mobius_series(0.7, 10);
  for (int k = 0; k <= 10; ++k) CHECK(std::abs(mob.coefficient(MultiIndex{k}) - ref.coefficient(MultiIndex{k})) < 1e-9);

  const auto naive = oracle::naive_dft_coefficients([](Complex z) { return std::exp(z); }, 8, 0.6, 48);
  const auto ex = extract_coefficients([](std::span<const Complex> z) { return std::exp(z[0]); }, 1, 8, 0.6, 48);
  for (int k = 0; k <= 8; ++k) CHECK(std::abs(ex.coefficient(MultiIndex{k}) - naive[static_cast<std::size_t>(k)]) < 1e-12);

  const auto mixed = extract_coefficients([](std::span<const Complex> z) { return z[0] * z[1]; }, 2, 3, 0.5, 8);
  CHECK(std::abs(mixed.coefficient(MultiIndex{1, 1}) - 1.0) < 1e-12);
  for (const auto& t : mixed.terms()) {
    if (t.index != MultiIndex{1, 1}) CHECK(std::abs(t.coefficient) < 1e-12);
  }
  CHECK(mixed.tail().has_value());
}

TEST_CASE("text round trip") {
  const auto f = compose_linear(mobius_series(0.3, 6), std::vector<Complex>{Complex{0.5, 0.1}, Complex{-0.2, 0.4}});
  const auto g = from_text(to_text(f));
  REQUIRE(g.terms().size() == f.terms().size());
  for (std::size_t i = 0; i < f.terms().size(); ++i) {
    CHECK(g.terms()[i].index == f.terms()[i].index);
    CHECK(g.terms()[i].coefficient == f.terms()[i].coefficient);
  }
  CHECK_THROWS(from_text(""));
}
