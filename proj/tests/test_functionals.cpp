#include <doctest.h>

#include <cmath>

#include "bohr/functionals.hpp"
#include "bohr/generator.hpp"
#include "oracles.hpp"

using namespace bohr;
using doctest::Approx;

namespace {

TruncatedPowerSeries linear(int n) {
  std::vector<Term> t;
  for (int i = 0; i < n; ++i) t.push_back({MultiIndex::unit(n, i), 1.0});
  return TruncatedPowerSeries(n, 1, t);
}

double brute_r1(const TruncatedPowerSeries& f, const ReinhardtDomain& d, double r) {
  return oracle::sphere_max(d.dimension(), d.p(), r, [&](const std::vector<double>& t) {
    return majorant_value(f, std::span<const double>(t));
  });
}

}  // namespace

TEST_CASE("majorant values") {
  const auto c = TruncatedPowerSeries::constant(1, 2, 3.0);
  const Complex z[] = {0.4};
  CHECK(majorant_value(c, z) == 0.0);
  const auto m = mobius_series(0.5, 40);
  const Complex half[] = {0.5};
  CHECK(majorant_value(m, half) == Approx(0.5).epsilon(1e-8));
  const TruncatedPowerSeries f(2, 2, {{MultiIndex{1, 1}, 2.0}});
  const Complex w[] = {0.3, 0.5};
  CHECK(majorant_value(f, w) == Approx(0.3));
}

TEST_CASE("r1 and r2 examples") {
  const auto s = linear(2);
  CHECK(r1_norm(s, ReinhardtDomain::polydisk(2), 0.5).value == Approx(1.0));
  CHECK(r1_norm(s, ReinhardtDomain::lp_ball(2, 1.0), 0.5).value == Approx(0.5));
  CHECK(r2_norm(s, ReinhardtDomain::lp_ball(2, 2.0), 1.0) == Approx(2.0));
  CHECK(r1_norm(s, ReinhardtDomain::lp_ball(2, 2.0), 1.0).value == Approx(std::sqrt(2.0)).epsilon(1e-7));
  const TruncatedPowerSeries prod(2, 2, {{MultiIndex{1, 1}, 1.0}});
  CHECK(r2_norm(prod, ReinhardtDomain::lp_ball(2, 1.0), 1.0) == Approx(0.25));
  const auto m = mobius_series(0.5, 40);
  CHECK(r1_norm(m, ReinhardtDomain::polydisk(1), 0.3).value == Approx(r2_norm(m, ReinhardtDomain::polydisk(1), 0.3)));
}

TEST_CASE("r1 against dense grid brute force") {
  for (std::uint64_t i = 0; i < 12; ++i) {
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
      const int n = 2 + static_cast<int>(i % 2);
      const ReinhardtDomain d(n, p);
      const auto f = random_series(n, 4, 11, i);
      const double r = 0.35 + 0.05 * static_cast<double>(i % 5);
      const auto est = r1_norm(f, d, r);
      CHECK(est.value == Approx(brute_r1(f, d, r)).epsilon(1e-6));
      CHECK(est.value <= r2_norm(f, d, r) + 1e-12);
    }
  }
}

TEST_CASE("r1 equals r2 on the polydisk and in one variable") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto f = random_series(3, 5, 2, i);
    CHECK(r1_norm(f, ReinhardtDomain::polydisk(3), 0.6).value == Approx(r2_norm(f, ReinhardtDomain::polydisk(3), 0.6)).epsilon(1e-12));
    const auto g = random_series(1, 8, 2, i);
    CHECK(r1_norm(g, ReinhardtDomain::lp_ball(1, 2.0), 0.6).value == Approx(r2_norm(g, ReinhardtDomain::lp_ball(1, 2.0), 0.6)).epsilon(1e-12));
  }
}

TEST_CASE("semi-norm evaluation") {
  const auto u = ReinhardtDomain::polydisk(1);
  const auto s1 = SeminormFamily::majorant_sup(u);
  const auto c = TruncatedPowerSeries::constant(1, 3, Complex{0.0, -2.0});
  for (double r : {0.1, 0.5, 0.9}) CHECK(seminorm_eval(s1, c, r) == Approx(2.0));
  CHECK(seminorm_eval(s1, mobius_series(0.5, 40), 0.5) == Approx(1.0).epsilon(1e-8));
  const auto l1 = ReinhardtDomain::lp_ball(2, 1.0);
  const TruncatedPowerSeries prod(2, 2, {{MultiIndex{1, 1}, 1.0}});
  CHECK(centered_norm(SeminormFamily::termwise_sup(l1), prod, 1.0).value == Approx(0.25));
  CHECK(s1.mode_name() == "r1");
  CHECK(SeminormFamily::termwise_sup(l1).mode_name() == "r2");
}

TEST_CASE("bohr condition") {
  const auto s = SeminormFamily::majorant_sup(ReinhardtDomain::polydisk(1));
  const auto m = mobius_series(0.5, 40);
  const ConvexTarget disk = Disk{{}, 1.0};
  const auto v = bohr_condition(m, s, 0.3, disk);
  CHECK(v.value == Approx((1 - 0.25) * 0.3 / (1 - 0.15)));
  CHECK(v.value == Approx(0.2647).epsilon(1e-3));
  CHECK(v.threshold == Approx(0.5));
  CHECK(v.holds);
  const auto eq = bohr_condition(m, s, 0.5, disk);
  CHECK(std::abs(eq.margin) < 1e-9);
  CHECK_FALSE(eq.holds);
  CHECK(eq.boundary);
  const auto plane = bohr_condition(m, s, 0.99, parse_target("plane"));
  CHECK(plane.holds);
  CHECK(std::isinf(plane.threshold));

  // simultaneous rotation of f and G
  const auto strip = parse_target("strip:0.2,0,1,0,1");
  const auto f = shifted(scaled(mobius_series(0.4, 30), 0.5), 0.2);
  const double phi = 1.1;
  const auto a = bohr_condition(f, s, 0.4, strip);
  const auto b = bohr_condition(rotate(f, phi), s, 0.4, strip.transformed(std::polar(1.0, phi), 0.0));
  CHECK(a.holds == b.holds);
  CHECK(a.margin == Approx(b.margin).epsilon(1e-12));
}

TEST_CASE("assertion specializations of the threshold") {
  const auto s = SeminormFamily::majorant_sup(ReinhardtDomain::polydisk(1));
  const Complex c0{0.3, 5.0};
  const auto f = TruncatedPowerSeries::constant(1, 1, c0);
  CHECK(bohr_condition(f, s, 0.5, parse_target("strip:0,0,1,0,1")).threshold == Approx(1 - std::abs(c0.real())));
  CHECK(bohr_condition(f, s, 0.5, parse_target("halfplane:1,0,-1,0")).threshold == Approx(1 - c0.real()));
  CHECK(bohr_condition(f, s, 0.5, parse_target("halfplane:0,0,1,0")).threshold == Approx(c0.real()));
}

TEST_CASE("axiom checks") {
  const auto u = ReinhardtDomain::polydisk(1);
  const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const std::vector<TruncatedPowerSeries> consts{TruncatedPowerSeries::constant(1, 0, 2.0), TruncatedPowerSeries::constant(1, 0, 3.0)};
  const auto rep = check_axioms(SeminormFamily::majorant_sup(u), consts, grid);
  CHECK(rep.passed());
  CHECK(rep.submultiplicative.worst_margin == Approx(0.0));

  const std::vector<TruncatedPowerSeries> z{TruncatedPowerSeries::monomial(MultiIndex{1}, 1.0, 1),
                                            TruncatedPowerSeries::monomial(MultiIndex{1}, 1.0, 1)};
  const auto eq = check_axioms(SeminormFamily::majorant_sup(u), z, grid);
  CHECK(eq.passed());
  CHECK(std::abs(eq.submultiplicative.worst_margin) < 1e-15);

  for (double p : {1.0, 2.0}) {
    std::vector<TruncatedPowerSeries> fs;
    for (std::uint64_t i = 0; i < 21; ++i) fs.push_back(random_series(2, 6, 5, i));
    for (auto kind : {SeminormFamily::Kind::MajorantSup, SeminormFamily::Kind::TermwiseSup}) {
      const auto r = check_axioms(SeminormFamily(kind, ReinhardtDomain::lp_ball(2, p)), fs, grid);
      CHECK(r.passed());
      CHECK(r.monotone.checked == 21 * 8);
      CHECK(r.split.failed == 0);
      CHECK(r.submultiplicative.checked + r.submultiplicative.skipped == 21 * 9);
    }
  }
  CHECK_THROWS(check_axioms(SeminormFamily::majorant_sup(u), consts, std::vector<double>{1.0}));
}

TEST_CASE("coefficient bound") {
  const ConvexTarget disk = Disk{{}, 1.0};
  const auto m = landau_caratheodory_check(mobius_series(0.5, 30), disk);
  CHECK(m.passed);
  CHECK(m.specialization == CoefficientBoundReport::Specialization::Landau);
  CHECK(m.bound == Approx(1.0));
  CHECK(m.max_excess == Approx(-0.25));
  CHECK(landau_caratheodory_check(TruncatedPowerSeries::constant(1, 3, 0.2), disk).passed);

  const ConvexTarget right = HalfPlane{{}, {1.0, 0.0}};
  const auto h = disk_to_target_map(right, 1.0);
  const auto cayley = compose(h.taylor(0.0, 20), TruncatedPowerSeries::monomial(MultiIndex{1}, 1.0, 20), 20);
  const auto c = landau_caratheodory_check(cayley, right);
  CHECK(c.specialization == CoefficientBoundReport::Specialization::Caratheodory);
  CHECK(c.bound == Approx(2.0));
  CHECK(std::abs(c.max_excess) < 1e-9);
  CHECK(c.passed);

  const TruncatedPowerSeries bad(1, 1, {{MultiIndex{0}, 0.0}, {MultiIndex{1}, 3.0}});
  CHECK_FALSE(landau_caratheodory_check(bad, disk).passed);
}

TEST_CASE("slice tail bound") {
  CHECK(slice_tail_bound(1, 10, 0.5, 0.0) == 0.0);
  CHECK(std::isinf(slice_tail_bound(1, 10, 0.5, 1.0)));
  double ref = 0.0;
  for (int k = 11; k < 400; ++k) ref += (k + 1.0) * std::pow(0.3, k);
  CHECK(slice_tail_bound(2, 10, 0.5, 0.3) == Approx(ref).epsilon(1e-9));
  // the Mobius tail is dominated by the slice bound
  const auto m = mobius_series(0.9, 20);
  CHECK(m.tail_bound_at(0.3) <= slice_tail_bound(1, 20, 0.1, 0.3) + 1e-18);
}
