#include <doctest.h>

#include <cmath>
#include <random>

#include "bohr/series.hpp"
#include "bohr/target.hpp"
#include "oracles.hpp"

using namespace bohr;
using doctest::Approx;

TEST_CASE("target specs round trip") {
  for (const char* spec : {"disk:0,0,1", "halfplane:1,0,-1,0", "strip:0,0,1,0,1", "polygon:0,0;1,0;1,1;0,1", "plane"}) {
    CHECK(to_string(parse_target(spec)) == spec);
  }
  CHECK_THROWS(parse_target("disk:0,0,-1"));
  CHECK_THROWS(parse_target("polygon:0,0;0,1;1,1;1,0"));  // clockwise
  CHECK_THROWS(parse_target("polygon:0,0;1,0;2,0;1,1"));  // collinear
  CHECK_THROWS(parse_target("ellipse:0,0,1,2"));
}

TEST_CASE("hull distance examples") {
  CHECK(hull_distance(parse_target("disk:0,0,1"), 0.3) == Approx(0.7));
  CHECK(hull_distance(parse_target("halfplane:1,0,-1,0"), 0.2) == Approx(0.8));
  CHECK(hull_distance(parse_target("strip:0,0,1,0,1"), Complex{0.3, 5.0}) == Approx(0.7));
  CHECK(std::isinf(hull_distance(parse_target("plane"), Complex{1e9, 3.0})));
  CHECK_THROWS_AS(hull_distance(parse_target("disk:0,0,1"), 1.5), std::domain_error);
}

TEST_CASE("polygon distance against edge brute force") {
  const std::vector<Complex> hexagon{{2, 0}, {1, 1.7}, {-1, 1.7}, {-2, 0}, {-1, -1.7}, {1, -1.7}};
  std::string spec = "polygon:";
  for (std::size_t i = 0; i < hexagon.size(); ++i) {
    spec += (i ? ";" : "") + std::to_string(hexagon[i].real()) + "," + std::to_string(hexagon[i].imag());
  }
  const auto g = parse_target(spec);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int checked = 0;
  while (checked < 200) {
    const Complex w{u(rng), u(rng)};
    if (!g.contains(w)) continue;
    CHECK(hull_distance(g, w) == Approx(oracle::polygon_boundary_distance(hexagon, w)).epsilon(1e-12));
    ++checked;
  }
}

TEST_CASE("supporting half-planes") {
  const auto disk = supporting_halfplane(parse_target("disk:0,0,1"), 0.5);
  CHECK(std::abs(disk.boundary_point - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(disk.inward_normal - Complex{-1.0, 0.0}) < 1e-15);
  const auto strip = supporting_halfplane(parse_target("strip:0,0,1,0,1"), -0.2);
  CHECK(strip.boundary_point.real() == Approx(-1.0));
  CHECK(std::abs(strip.inward_normal - Complex{1.0, 0.0}) < 1e-15);
  const auto square = parse_target("polygon:0,0;1,0;1,1;0,1");
  const Complex w{0.5, 0.1};
  const auto h = supporting_halfplane(square, w);
  CHECK(std::abs(h.inward_normal - Complex{0.0, 1.0}) < 1e-15);
  CHECK(h.boundary_point.imag() == Approx(0.0));
  CHECK(hull_distance(square, w) == Approx(0.1));
  // the half-plane contains the hull
  for (Complex v : {Complex{0, 0}, Complex{1, 0}, Complex{1, 1}, Complex{0, 1}}) {
    CHECK(std::real((v - h.boundary_point) * std::conj(h.inward_normal)) >= -1e-15);
  }
}

TEST_CASE("regular convexity witnesses") {
  const auto d = regular_convexity_witness(parse_target("disk:0,0,1"), 1.0);
  CHECK(std::abs(d.point - Complex{1.0, 0.0}) < 1e-15);
  CHECK(d.disk.radius == Approx(1.0));
  const auto h = regular_convexity_witness(parse_target("halfplane:1,0,-1,0"), 1.0);
  CHECK(std::abs(h.point - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(h.disk.center) < 1e-15);
  CHECK(h.disk.radius == Approx(1.0));
  const auto s = regular_convexity_witness(parse_target("strip:0,0,1,0,1"), 1.0);
  CHECK(std::abs(s.point - Complex{1.0, 0.0}) < 1e-15);
  CHECK(s.disk.radius == Approx(1.0));
  CHECK_THROWS_AS(regular_convexity_witness(parse_target("halfplane:1,0,-1,0"), Complex{0.0, 1.0}), NoWitness);

  const auto square = parse_target("polygon:0,0;1,0;1,1;0,1");
  const auto p = regular_convexity_witness(square, Complex{0.0, -1.0});
  CHECK(p.point.imag() == Approx(0.0));
  CHECK(hull_distance(square, p.disk.center) >= p.disk.radius - 1e-12);
  CHECK(std::abs(std::abs(p.point - p.disk.center) - p.disk.radius) < 1e-12);
}

TEST_CASE("similarity transforms") {
  const auto g = parse_target("strip:0,0,1,0,1");
  const Complex a = std::polar(2.0, 0.4);
  const Complex b{3.0, -1.0};
  const auto moved = g.transformed(a, b);
  for (Complex w : {Complex{0.2, 1.0}, Complex{-0.7, -3.0}}) {
    CHECK(hull_distance(moved, a * w + b) == Approx(2.0 * hull_distance(g, w)));
  }
}

TEST_CASE("gallery maps") {
  const auto hp = disk_to_target_map(parse_target("halfplane:1,0,-1,0"));
  CHECK(std::abs(hp(0.0) - Complex{-1.0, 0.0}) < 1e-15);
  CHECK(hp(0.5).real() == Approx(1.0 / 3.0));
  const auto st = disk_to_target_map(parse_target("strip:0,0,1,0,1"));
  CHECK(std::abs(st(0.0)) < 1e-15);
  CHECK(std::abs(st(0.999).real() + 1.0) < 0.02);
  CHECK(std::abs(st(-0.999).real() - 1.0) < 0.02);
  const auto disk = disk_to_target_map(parse_target("disk:3,2,7"));
  CHECK(std::abs(disk(Complex{0.0, 1.0}) - Complex{3.0, 9.0}) < 1e-12);
  CHECK_THROWS(disk_to_target_map(parse_target("plane")));

  // images stay inside the target
  const auto strip = parse_target("strip:1,1,0.6,0.8,0.5");
  const auto sm = disk_to_target_map(strip);
  for (int k = 0; k < 64; ++k) CHECK(strip.contains(sm(std::polar(0.99, 2 * std::numbers::pi * k / 64))));

  // closed-form Taylor coefficients against the DFT oracle
  for (const char* spec : {"disk:3,2,7", "halfplane:1,0,-1,0", "strip:1,1,0.6,0.8,0.5"}) {
    const auto h = disk_to_target_map(parse_target(spec));
    const Complex w0{0.3, -0.2};
    const auto taylor = h.taylor(w0, 10);
    const auto ref = oracle::naive_dft_coefficients([&](Complex u) { return h(w0 + u); }, 10, 0.4, 64);
    for (int k = 0; k <= 10; ++k) CHECK(std::abs(taylor[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(k)]) < 1e-9);
    const auto ex = extract_coefficients([&](std::span<const Complex> z) { return h(w0 + z[0]); }, 1, 10, 0.4, 64);
    for (int k = 0; k <= 10; ++k) CHECK(std::abs(taylor[static_cast<std::size_t>(k)] - ex.coefficient(MultiIndex{k})) < 1e-9);
  }
}

TEST_CASE("disk automorphism") {
  const Complex a{0.3, 0.4};
  CHECK(std::abs(disk_automorphism(a, 0.0) - a) < 1e-15);
  CHECK(std::abs(disk_automorphism(a, a)) < 1e-15);
  CHECK(std::abs(disk_automorphism(a, std::polar(1.0, 0.7))) == Approx(1.0));
  const Complex w0{-0.1, 0.2};
  const auto taylor = disk_automorphism_taylor(a, w0, 12);
  const auto ref = oracle::naive_dft_coefficients([&](Complex u) { return disk_automorphism(a, w0 + u); }, 12, 0.3, 64);
  for (int k = 0; k <= 12; ++k) CHECK(std::abs(taylor[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(k)]) < 1e-9);
}
