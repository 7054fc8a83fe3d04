#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "bohr/multi_index.hpp"

namespace bohr {

struct Disk {
  Complex center;
  double radius = 1.0;
};

/// {w : Re((w - boundary_point) conj(inward_normal)) > 0}
struct HalfPlane {
  Complex boundary_point;
  Complex inward_normal{1.0, 0.0};
};

/// {w : |Re((w - center) conj(direction))| < half_width}; direction is the
/// unit normal of the two boundary lines.
struct Strip {
  Complex center;
  Complex direction{1.0, 0.0};
  double half_width = 1.0;
};

/// Strictly convex, counterclockwise.
struct ConvexPolygon {
  std::vector<Complex> vertices;
};

struct WholePlane {};

/// Convex hull of a planar target domain G. Nonconvex targets are modelled by
/// their hull plus a RegularConvexityWitness.
class ConvexTarget {
 public:
  using Shape = std::variant<Disk, HalfPlane, Strip, ConvexPolygon, WholePlane>;

  ConvexTarget(Shape shape);  // NOLINT(google-explicit-constructor)
  template <class S>
    requires(!std::is_same_v<std::decay_t<S>, Shape> && !std::is_same_v<std::decay_t<S>, ConvexTarget> &&
             std::is_constructible_v<Shape, S>)
  ConvexTarget(S&& shape) : ConvexTarget(Shape(std::forward<S>(shape))) {}  // NOLINT(google-explicit-constructor)

  const Shape& shape() const { return shape_; }
  bool is_whole_plane() const { return std::holds_alternative<WholePlane>(shape_); }

  /// Strict membership in the open hull.
  bool contains(Complex w) const;

  /// The image under the similarity w -> a w + b (a != 0).
  ConvexTarget transformed(Complex a, Complex b) const;

 private:
  Shape shape_;
};

ConvexTarget parse_target(std::string_view spec);
std::string to_string(const ConvexTarget& g);

/// Euclidean distance from w to the hull boundary, +inf for the whole plane.
/// Throws std::domain_error when w lies outside the closed hull.
double hull_distance(const ConvexTarget& g, Complex w);

/// Half-plane containing the hull whose boundary passes through a nearest
/// boundary point to w. Polygon ties go to the lowest edge index.
HalfPlane supporting_halfplane(const ConvexTarget& g, Complex w);

/// Signals that no inscribed tangent disk exists in the requested direction.
class NoWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegularConvexityWitness {
  Complex point;
  Disk disk;
};

/// A disk inside G tangent to the hull boundary at a point whose outward
/// normal is `direction`.
RegularConvexityWitness regular_convexity_witness(const ConvexTarget& g, Complex direction);

/// Closed-form holomorphic map of the unit disk onto a target.
class TargetMap {
 public:
  enum class Kind { Affine, Cayley, Arctangent };

  Complex operator()(Complex z) const;

  /// Taylor coefficients about w0 (|w0| < 1) up to the given degree.
  std::vector<Complex> taylor(Complex w0, int degree) const;

  Kind kind() const { return kind_; }

 private:
  friend TargetMap disk_to_target_map(const ConvexTarget& g, double halfplane_scale);
  Kind kind_ = Kind::Affine;
  Complex offset_;
  Complex factor_{1.0, 0.0};
};

/// Disk: c + R z. HalfPlane: b + nu s (1-z)/(1+z), so h(0) sits at distance s
/// from the boundary. Strip: c + d w (2/pi) i log((1+iz)/(1-iz)) = c - d w (4/pi) atan z.
TargetMap disk_to_target_map(const ConvexTarget& g, double halfplane_scale = 2.0);

/// Disk automorphism (a - w) / (1 - conj(a) w), |a| < 1.
Complex disk_automorphism(Complex a, Complex w);
/// Its Taylor coefficients about w0.
std::vector<Complex> disk_automorphism_taylor(Complex a, Complex w0, int degree);

}  // namespace bohr
