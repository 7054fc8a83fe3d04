#include "bohr/target.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace bohr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex unit_or_throw(Complex v, const char* what) {
  const double m = std::abs(v);
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument(std::string(what) + " must be a nonzero finite vector");
  return v / m;
}

// inward-signed distance from w to the line through p with unit normal nu
double signed_distance(Complex w, Complex p, Complex nu) { return ((w - p) * std::conj(nu)).real(); }

Complex edge_inward_normal(Complex a, Complex b) { return Complex{0.0, 1.0} * (b - a) / std::abs(b - a); }

double boundary_tolerance(Complex w) { return 1e-12 * (1.0 + std::abs(w)); }

struct Validate {
  void operator()(Disk& d) const {
    if (!(d.radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  }
  void operator()(HalfPlane& h) const { h.inward_normal = unit_or_throw(h.inward_normal, "half-plane normal"); }
  void operator()(Strip& s) const {
    s.direction = unit_or_throw(s.direction, "strip direction");
    if (!(s.half_width > 0.0)) throw std::invalid_argument("strip half-width must be positive");
  }
  void operator()(ConvexPolygon& p) const {
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least three vertices");
    for (std::size_t i = 0; i < n; ++i) {
      Complex e1 = v[(i + 1) % n] - v[i];
      Complex e2 = v[(i + 2) % n] - v[(i + 1) % n];
      double cross = e1.real() * e2.imag() - e1.imag() * e2.real();
      if (!(cross > 0.0)) throw std::invalid_argument("polygon must be strictly convex and counterclockwise");
    }
  }
  void operator()(WholePlane&) const {}
};

std::vector<double> parse_numbers(std::string_view s, char sep) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    auto token = s.substr(start, end - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("cannot parse number '" + std::string(token) + "'");
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConvexTarget::ConvexTarget(Shape shape) : shape_(std::move(shape)) { std::visit(Validate{}, shape_); }

bool ConvexTarget::contains(Complex w) const {
  if (is_whole_plane()) return true;
  try {
    return hull_distance(*this, w) > 0.0;
  } catch (const std::domain_error&) {
    return false;
  }
}

ConvexTarget ConvexTarget::transformed(Complex a, Complex b) const {
  const double s = std::abs(a);
  if (!(s > 0.0)) throw std::invalid_argument("similarity scale must be nonzero");
  const Complex rot = a / s;
  return std::visit(
      [&](const auto& g) -> ConvexTarget {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return Disk{a * g.center + b, s * g.radius};
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return HalfPlane{a * g.boundary_point + b, rot * g.inward_normal};
        } else if constexpr (std::is_same_v<T, Strip>) {
          return Strip{a * g.center + b, rot * g.direction, s * g.half_width};
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          ConvexPolygon p;
          for (auto v : g.vertices) p.vertices.push_back(a * v + b);
          return p;
        } else {
          return WholePlane{};
        }
      },
      shape_);
}

ConvexTarget parse_target(std::string_view spec) {
  if (spec == "plane") return WholePlane{};
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("unknown target spec '" + std::string(spec) + "'");
  auto kind = spec.substr(0, colon);
  auto body = spec.substr(colon + 1);
  if (kind == "polygon") {
    ConvexPolygon p;
    std::size_t start = 0;
    while (start <= body.size()) {
      auto end = body.find(';', start);
      if (end == std::string_view::npos) end = body.size();
      auto xy = parse_numbers(body.substr(start, end - start), ',');
      if (xy.size() != 2) throw std::invalid_argument("polygon vertex must be x,y");
      p.vertices.emplace_back(xy[0], xy[1]);
      start = end + 1;
    }
    return p;
  }
  auto v = parse_numbers(body, ',');
  if (kind == "disk" && v.size() == 3) return Disk{{v[0], v[1]}, v[2]};
  if (kind == "halfplane" && v.size() == 4) return HalfPlane{{v[0], v[1]}, {v[2], v[3]}};
  if (kind == "strip" && v.size() == 5) return Strip{{v[0], v[1]}, {v[2], v[3]}, v[4]};
  throw std::invalid_argument("malformed target spec '" + std::string(spec) + "'");
}

std::string to_string(const ConvexTarget& g) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return "disk:" + fmt(s.center.real()) + "," + fmt(s.center.imag()) + "," + fmt(s.radius);
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return "halfplane:" + fmt(s.boundary_point.real()) + "," + fmt(s.boundary_point.imag()) + "," +
                 fmt(s.inward_normal.real()) + "," + fmt(s.inward_normal.imag());
        } else if constexpr (std::is_same_v<T, Strip>) {
          return "strip:" + fmt(s.center.real()) + "," + fmt(s.center.imag()) + "," + fmt(s.direction.real()) +
                 "," + fmt(s.direction.imag()) + "," + fmt(s.half_width);
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          std::string out = "polygon:";
          for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            if (i) out += ";";
            out += fmt(s.vertices[i].real()) + "," + fmt(s.vertices[i].imag());
          }
          return out;
        } else {
          return "plane";
        }
      },
      g.shape());
}

double hull_distance(const ConvexTarget& g, Complex w) {
  double d = std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return s.radius - std::abs(w - s.center);
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return signed_distance(w, s.boundary_point, s.inward_normal);
        } else if constexpr (std::is_same_v<T, Strip>) {
          return s.half_width - std::abs(signed_distance(w, s.center, s.direction));
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          double best = kInf;
          const auto& v = s.vertices;
          for (std::size_t i = 0; i < v.size(); ++i) {
            const Complex a = v[i];
            const Complex b = v[(i + 1) % v.size()];
            best = std::min(best, signed_distance(w, a, edge_inward_normal(a, b)));
          }
          return best;
        } else {
          return kInf;
        }
      },
      g.shape());
  if (d < -boundary_tolerance(w)) throw std::domain_error("hull_distance: point outside the closed hull");
  return std::max(d, 0.0);
}

HalfPlane supporting_halfplane(const ConvexTarget& g, Complex w) {
  if (g.is_whole_plane()) throw std::invalid_argument("supporting_halfplane: the whole plane has no support line");
  if (!(hull_distance(g, w) > 0.0)) throw std::domain_error("supporting_halfplane: point is not interior");
  return std::visit(
      [&](const auto& s) -> HalfPlane {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          Complex u = w - s.center;
          Complex dir = std::abs(u) > 0.0 ? u / std::abs(u) : Complex{1.0, 0.0};
          Complex zeta = s.center + s.radius * dir;
          return HalfPlane{zeta, -dir};
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return s;
        } else if constexpr (std::is_same_v<T, Strip>) {
          double x = signed_distance(w, s.center, s.direction);
          Complex side = x >= 0.0 ? s.direction : -s.direction;
          return HalfPlane{s.center + s.half_width * side, -side};
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          const auto& v = s.vertices;
          std::size_t best_edge = 0;
          double best = kInf;
          for (std::size_t i = 0; i < v.size(); ++i) {
            double d = signed_distance(w, v[i], edge_inward_normal(v[i], v[(i + 1) % v.size()]));
            if (d < best) {
              best = d;
              best_edge = i;
            }
          }
          Complex nu = edge_inward_normal(v[best_edge], v[(best_edge + 1) % v.size()]);
          return HalfPlane{w - best * nu, nu};
        } else {
          throw std::invalid_argument("supporting_halfplane: unsupported target");
        }
      },
      g.shape());
}

RegularConvexityWitness regular_convexity_witness(const ConvexTarget& g, Complex direction) {
  const Complex dir = unit_or_throw(direction, "witness direction");
  constexpr double kAlign = 1e-9;
  return std::visit(
      [&](const auto& s) -> RegularConvexityWitness {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return {s.center + s.radius * dir, s};
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          if (std::abs(dir + s.inward_normal) > kAlign) throw NoWitness("half-plane: direction is not the outward normal");
          return {s.boundary_point, Disk{s.boundary_point + s.inward_normal, 1.0}};
        } else if constexpr (std::is_same_v<T, Strip>) {
          if (std::abs(dir - s.direction) <= kAlign) return {s.center + s.half_width * s.direction, Disk{s.center, s.half_width}};
          if (std::abs(dir + s.direction) <= kAlign) return {s.center - s.half_width * s.direction, Disk{s.center, s.half_width}};
          throw NoWitness("strip: direction is not normal to the boundary");
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          const auto& v = s.vertices;
          const std::size_t n = v.size();
          for (std::size_t i = 0; i < n; ++i) {
            Complex nu = edge_inward_normal(v[i], v[(i + 1) % n]);
            if (std::abs(dir + nu) > kAlign) continue;
            const Complex mid = 0.5 * (v[i] + v[(i + 1) % n]);
            // center mid + rho nu must keep distance >= rho from every edge line
            double rho = kInf;
            for (std::size_t j = 0; j < n; ++j) {
              if (j == i) continue;
              Complex nj = edge_inward_normal(v[j], v[(j + 1) % n]);
              double hj = signed_distance(mid, v[j], nj);
              double slope = 1.0 - (nu * std::conj(nj)).real();
              if (slope > 0.0) rho = std::min(rho, hj / slope);
            }
            return {mid, Disk{mid + rho * nu, rho}};
          }
          throw NoWitness("polygon: direction is not an edge normal (vertex direction)");
        } else {
          throw std::invalid_argument("regular_convexity_witness: the whole plane has no boundary");
        }
      },
      g.shape());
}

Complex TargetMap::operator()(Complex z) const {
  switch (kind_) {
    case Kind::Affine:
      return offset_ + factor_ * z;
    case Kind::Cayley:
      return offset_ + factor_ * (1.0 - z) / (1.0 + z);
    case Kind::Arctangent:
      return offset_ + factor_ * std::atan(z);
  }
  return {};
}

std::vector<Complex> TargetMap::taylor(Complex w0, int degree) const {
  if (degree < 0) throw std::invalid_argument("taylor: negative degree");
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  c[0] = (*this)(w0);
  if (degree == 0) return c;
  switch (kind_) {
    case Kind::Affine:
      c[1] = factor_;
      break;
    case Kind::Cayley: {
      // (1-w)/(1+w) = -1 + 2/(1+w)
      const Complex q = 1.0 / (1.0 + w0);
      Complex p = q;
      for (int m = 1; m <= degree; ++m) {
        p *= -q;
        c[static_cast<std::size_t>(m)] = factor_ * 2.0 * p;
      }
      break;
    }
    case Kind::Arctangent: {
      // atan' = 1/(1+w^2) = (1/2i) (1/(w-i) - 1/(w+i))
      const Complex i{0.0, 1.0};
      const Complex qa = 1.0 / (w0 - i);
      const Complex qb = 1.0 / (w0 + i);
      Complex pa = qa;
      Complex pb = qb;
      double sign = 1.0;
      for (int m = 0; m < degree; ++m) {
        Complex bm = sign * (pa - pb) / (2.0 * i);
        c[static_cast<std::size_t>(m) + 1] = factor_ * bm / static_cast<double>(m + 1);
        pa *= qa;
        pb *= qb;
        sign = -sign;
      }
      break;
    }
  }
  return c;
}

TargetMap disk_to_target_map(const ConvexTarget& g, double halfplane_scale) {
  if (!(halfplane_scale > 0.0)) throw std::invalid_argument("half-plane scale must be positive");
  TargetMap h;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          h.kind_ = TargetMap::Kind::Affine;
          h.offset_ = s.center;
          h.factor_ = s.radius;
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          h.kind_ = TargetMap::Kind::Cayley;
          h.offset_ = s.boundary_point;
          h.factor_ = halfplane_scale * s.inward_normal;
        } else if constexpr (std::is_same_v<T, Strip>) {
          h.kind_ = TargetMap::Kind::Arctangent;
          h.offset_ = s.center;
          h.factor_ = -(4.0 / std::numbers::pi) * s.half_width * s.direction;
        } else {
          throw std::invalid_argument("disk_to_target_map: no closed-form map for this target");
        }
      },
      g.shape());
  return h;
}

Complex disk_automorphism(Complex a, Complex w) { return (a - w) / (1.0 - std::conj(a) * w); }

std::vector<Complex> disk_automorphism_taylor(Complex a, Complex w0, int degree) {
  if (!(std::abs(a) < 1.0)) throw std::domain_error("disk automorphism needs |a| < 1");
  if (degree < 0) throw std::invalid_argument("taylor: negative degree");
  // (A - t) / q * sum (beta t)^m with A = a - w0, q = 1 - conj(a) w0, beta = conj(a)/q
  const Complex big_a = a - w0;
  const Complex q = 1.0 - std::conj(a) * w0;
  const Complex beta = std::conj(a) / q;
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  c[0] = big_a / q;
  Complex bpow{1.0, 0.0};  // beta^(k-1)
  for (int k = 1; k <= degree; ++k) {
    c[static_cast<std::size_t>(k)] = (big_a * bpow * beta - bpow) / q;
    bpow *= beta;
  }
  return c;
}

}  // namespace bohr
