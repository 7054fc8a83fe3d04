#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bohr/multi_index.hpp"

namespace bohr {

/// Unit l^p ball {|z_1|^p + ... + |z_n|^p < 1} in C^n; p = +inf is the
/// polydisk. Radii enter through the operations below (homothety r D).
class ReinhardtDomain {
 public:
  static constexpr double kPolydisk = std::numeric_limits<double>::infinity();

  ReinhardtDomain(int dimension, double p);

  static ReinhardtDomain polydisk(int dimension) { return {dimension, kPolydisk}; }
  static ReinhardtDomain lp_ball(int dimension, double p) { return {dimension, p}; }

  int dimension() const { return dimension_; }
  double p() const { return p_; }
  bool is_polydisk() const { return p_ == kPolydisk; }

  /// l^p "norm" of (|z_1|, ..., |z_n|); a quasi-norm when p < 1.
  double gauge(std::span<const Complex> z) const;
  double gauge(std::span<const double> moduli) const;

  /// Supremum of sum w_i z_i over the unit domain for equal unit weights,
  /// i.e. the factor c making c (z_1 + ... + z_n) map D into the unit disk.
  double linear_form_scale() const;

  bool operator==(const ReinhardtDomain&) const = default;

 private:
  int dimension_;
  double p_;
};

/// Parses `lp:<p>:<n>`, `inf` allowed for p.
ReinhardtDomain parse_domain(std::string_view spec);
std::string to_string(const ReinhardtDomain& d);

/// z in r D, strict.
bool contains(const ReinhardtDomain& d, std::span<const Complex> z, double r);

/// sup over the closure of r D of |z^alpha|:
/// r^|a| prod (a_i/|a|)^(a_i/p) for finite p (0^0 = 1), r^|a| on the polydisk.
double monomial_sup(const ReinhardtDomain& d, const MultiIndex& alpha, double r);

/// Points with nonnegative real coordinates on the positive part of the
/// sphere of radius r. Finite p uses the simplex u_i = (t_i/r)^p with mesh
/// 1/m; the polydisk uses an (m+1)-grid on every face t_i = r. Vertices and
/// the symmetric center point are always present.
std::vector<std::vector<double>> boundary_sample(const ReinhardtDomain& d, double r, int m);

}  // namespace bohr
