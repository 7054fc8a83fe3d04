#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bohr/domain.hpp"
#include "bohr/series.hpp"
#include "bohr/target.hpp"

namespace bohr {

/// sum_{|a| >= 1} |c_a| |z^a| over stored terms, graded order.
double majorant_value(const TruncatedPowerSeries& f, std::span<const Complex> z);
/// Same, from the moduli (|z_1|, ..., |z_n|).
double majorant_value(const TruncatedPowerSeries& f, std::span<const double> moduli);

struct NormEstimate {
  double value = 0.0;
  /// Local variation of the maximized majorant at the final refinement step;
  /// zero when the supremum is computed in closed form.
  double residual = 0.0;
};

/// sup over the closed homothety r D of the majorant (constant term excluded).
/// Exact in one variable and on the polydisk (the majorant increases in every
/// |z_i|, so the supremum sits at the corner); otherwise boundary grid plus
/// pairwise coordinate ascent stopping below step 1e-7.
NormEstimate r1_norm(const TruncatedPowerSeries& f, const ReinhardtDomain& d, double r);

/// sum_{|a| >= 1} |c_a| monomial_sup(D, a, r).
double r2_norm(const TruncatedPowerSeries& f, const ReinhardtDomain& d, double r);

/// One-parameter semi-norm family r -> ||.||_r with base point at the origin.
class SeminormFamily {
 public:
  enum class Kind { MajorantSup, TermwiseSup };

  SeminormFamily(Kind kind, ReinhardtDomain domain) : kind_(kind), domain_(domain) {}
  static SeminormFamily majorant_sup(ReinhardtDomain d) { return {Kind::MajorantSup, d}; }
  static SeminormFamily termwise_sup(ReinhardtDomain d) { return {Kind::TermwiseSup, d}; }

  Kind kind() const { return kind_; }
  const ReinhardtDomain& domain() const { return domain_; }
  std::vector<Complex> base_point() const { return std::vector<Complex>(static_cast<std::size_t>(domain_.dimension())); }

  /// "r1" or "r2"
  std::string mode_name() const { return kind_ == Kind::MajorantSup ? "r1" : "r2"; }

 private:
  Kind kind_;
  ReinhardtDomain domain_;
};

/// ||f - f(z0)||_r for r in [0, 1] (the closed endpoint is allowed here).
NormEstimate centered_norm(const SeminormFamily& s, const TruncatedPowerSeries& f, double r);

/// ||f||_r = |f(z0)| + ||f - f(z0)||_r, r in (0, 1).
double seminorm_eval(const SeminormFamily& s, const TruncatedPowerSeries& f, double r);

struct BohrVerdict {
  double value = 0.0;      ///< ||f - f(z0)||_r
  double threshold = 0.0;  ///< dist(f(z0), boundary of the hull); +inf for the plane
  double tail = 0.0;       ///< truncation error bar on value
  double margin = 0.0;     ///< threshold - value
  bool holds = false;      ///< margin beyond tolerance and tail
  bool boundary = false;   ///< |margin| within tolerance and tail
};

struct ConditionOptions {
  /// Relative comparison tolerance: |margin| <= tol * threshold is boundary.
  double tolerance = 1e-9;
  /// Truncation error bar at radius r; replaces the series' own tail bound.
  std::function<double(double)> tail_at;
};

/// ||f - f(z0)||_r < dist(f(z0), boundary of the hull of G).
BohrVerdict bohr_condition(const TruncatedPowerSeries& f, const SeminormFamily& s, double r,
                           const ConvexTarget& g, const ConditionOptions& options = {});

struct AxiomOutcome {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(double margin, double tolerance);
};

struct AxiomReport {
  AxiomOutcome monotone;           ///< a) ||f||_r1 <= ||f||_r2 for r1 <= r2
  AxiomOutcome submultiplicative;  ///< b) ||fg||_r <= ||f||_r ||g||_r
  AxiomOutcome limit;              ///< c) ||f||_r - |f(z0)| <= (r/R) (||f||_R - |f(z0)|)
  AxiomOutcome split;              ///< d) ||f||_r = |f(z0)| + ||f - f(z0)||_r
  double deviation_at_smallest_r = 0.0;  ///< max over f of ||f||_r - |f(z0)| at r = 1e-4

  bool passed() const;
};

/// Checks the four semi-norm axioms for every function and every adjacent
/// pair (f_i, f_{i+1}) in the list, over the radius grid.
AxiomReport check_axioms(const SeminormFamily& s, std::span<const TruncatedPowerSeries> functions,
                         std::span<const double> r_grid, double tolerance = 1e-9);

struct CoefficientBoundReport {
  enum class Specialization { None, Landau, Caratheodory };

  double bound = 0.0;       ///< 2 dist(c0, boundary of the hull)
  double max_excess = 0.0;  ///< max_k |c_k| - bound
  int worst_degree = 0;
  bool passed = false;
  Specialization specialization = Specialization::None;
};

/// |c_k| <= 2 dist(c0, boundary of the hull) for k >= 1, univariate f.
CoefficientBoundReport landau_caratheodory_check(const TruncatedPowerSeries& f, const ConvexTarget& g,
                                                 double tolerance = 1e-9);

/// 2 delta sum_{k > degree} C(k+n-1, n-1) x^k. For f(D) inside a convex
/// target with hull distance delta at f(0), every slice obeys the
/// coefficient bound above, so this dominates both majorant tails on r D with
/// x = r.
double slice_tail_bound(int dimension, int degree, double delta, double x);

}  // namespace bohr
