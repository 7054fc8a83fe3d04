#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bohr/domain.hpp"
#include "bohr/functionals.hpp"
#include "bohr/generator.hpp"
#include "bohr/series.hpp"
#include "bohr/target.hpp"

namespace bohr {

enum class EstimateKind { PerFunction, FamilyInfimum, ProbeUpperBound, NoViolationAt };

std::string to_string(EstimateKind kind);

struct RadiusEstimate {
  double lower = 0.0;
  double upper = 1.0;
  double tolerance = 0.0;
  EstimateKind kind = EstimateKind::PerFunction;
  double probe_radius = 0.0;  ///< r for NoViolationAt
  std::string witness;
  double witness_parameter = std::numeric_limits<double>::quiet_NaN();
  bool on_boundary = false;  ///< c0 within 1e-9 of the hull boundary
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  std::size_t uncertain = 0;  ///< probes whose margin is inside the error bar
  std::size_t count = 1;
  double tail = 0.0;  ///< largest error bar used
};

using TailFunction = std::function<double(double)>;

/// Largest r with the Bohr condition, bracketed by bisection to width tol.
/// Capped at 1; 0 with on_boundary when c0 sits on the hull boundary.
RadiusEstimate function_radius(const TruncatedPowerSeries& f, const SeminormFamily& s, const ConvexTarget& g,
                               double tol, const TailFunction& tail_at = {}, double condition_tolerance = 1e-9);

struct FamilyMember {
  double parameter = 0.0;
  TruncatedPowerSeries series{1, 0};
  std::string label;
  /// f(D) inside the target is known, so the slice tail bound applies.
  bool admissible = false;
};

/// Slice tail bound of an admissible member at radius r, or the series' own
/// tail bound when that is smaller.
TailFunction admissible_tail(const TruncatedPowerSeries& f, const ConvexTarget& g);

/// Minimum of per-member radii; an upper bound on the Bohr radius. Ties go to
/// the first member.
RadiusEstimate family_infimum(const std::vector<FamilyMember>& family, const SeminormFamily& s,
                              const ConvexTarget& g, double tol);

/// alpha_k with 1 - alpha log-spaced from 0.99 down to 1e-3 (count >= 2).
std::vector<double> geometric_alpha_grid(int count);
/// Parses `geometric:N` or a comma-separated list of values.
std::vector<double> parse_alpha_grid(const std::string& spec);

/// (alpha - z)/(1 - alpha z) in z_1, embedded in the given dimension.
std::vector<FamilyMember> mobius_family(const std::vector<double>& alphas, int degree, int dimension = 1,
                                        double phi = 0.0);

/// h o phi_alpha for a closed-form map h of the unit disk into the target, so
/// that f(0) moves toward the boundary point h(direction). Dimension n > 1
/// composes with c (z_1 + ... + z_n), c = linear_form_scale(domain).
std::vector<FamilyMember> drift_family(const ConvexTarget& g, const std::vector<double>& alphas, int degree,
                                       const ReinhardtDomain& domain);

/// Checks the condition at r for `count` generated functions plus the
/// injected ones. A violation is a margin below -(tolerance + error bar).
RadiusEstimate probe_no_violation(const AdmissibleGenerator& gen, const SeminormFamily& s, double r,
                                  std::size_t count, const std::vector<FamilyMember>& injected = {},
                                  double condition_tolerance = 1e-9);

/// family_infimum over Mobius(alpha)(z_1 + ... + z_n) with TermwiseSup on the
/// l^1 ball and the unit disk target.
RadiusEstimate witness_upper_bound_l1(int n, const std::vector<double>& alphas, double tol, int degree = 60);

struct BracketOptions {
  std::size_t probe_count = 500;
  std::uint64_t seed = 1;
  int probe_degree = 12;
  int inner_degree = 3;
  double contraction = 0.95;
  int family_degree = 60;
  std::vector<double> alphas = geometric_alpha_grid(200);
  double tol = 1e-6;
  double upper_slack = 2e-3;
};

struct BracketReport {
  int n = 0;
  std::string domain;
  std::string mode;
  double published_lower = 0.0;
  double published_upper = std::numeric_limits<double>::infinity();
  bool upper_vacuous = false;  ///< published upper side >= 1
  RadiusEstimate probe;
  RadiusEstimate witness;
  bool witness_consistent = false;           ///< witness upper >= published lower
  std::optional<bool> upper_side_certified;  ///< witness <= published upper + slack, when asserted
  std::string note;

  bool passed() const;
};

/// Probes the published lower radius and checks the witness families against
/// both sides. Supported: r1 on the polydisk and the l^1 ball, r2 on any l^p.
BracketReport bracket_consistency(int n, const ReinhardtDomain& domain, SeminormFamily::Kind mode,
                                  const BracketOptions& options = {});

struct IndependenceEntry {
  std::string target;
  RadiusEstimate estimate;
  bool asserted = false;
  std::string note;
};

struct IndependenceReport {
  std::vector<IndependenceEntry> entries;
  double spread = 0.0;  ///< max pairwise |difference| over asserted entries
  double agreement = 5e-3;

  bool passed() const { return spread <= agreement; }
};

struct IndependenceOptions {
  double tol = 1e-6;
  double agreement = 5e-3;
  std::vector<double> alphas = geometric_alpha_grid(200);
  int degree = 60;
};

/// Drift-family infimum per target. Disks, half-planes and strips are
/// asserted to agree; polygons use an inscribed tangent disk and the plane
/// short-circuits to 1, both reported only.
IndependenceReport independence_experiment(const SeminormFamily& s, const std::vector<ConvexTarget>& targets,
                                           const IndependenceOptions& options = {});

}  // namespace bohr
