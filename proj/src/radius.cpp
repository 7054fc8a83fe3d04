#include "bohr/radius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bohr/parallel.hpp"

namespace bohr {

namespace {

constexpr double kBoundaryEps = 1e-9;

std::string format_parameter(const char* name, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.17g", name, value);
  return buf;
}

// The termwise sup on r D is sum_k a_k r^k with a_k = sum_{|b|=k} |c_b| sup_D |z^b|,
// so bisection can run on the one-variable profile.
TruncatedPowerSeries termwise_profile(const TruncatedPowerSeries& f, const ReinhardtDomain& d) {
  std::vector<double> a(static_cast<std::size_t>(f.max_degree()) + 1, 0.0);
  Complex c0{};
  for (const auto& t : f.terms()) {
    if (t.index.degree() == 0) {
      c0 = t.coefficient;
    } else {
      a[static_cast<std::size_t>(t.index.degree())] += std::abs(t.coefficient) * monomial_sup(d, t.index, 1.0);
    }
  }
  std::vector<Term> terms{{MultiIndex::zero(1), c0}};
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (a[k] != 0.0) terms.push_back({MultiIndex(std::vector<int>{static_cast<int>(k)}), Complex{a[k], 0.0}});
  }
  return TruncatedPowerSeries(1, f.max_degree(), std::move(terms));
}

RadiusEstimate whole_plane_estimate() {
  RadiusEstimate e;
  e.lower = e.upper = 1.0;
  e.witness = "plane";
  return e;
}

}  // namespace

std::string to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::PerFunction: return "per_function";
    case EstimateKind::FamilyInfimum: return "family_infimum";
    case EstimateKind::ProbeUpperBound: return "probe_upper_bound";
    case EstimateKind::NoViolationAt: return "no_violation_at";
  }
  return "unknown";
}

RadiusEstimate function_radius(const TruncatedPowerSeries& f, const SeminormFamily& s, const ConvexTarget& g,
                               double tol, const TailFunction& tail_at, double condition_tolerance) {
  if (!(tol > 0.0)) throw std::invalid_argument("function_radius: tolerance must be positive");
  if (g.is_whole_plane()) return whole_plane_estimate();

  RadiusEstimate e;
  e.tolerance = tol;
  const Complex c0 = eval(f, s.base_point());
  const double delta = hull_distance(g, c0);
  if (delta <= kBoundaryEps) {
    e.lower = e.upper = 0.0;
    e.on_boundary = true;
    e.worst_margin = delta;
    return e;
  }

  ConditionOptions options;
  options.tolerance = condition_tolerance;
  options.tail_at = tail_at;
  if (!options.tail_at) options.tail_at = [&f](double r) { return f.tail_bound_at(r); };
  const bool reduce = s.kind() == SeminormFamily::Kind::TermwiseSup && f.dimension() > 1;
  const TruncatedPowerSeries work = reduce ? termwise_profile(f, s.domain()) : f;
  const SeminormFamily ws = reduce ? SeminormFamily::termwise_sup(ReinhardtDomain::polydisk(1)) : s;
  const auto at = [&](double r) { return bohr_condition(work, ws, r, g, options); };

  const BohrVerdict top = at(1.0);
  if (top.holds) {
    e.lower = e.upper = 1.0;
    e.worst_margin = top.margin;
    e.tail = top.tail;
    return e;
  }
  double lo = 0.0;
  double hi = 1.0;
  BohrVerdict at_lo{};
  at_lo.margin = delta;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const BohrVerdict v = at(mid);
    if (v.holds) {
      lo = mid;
      at_lo = v;
    } else {
      hi = mid;
    }
  }
  e.lower = lo;
  e.upper = hi;
  e.worst_margin = at_lo.margin;
  e.tail = at_lo.tail;
  return e;
}

TailFunction admissible_tail(const TruncatedPowerSeries& f, const ConvexTarget& g) {
  if (g.is_whole_plane()) return [](double) { return 0.0; };
  const double delta = hull_distance(g, f.constant_term());
  const int n = f.dimension();
  const int d = f.max_degree();
  if (!f.tail()) return [n, d, delta](double r) { return slice_tail_bound(n, d, delta, r); };
  return [n, d, delta, f](double r) { return std::min(slice_tail_bound(n, d, delta, r), f.tail_bound_at(r)); };
}

RadiusEstimate family_infimum(const std::vector<FamilyMember>& family, const SeminormFamily& s,
                              const ConvexTarget& g, double tol) {
  if (family.empty()) throw std::invalid_argument("family_infimum: empty family");
  std::vector<RadiusEstimate> radii(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const auto& m = family[i];
    radii[i] = function_radius(m.series, s, g, tol, m.admissible ? admissible_tail(m.series, g) : TailFunction{});
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (radii[i].upper < radii[best].upper) best = i;
  }
  RadiusEstimate e = radii[best];
  e.kind = EstimateKind::FamilyInfimum;
  e.count = family.size();
  e.witness = family[best].label;
  e.witness_parameter = family[best].parameter;
  for (const auto& r : radii) {
    e.lower = std::min(e.lower, r.lower);
    e.tail = std::max(e.tail, r.tail);
  }
  return e;
}

std::vector<double> geometric_alpha_grid(int count) {
  if (count < 2) throw std::invalid_argument("geometric grid needs at least 2 points");
  std::vector<double> alphas(static_cast<std::size_t>(count));
  const double a = std::log(0.99);
  const double b = std::log(1e-3);
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / (count - 1);
    alphas[static_cast<std::size_t>(k)] = 1.0 - std::exp(a + t * (b - a));
  }
  return alphas;
}

std::vector<double> parse_alpha_grid(const std::string& spec) {
  if (spec.rfind("geometric:", 0) == 0) {
    std::size_t used = 0;
    const std::string rest = spec.substr(10);
    const int count = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("bad alpha grid: " + spec);
    return geometric_alpha_grid(count);
  }
  std::vector<double> values;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size() || !(v > 0.0 && v < 1.0)) throw std::invalid_argument("bad alpha value: " + item);
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty alpha grid");
  return values;
}

std::vector<FamilyMember> mobius_family(const std::vector<double>& alphas, int degree, int dimension, double phi) {
  std::vector<FamilyMember> out;
  out.reserve(alphas.size());
  std::vector<Complex> weights(static_cast<std::size_t>(dimension));
  weights[0] = 1.0;
  for (double a : alphas) {
    auto f = rotate(mobius_series(a, degree), phi);
    if (dimension > 1) f = compose_linear(f, weights);
    out.push_back({a, std::move(f), format_parameter("mobius alpha", a), true});
  }
  return out;
}

std::vector<FamilyMember> drift_family(const ConvexTarget& g, const std::vector<double>& alphas, int degree,
                                       const ReinhardtDomain& domain) {
  if (g.is_whole_plane()) throw std::invalid_argument("drift_family: the plane has no boundary point");
  ConvexTarget source = g;
  Complex direction{1.0, 0.0};
  if (const auto* poly = std::get_if<ConvexPolygon>(&g.shape())) {
    const Complex edge = poly->vertices[1] - poly->vertices[0];
    const Complex outward = Complex{edge.imag(), -edge.real()} / std::abs(edge);
    const auto w = regular_convexity_witness(g, outward);
    source = w.disk;
    direction = (w.point - w.disk.center) / std::abs(w.point - w.disk.center);
  }
  const TargetMap h = disk_to_target_map(source);
  const int n = domain.dimension();
  std::vector<Complex> weights(static_cast<std::size_t>(n), Complex{domain.linear_form_scale(), 0.0});
  std::vector<FamilyMember> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    const auto inner = rotate(mobius_series(a, degree), std::arg(direction));
    auto f = compose(h.taylor(a * direction, degree), inner, degree);
    if (n > 1) f = compose_linear(f, weights);
    out.push_back({a, std::move(f), format_parameter("drift alpha", a), true});
  }
  return out;
}

RadiusEstimate probe_no_violation(const AdmissibleGenerator& gen, const SeminormFamily& s, double r,
                                  std::size_t count, const std::vector<FamilyMember>& injected,
                                  double condition_tolerance) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("probe_no_violation: r must lie in (0,1)");
  const ConvexTarget& g = gen.target();
  const std::size_t total = count + injected.size();
  std::vector<BohrVerdict> verdicts(total);
  std::vector<std::string> labels(total);
  parallel_for(total, [&](std::size_t i) {
    ConditionOptions options;
    options.tolerance = condition_tolerance;
    if (i < count) {
      const auto sample = gen.generate(i);
      options.tail_at = admissible_tail(sample.series, g);
      verdicts[i] = bohr_condition(sample.series, s, r, g, options);
      labels[i] = sample.description;
    } else {
      const auto& m = injected[i - count];
      if (m.admissible) options.tail_at = admissible_tail(m.series, g);
      verdicts[i] = bohr_condition(m.series, s, r, g, options);
      labels[i] = m.label;
    }
  });

  RadiusEstimate e;
  e.kind = EstimateKind::NoViolationAt;
  e.probe_radius = r;
  e.count = total;
  e.tolerance = condition_tolerance;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const auto& v = verdicts[i];
    const double slack = condition_tolerance * v.threshold + v.tail;
    if (v.margin < -slack) {
      ++e.violations;
    } else if (!v.holds) {
      ++e.uncertain;
    }
    e.tail = std::max(e.tail, v.tail);
    if (v.margin < verdicts[worst].margin) worst = i;
  }
  if (total > 0) {
    e.worst_margin = verdicts[worst].margin;
    e.witness = labels[worst];
  }
  if (e.violations == 0) {
    e.lower = r;
    e.upper = 1.0;
  } else {
    e.lower = 0.0;
    e.upper = r;
  }
  return e;
}

RadiusEstimate witness_upper_bound_l1(int n, const std::vector<double>& alphas, double tol, int degree) {
  if (n < 1) throw std::invalid_argument("witness_upper_bound_l1: n must be positive");
  const ReinhardtDomain d = ReinhardtDomain::lp_ball(n, 1.0);
  const std::vector<Complex> ones(static_cast<std::size_t>(n), Complex{1.0, 0.0});
  std::vector<FamilyMember> family(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    const double a = alphas[i];
    auto f = mobius_series(a, degree);
    if (n > 1) f = compose_linear(f, ones);
    family[i] = {a, std::move(f), format_parameter("mobius(sum z) alpha", a), true};
  });
  return family_infimum(family, SeminormFamily::termwise_sup(d), Disk{{}, 1.0}, tol);
}

bool BracketReport::passed() const {
  return probe.violations == 0 && witness_consistent && upper_side_certified.value_or(true);
}

BracketReport bracket_consistency(int n, const ReinhardtDomain& domain, SeminormFamily::Kind mode,
                                  const BracketOptions& options) {
  if (n != domain.dimension()) throw std::invalid_argument("bracket_consistency: dimension mismatch");
  BracketReport rep;
  rep.n = n;
  rep.domain = to_string(domain);
  const SeminormFamily s(mode, domain);
  rep.mode = s.mode_name();
  const double dn = static_cast<double>(n);
  bool l1_witness = false;
  bool certify_upper = false;

  if (mode == SeminormFamily::Kind::MajorantSup) {
    if (n < 2) throw std::invalid_argument("bracket_consistency: r1 brackets need n >= 2");
    if (domain.is_polydisk()) {
      rep.published_lower = 1.0 / (3.0 * std::sqrt(dn));
      rep.published_upper = 2.0 * std::sqrt(std::log(dn)) / std::sqrt(dn);
      rep.upper_vacuous = rep.published_upper >= 1.0;
      rep.note = rep.upper_vacuous ? "published upper side >= 1, not asserted" : "published upper side recorded";
    } else if (domain.p() == 1.0) {
      rep.published_lower = 1.0 / (3.0 * std::cbrt(std::numbers::e));
      rep.published_upper = 1.0 / 3.0;
      certify_upper = true;
      rep.note = "mobius in z_1 certifies the upper side";
    } else {
      throw std::invalid_argument("bracket_consistency: r1 brackets exist for the polydisk and the l1 ball only");
    }
  } else {
    rep.published_lower = 1.0 - std::pow(2.0 / 3.0, 1.0 / dn);
    if (domain.p() == 1.0 && n > 1) {
      rep.published_upper = 0.44663 / dn;
      l1_witness = true;
      rep.note = "witness compared with the published upper side, not asserted";
    } else {
      rep.note = "no published upper side";
    }
  }

  const ConvexTarget disk = Disk{{}, 1.0};
  const AdmissibleGenerator gen(disk, domain, options.inner_degree, options.contraction, options.seed,
                                options.probe_degree);
  rep.probe = probe_no_violation(gen, s, rep.published_lower, options.probe_count);

  if (l1_witness) {
    rep.witness = witness_upper_bound_l1(n, options.alphas, options.tol, options.family_degree);
  } else {
    rep.witness = family_infimum(mobius_family(options.alphas, options.family_degree, n), s, disk, options.tol);
  }
  rep.witness_consistent = rep.witness.upper >= rep.published_lower;
  if (certify_upper) rep.upper_side_certified = rep.witness.upper <= rep.published_upper + options.upper_slack;
  return rep;
}

IndependenceReport independence_experiment(const SeminormFamily& s, const std::vector<ConvexTarget>& targets,
                                           const IndependenceOptions& options) {
  IndependenceReport rep;
  rep.agreement = options.agreement;
  for (const auto& g : targets) {
    IndependenceEntry entry;
    entry.target = to_string(g);
    if (g.is_whole_plane()) {
      entry.estimate = whole_plane_estimate();
      entry.note = "plane: radius 1, not asserted";
    } else {
      const auto family = drift_family(g, options.alphas, options.degree, s.domain());
      entry.estimate = family_infimum(family, s, g, options.tol);
      entry.asserted = !std::holds_alternative<ConvexPolygon>(g.shape());
      if (!entry.asserted) entry.note = "polygon: inscribed tangent disk, not asserted";
    }
    rep.entries.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.entries.size(); ++j) {
      if (!rep.entries[i].asserted || !rep.entries[j].asserted) continue;
      rep.spread = std::max(rep.spread, std::abs(rep.entries[i].estimate.upper - rep.entries[j].estimate.upper));
    }
  }
  return rep;
}

}  // namespace bohr
