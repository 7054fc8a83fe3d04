#include "bohr/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bohr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nonconstant part of a series as a polynomial in the moduli t_i with
// nonnegative weights.
class MajorantPolynomial {
 public:
  explicit MajorantPolynomial(const TruncatedPowerSeries& f) : n_(f.dimension()), degree_(0) {
    for (const auto& t : f.terms()) {
      if (t.index.degree() == 0) continue;
      weights_.push_back(std::abs(t.coefficient));
      for (int e : t.index.exponents()) exponents_.push_back(e);
      degree_ = std::max(degree_, t.index.degree());
    }
  }

  bool empty() const { return weights_.empty(); }

  double operator()(std::span<const double> t) const {
    const auto stride = static_cast<std::size_t>(degree_) + 1;
    powers_.resize(static_cast<std::size_t>(n_) * stride);
    for (int i = 0; i < n_; ++i) {
      double* row = powers_.data() + static_cast<std::size_t>(i) * stride;
      row[0] = 1.0;
      for (std::size_t k = 1; k < stride; ++k) row[k] = row[k - 1] * t[static_cast<std::size_t>(i)];
    }
    double sum = 0.0;
    const int* e = exponents_.data();
    for (double w : weights_) {
      double m = w;
      for (int i = 0; i < n_; ++i) m *= powers_[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(e[i])];
      sum += m;
      e += n_;
    }
    return sum;
  }

 private:
  int n_;
  int degree_;
  std::vector<double> weights_;
  std::vector<int> exponents_;
  mutable std::vector<double> powers_;
};

int grid_resolution(int n) {
  switch (n) {
    case 2:
      return 2048;
    case 3:
      return 48;
    default:
      return 12;
  }
}

// Maximize the majorant over {u >= 0, sum u = 1}, t_i = r u_i^(1/p).
struct SimplexAscent {
  const MajorantPolynomial& poly;
  double r;
  double inv_p;
  std::vector<double> t;

  double value(const std::vector<double>& u) {
    for (std::size_t i = 0; i < u.size(); ++i) t[i] = r * std::pow(u[i], inv_p);
    return poly(t);
  }

  // returns (value, residual)
  std::pair<double, double> polish(std::vector<double> u, double step) {
    double best = value(u);
    const std::size_t n = u.size();
    while (step >= 1e-7) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const double delta = std::min(step, u[j]);
          if (delta <= 0.0) continue;
          u[i] += delta;
          u[j] -= delta;
          const double v = value(u);
          if (v > best) {
            best = v;
            improved = true;
          } else {
            u[i] -= delta;
            u[j] += delta;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double delta = std::min(step, u[j]);
        if (delta <= 0.0) continue;
        u[i] += delta;
        u[j] -= delta;
        residual = std::max(residual, std::abs(value(u) - best));
        u[i] -= delta;
        u[j] += delta;
      }
    }
    return {best, residual};
  }
};

}  // namespace

double majorant_value(const TruncatedPowerSeries& f, std::span<const double> moduli) {
  if (static_cast<int>(moduli.size()) != f.dimension()) throw std::invalid_argument("majorant_value: dimension mismatch");
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    if (t.index.degree() == 0) continue;
    double m = std::abs(t.coefficient);
    for (int i = 0; i < f.dimension(); ++i) {
      for (int k = 0; k < t.index[i]; ++k) m *= moduli[static_cast<std::size_t>(i)];
    }
    sum += m;
  }
  return sum;
}

double majorant_value(const TruncatedPowerSeries& f, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != f.dimension()) throw std::invalid_argument("majorant_value: dimension mismatch");
  std::vector<double> m(z.size());
  std::transform(z.begin(), z.end(), m.begin(), [](Complex c) { return std::abs(c); });
  return majorant_value(f, std::span<const double>(m));
}

NormEstimate r1_norm(const TruncatedPowerSeries& f, const ReinhardtDomain& d, double r) {
  if (f.dimension() != d.dimension()) throw std::invalid_argument("r1_norm: dimension mismatch");
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("r1_norm: r must lie in [0,1]");
  const int n = d.dimension();
  const auto n_u = static_cast<std::size_t>(n);
  MajorantPolynomial poly(f);
  if (poly.empty() || r == 0.0) return {0.0, 0.0};
  if (n == 1 || d.is_polydisk()) {
    std::vector<double> corner(n_u, r);
    return {poly(corner), 0.0};
  }

  const int m = grid_resolution(n);
  const auto samples = boundary_sample(d, r, m);
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) scored.emplace_back(poly(samples[s]), s);
  const std::size_t keep = std::min<std::size_t>(3, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });

  SimplexAscent ascent{poly, r, 1.0 / d.p(), std::vector<double>(n_u)};
  NormEstimate best{scored.front().first, 0.0};
  for (std::size_t c = 0; c < keep; ++c) {
    const auto& t = samples[scored[c].second];
    std::vector<double> u(n_u);
    double total = 0.0;
    for (std::size_t i = 0; i < n_u; ++i) {
      u[i] = std::pow(t[i] / r, d.p());
      total += u[i];
    }
    for (auto& x : u) x /= total;
    auto [value, residual] = ascent.polish(u, 1.0 / m);
    if (value > best.value) {
      best = {value, residual};
    } else if (c == 0) {
      best.residual = residual;
    }
  }
  return best;
}

double r2_norm(const TruncatedPowerSeries& f, const ReinhardtDomain& d, double r) {
  if (f.dimension() != d.dimension()) throw std::invalid_argument("r2_norm: dimension mismatch");
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("r2_norm: r must lie in [0,1]");
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    if (t.index.degree() == 0) continue;
    sum += std::abs(t.coefficient) * monomial_sup(d, t.index, r);
  }
  return sum;
}

NormEstimate centered_norm(const SeminormFamily& s, const TruncatedPowerSeries& f, double r) {
  if (s.kind() == SeminormFamily::Kind::MajorantSup) return r1_norm(f, s.domain(), r);
  return {r2_norm(f, s.domain(), r), 0.0};
}

double seminorm_eval(const SeminormFamily& s, const TruncatedPowerSeries& f, double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("seminorm_eval: r must lie in (0,1)");
  const auto z0 = s.base_point();
  return std::abs(eval(f, z0)) + centered_norm(s, f, r).value;
}

BohrVerdict bohr_condition(const TruncatedPowerSeries& f, const SeminormFamily& s, double r, const ConvexTarget& g,
                           const ConditionOptions& options) {
  if (f.dimension() != s.domain().dimension()) throw std::invalid_argument("bohr_condition: dimension mismatch");
  BohrVerdict v;
  if (g.is_whole_plane()) {
    v.value = centered_norm(s, f, r).value;
    v.threshold = kInf;
    v.margin = kInf;
    v.holds = true;
    return v;
  }
  const Complex c0 = eval(f, s.base_point());
  v.threshold = hull_distance(g, c0);
  const NormEstimate norm = centered_norm(s, f, r);
  v.value = norm.value;
  v.tail = (options.tail_at ? options.tail_at(r) : f.tail_bound_at(r)) + norm.residual;
  v.margin = v.threshold - v.value;
  const double slack = options.tolerance * v.threshold + v.tail;
  v.holds = v.margin > slack;
  v.boundary = std::abs(v.margin) <= slack;
  return v;
}

void AxiomOutcome::record(double margin, double tolerance) {
  ++checked;
  worst_margin = std::min(worst_margin, margin);
  if (margin < -tolerance) ++failed;
}

bool AxiomReport::passed() const {
  return monotone.failed == 0 && submultiplicative.failed == 0 && limit.failed == 0 && split.failed == 0;
}

AxiomReport check_axioms(const SeminormFamily& s, std::span<const TruncatedPowerSeries> functions,
                         std::span<const double> r_grid, double tolerance) {
  if (functions.empty() || r_grid.empty()) throw std::invalid_argument("check_axioms: empty inputs");
  std::vector<double> radii(r_grid.begin(), r_grid.end());
  std::sort(radii.begin(), radii.end());
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("check_axioms: radii must lie in (0,1)");
  }
  constexpr double kSmallestR = 1e-4;
  const auto z0 = s.base_point();
  const auto scale = [](double a) { return std::max(1.0, std::abs(a)); };

  AxiomReport report;
  const std::size_t count = functions.size();
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto& f = functions[idx];
    const double c0 = std::abs(eval(f, z0));
    std::vector<double> norms;
    norms.reserve(radii.size());
    for (double r : radii) norms.push_back(seminorm_eval(s, f, r));

    // a)
    for (std::size_t k = 1; k < radii.size(); ++k) {
      report.monotone.record((norms[k] - norms[k - 1]) / scale(norms[k]), tolerance);
    }

    // c) every term has degree >= 1, so the centered norm is at most linear in r
    const double ref_dev = norms.back() - c0;
    const double ref_r = radii.back();
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double dev = norms[k] - c0;
      report.limit.record((radii[k] / ref_r * ref_dev - dev) / scale(norms.back()), tolerance);
    }
    const double dev_small = seminorm_eval(s, f, kSmallestR) - c0;
    report.limit.record((kSmallestR / ref_r * ref_dev - dev_small) / scale(norms.back()), tolerance);
    report.deviation_at_smallest_r = std::max(report.deviation_at_smallest_r, dev_small);

    // d)
    const auto centered = shifted(f, -eval(f, z0));
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double split = c0 + seminorm_eval(s, centered, radii[k]);
      report.split.record(-std::abs(norms[k] - split) / scale(norms[k]), tolerance);
    }

    // b) with the next function
    if (count < 2) continue;
    const auto& g = functions[(idx + 1) % count];
    if (&g == &f) continue;
    const auto product = multiply(f, g);
    for (double r : radii) {
      const double nf = seminorm_eval(s, f, r);
      const double ng = seminorm_eval(s, g, r);
      const double nfg = seminorm_eval(s, product, r);
      const double tail = product.tail_bound_at(r);
      if (tail > 1e-8 * std::max(nfg, nf * ng)) {
        ++report.submultiplicative.skipped;
        continue;
      }
      report.submultiplicative.record((nf * ng - nfg) / scale(nf * ng), tolerance);
    }
  }
  return report;
}

CoefficientBoundReport landau_caratheodory_check(const TruncatedPowerSeries& f, const ConvexTarget& g,
                                                 double tolerance) {
  if (f.dimension() != 1) throw std::invalid_argument("landau_caratheodory_check: series must be univariate");
  CoefficientBoundReport report;
  const Complex c0 = f.constant_term();
  report.bound = 2.0 * hull_distance(g, c0);
  if (const auto* disk = std::get_if<Disk>(&g.shape()); disk && disk->center == Complex{} && disk->radius == 1.0) {
    report.specialization = CoefficientBoundReport::Specialization::Landau;
  }
  if (const auto* h = std::get_if<HalfPlane>(&g.shape());
      h && h->boundary_point.real() == 0.0 && h->inward_normal == Complex{1.0, 0.0}) {
    report.specialization = CoefficientBoundReport::Specialization::Caratheodory;
  }
  report.max_excess = -report.bound;
  for (const auto& t : f.terms()) {
    const int k = t.index.degree();
    if (k == 0) continue;
    const double excess = std::abs(t.coefficient) - report.bound;
    if (excess > report.max_excess || report.worst_degree == 0) {
      report.max_excess = excess;
      report.worst_degree = k;
    }
  }
  report.passed = report.max_excess <= tolerance * std::max(1.0, report.bound);
  return report;
}

double slice_tail_bound(int dimension, int degree, double delta, double x) {
  if (delta == 0.0 || x == 0.0) return 0.0;
  if (!(x < 1.0)) return kInf;
  if (std::isinf(delta)) return kInf;
  double sum = 0.0;
  for (int k = degree + 1;; ++k) {
    const double term = count_of_degree(dimension, k) * std::pow(x, k);
    sum += term;
    if (term < 1e-18 * sum || term == 0.0) break;
    if (k > degree + 100000) return kInf;
  }
  return 2.0 * delta * sum;
}

}  // namespace bohr
