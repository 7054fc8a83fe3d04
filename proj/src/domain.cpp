#include "bohr/domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bohr {

ReinhardtDomain::ReinhardtDomain(int dimension, double p) : dimension_(dimension), p_(p) {
  if (dimension < 1) throw std::invalid_argument("domain: dimension must be positive");
  if (!(p > 0.0)) throw std::invalid_argument("domain: p must be positive");
}

double ReinhardtDomain::gauge(std::span<const Complex> z) const {
  std::vector<double> m(z.size());
  std::transform(z.begin(), z.end(), m.begin(), [](Complex c) { return std::abs(c); });
  return gauge(std::span<const double>(m));
}

double ReinhardtDomain::gauge(std::span<const double> moduli) const {
  if (is_polydisk()) {
    double m = 0.0;
    for (double t : moduli) m = std::max(m, std::abs(t));
    return m;
  }
  if (p_ == 2.0 && moduli.size() == 2) return std::hypot(moduli[0], moduli[1]);
  double s = 0.0;
  for (double t : moduli) s += std::pow(std::abs(t), p_);
  return std::pow(s, 1.0 / p_);
}

double ReinhardtDomain::linear_form_scale() const {
  // sup |z_1 + ... + z_n| on the unit ball is the dual norm of (1, ..., 1):
  // n^(1 - 1/p) for p >= 1, and 1 (attained at the vertices) for p <= 1.
  if (is_polydisk()) return 1.0 / dimension_;
  if (p_ <= 1.0) return 1.0;
  return std::pow(static_cast<double>(dimension_), -(1.0 - 1.0 / p_));
}

namespace {

double parse_number(std::string_view s, std::string_view what) {
  if (s == "inf" || s == "infinity") return ReinhardtDomain::kPolydisk;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("cannot parse " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

ReinhardtDomain parse_domain(std::string_view spec) {
  if (!spec.starts_with("lp:")) throw std::invalid_argument("domain spec must look like lp:<p>:<n>");
  auto rest = spec.substr(3);
  auto colon = rest.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("domain spec must look like lp:<p>:<n>");
  double p = parse_number(rest.substr(0, colon), "p");
  double n = parse_number(rest.substr(colon + 1), "n");
  if (n != std::floor(n) || n < 1 || std::isinf(n)) throw std::invalid_argument("domain dimension must be a positive integer");
  return ReinhardtDomain(static_cast<int>(n), p);
}

std::string to_string(const ReinhardtDomain& d) {
  std::string p;
  if (d.is_polydisk()) {
    p = "inf";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", d.p());
    p = buf;
  }
  return "lp:" + p + ":" + std::to_string(d.dimension());
}

bool contains(const ReinhardtDomain& d, std::span<const Complex> z, double r) {
  if (static_cast<int>(z.size()) != d.dimension()) throw std::invalid_argument("contains: dimension mismatch");
  if (!(r > 0.0)) throw std::invalid_argument("contains: radius must be positive");
  return d.gauge(z) < r;
}

double monomial_sup(const ReinhardtDomain& d, const MultiIndex& alpha, double r) {
  const int k = alpha.degree();
  const double scale = std::pow(r, k);
  if (k == 0 || d.is_polydisk()) return scale;
  // Lagrange maximizer on the sphere: t_i^p = a_i / |a|.
  double log_factor = 0.0;
  for (int a : alpha.exponents()) {
    if (a == 0) continue;
    log_factor += a * std::log(static_cast<double>(a) / k);
  }
  return scale * std::exp(log_factor / d.p());
}

namespace {

void compositions(int total, std::vector<int>& cur, std::size_t pos,
                  std::vector<std::vector<int>>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int a = total; a >= 0; --a) {
    cur[pos] = a;
    compositions(total - a, cur, pos + 1, out);
  }
}

}  // namespace

std::vector<std::vector<double>> boundary_sample(const ReinhardtDomain& d, double r, int m) {
  if (m < 2) throw std::invalid_argument("boundary_sample: m must be at least 2");
  const int n = d.dimension();
  const auto n_u = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> points;
  if (n == 1) {
    points.push_back({r});
    return points;
  }
  if (d.is_polydisk()) {
    for (int face = 0; face < n; ++face) {
      // grid over the remaining coordinates; skip points already produced by
      // an earlier face (some earlier coordinate equal to r)
      std::vector<int> idx(n_u - 1, 0);
      while (true) {
        std::vector<double> t(n_u);
        bool duplicate = false;
        std::size_t j = 0;
        for (int i = 0; i < n; ++i) {
          if (i == face) {
            t[static_cast<std::size_t>(i)] = r;
          } else {
            t[static_cast<std::size_t>(i)] = r * idx[j] / m;
            if (idx[j] == m && i < face) duplicate = true;
            ++j;
          }
        }
        if (!duplicate) points.push_back(std::move(t));
        std::size_t carry = 0;
        while (carry < idx.size() && ++idx[carry] > m) idx[carry++] = 0;
        if (carry == idx.size()) break;
      }
    }
    return points;
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> cur(n_u, 0);
  compositions(m, cur, 0, comps);
  const double inv_p = 1.0 / d.p();
  bool has_center = m % n == 0;
  for (const auto& c : comps) {
    std::vector<double> t(n_u);
    for (std::size_t i = 0; i < n_u; ++i) t[i] = r * std::pow(static_cast<double>(c[i]) / m, inv_p);
    points.push_back(std::move(t));
  }
  if (!has_center) {
    points.emplace_back(n_u, r * std::pow(1.0 / n, inv_p));
  }
  return points;
}

}  // namespace bohr
