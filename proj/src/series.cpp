#include "bohr/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bohr {

namespace {

Complex power(Complex z, int k) {
  Complex result{1.0, 0.0};
  for (int i = 0; i < k; ++i) result *= z;
  return result;
}

// Accumulates coefficients keyed by multi-index. Dense mixed-radix storage
// when (cap+1)^n is small, an ordered map otherwise.
class Accumulator {
 public:
  Accumulator(int dimension, int cap) : dimension_(dimension), base_(cap + 1) {
    double size = std::pow(static_cast<double>(base_), dimension);
    if (size <= 4.0e6) {
      dense_.assign(static_cast<std::size_t>(size), Complex{});
      touched_.assign(dense_.size(), false);
    }
  }

  std::size_t key(const MultiIndex& a) const {
    std::size_t k = 0;
    for (int i = dimension_ - 1; i >= 0; --i) k = k * static_cast<std::size_t>(base_) + static_cast<std::size_t>(a[i]);
    return k;
  }

  bool dense() const { return !dense_.empty(); }

  void add_dense(std::size_t k, Complex c) {
    dense_[k] += c;
    touched_[k] = true;
  }

  void add(const MultiIndex& a, Complex c) {
    if (dense()) {
      add_dense(key(a), c);
    } else {
      sparse_[a] += c;
    }
  }

  std::vector<Term> collect() const {
    std::vector<Term> out;
    if (dense()) {
      std::vector<int> e(static_cast<std::size_t>(dimension_));
      for (std::size_t k = 0; k < dense_.size(); ++k) {
        if (!touched_[k] || dense_[k] == Complex{}) continue;
        std::size_t rest = k;
        for (int i = 0; i < dimension_; ++i) {
          e[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(base_));
          rest /= static_cast<std::size_t>(base_);
        }
        out.push_back({MultiIndex(e), dense_[k]});
      }
      std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
    } else {
      for (const auto& [a, c] : sparse_) {
        if (c != Complex{}) out.push_back({a, c});
      }
    }
    return out;
  }

 private:
  int dimension_;
  int base_;
  std::vector<Complex> dense_;
  std::vector<bool> touched_;
  std::map<MultiIndex, Complex> sparse_;
};

}  // namespace

TruncatedPowerSeries::TruncatedPowerSeries(int dimension, int max_degree, std::vector<Term> terms,
                                           std::optional<TailBound> tail)
    : dimension_(dimension), max_degree_(max_degree), tail_(tail) {
  if (dimension < 1) throw std::invalid_argument("series: dimension must be positive");
  if (max_degree < 0) throw std::invalid_argument("series: negative max_degree");
  if (tail && (!(tail->bound >= 0.0) || !(tail->radius > 0.0))) {
    throw std::invalid_argument("series: invalid tail bound");
  }
  std::map<MultiIndex, Complex> merged;
  for (auto& t : terms) {
    if (t.index.dimension() != dimension) throw std::invalid_argument("series: index dimension mismatch");
    if (t.index.degree() > max_degree) throw std::invalid_argument("series: index exceeds max_degree");
    merged[t.index] += t.coefficient;
  }
  terms_.reserve(merged.size());
  for (auto& [a, c] : merged) {
    if (c != Complex{}) terms_.push_back({a, c});
  }
}

TruncatedPowerSeries TruncatedPowerSeries::constant(int dimension, int max_degree, Complex value) {
  return TruncatedPowerSeries(dimension, max_degree, {{MultiIndex::zero(dimension), value}});
}

TruncatedPowerSeries TruncatedPowerSeries::monomial(const MultiIndex& index, Complex coefficient,
                                                    int max_degree) {
  return TruncatedPowerSeries(index.dimension(), max_degree, {{index, coefficient}});
}

Complex TruncatedPowerSeries::coefficient(const MultiIndex& index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, const MultiIndex& a) { return t.index < a; });
  if (it != terms_.end() && it->index == index) return it->coefficient;
  return {};
}

Complex TruncatedPowerSeries::constant_term() const {
  if (!terms_.empty() && terms_.front().index.degree() == 0) return terms_.front().coefficient;
  return {};
}

double TruncatedPowerSeries::tail_bound_at(double r) const {
  if (!tail_) return 0.0;
  if (r > tail_->radius) return std::numeric_limits<double>::infinity();
  return tail_->bound * std::pow(r / tail_->radius, tail_order());
}

int TruncatedPowerSeries::tail_order() const {
  if (tail_ && tail_->order >= 0) return tail_->order;
  return max_degree_ + 1;
}

TruncatedPowerSeries TruncatedPowerSeries::with_tail(std::optional<TailBound> tail) const {
  TruncatedPowerSeries copy(*this);
  if (tail && (!(tail->bound >= 0.0) || !(tail->radius > 0.0))) {
    throw std::invalid_argument("series: invalid tail bound");
  }
  copy.tail_ = tail;
  return copy;
}

Complex eval(const TruncatedPowerSeries& f, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != f.dimension()) throw std::invalid_argument("eval: dimension mismatch");
  Complex sum{};
  for (const auto& t : f.terms()) {
    Complex m = t.coefficient;
    for (int i = 0; i < f.dimension(); ++i) m *= power(z[static_cast<std::size_t>(i)], t.index[i]);
    sum += m;
  }
  return sum;
}

TruncatedPowerSeries mobius_series(double alpha, int degree) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("mobius_series: alpha must lie in (0,1)");
  if (degree < 0) throw std::invalid_argument("mobius_series: negative degree");
  std::vector<Term> terms;
  terms.push_back({MultiIndex{0}, Complex{alpha, 0.0}});
  const double scale = 1.0 - alpha * alpha;
  double a_pow = 1.0;  // alpha^(k-1)
  for (int k = 1; k <= degree; ++k) {
    terms.push_back({MultiIndex{k}, Complex{-scale * a_pow, 0.0}});
    a_pow *= alpha;
  }
  // a_pow == alpha^degree here
  TailBound tail{scale * a_pow / (1.0 - alpha), 1.0};
  return TruncatedPowerSeries(1, degree, std::move(terms), tail);
}

TruncatedPowerSeries rotate(const TruncatedPowerSeries& f, double phi) {
  if (phi == 0.0) return f;
  const Complex unit = std::polar(1.0, phi);
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (auto& t : terms) t.coefficient *= unit;
  return TruncatedPowerSeries(f.dimension(), f.max_degree(), std::move(terms), f.tail());
}

TruncatedPowerSeries shifted(const TruncatedPowerSeries& f, Complex delta) {
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  terms.push_back({MultiIndex::zero(f.dimension()), delta});
  return TruncatedPowerSeries(f.dimension(), f.max_degree(), std::move(terms), f.tail());
}

TruncatedPowerSeries scaled(const TruncatedPowerSeries& f, Complex s) {
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (auto& t : terms) t.coefficient *= s;
  std::optional<TailBound> tail = f.tail();
  if (tail) tail->bound *= std::abs(s);
  return TruncatedPowerSeries(f.dimension(), f.max_degree(), std::move(terms), tail);
}

TruncatedPowerSeries compose_linear(const TruncatedPowerSeries& g, std::span<const Complex> weights) {
  if (g.dimension() != 1) throw std::invalid_argument("compose_linear: outer series must be univariate");
  if (weights.empty()) throw std::invalid_argument("compose_linear: empty weights");
  const int n = static_cast<int>(weights.size());
  std::vector<Term> terms;
  for (const auto& t : g.terms()) {
    const int k = t.index.degree();
    for_each_index_of_degree(n, k, [&](const MultiIndex& beta) {
      Complex c = t.coefficient * beta.multinomial();
      for (int i = 0; i < n; ++i) c *= power(weights[static_cast<std::size_t>(i)], beta[i]);
      terms.push_back({beta, c});
    });
  }
  std::optional<TailBound> tail;
  if (g.tail()) {
    // |sum w_i z_i|^k <= (sum |w_i|)^k rho^k on the polydisk of radius rho.
    double s = 0.0;
    for (auto w : weights) s += std::abs(w);
    if (s > 0.0) tail = TailBound{g.tail()->bound, g.tail()->radius / s, g.tail_order()};
  }
  return TruncatedPowerSeries(n, g.max_degree(), std::move(terms), tail);
}

TruncatedPowerSeries multiply(const TruncatedPowerSeries& f, const TruncatedPowerSeries& g,
                              std::optional<int> degree_cap) {
  if (f.dimension() != g.dimension()) throw std::invalid_argument("multiply: dimension mismatch");
  const int n = f.dimension();
  const int full = f.max_degree() + g.max_degree();
  const int cap = degree_cap ? std::min(*degree_cap, full) : full;
  if (cap < 0) throw std::invalid_argument("multiply: negative degree cap");

  Accumulator acc(n, cap);
  std::vector<Term> dropped;
  if (acc.dense()) {
    std::vector<std::size_t> gkeys;
    gkeys.reserve(g.terms().size());
    for (const auto& t : g.terms()) gkeys.push_back(acc.key(t.index));
    for (const auto& a : f.terms()) {
      const std::size_t ka = acc.key(a.index);
      const int da = a.index.degree();
      std::size_t j = 0;
      for (const auto& b : g.terms()) {
        if (da + b.index.degree() <= cap) {
          acc.add_dense(ka + gkeys[j], a.coefficient * b.coefficient);
        } else {
          dropped.push_back({a.index + b.index, a.coefficient * b.coefficient});
        }
        ++j;
      }
    }
  } else {
    for (const auto& a : f.terms()) {
      for (const auto& b : g.terms()) {
        if (a.index.degree() + b.index.degree() <= cap) {
          acc.add(a.index + b.index, a.coefficient * b.coefficient);
        } else {
          dropped.push_back({a.index + b.index, a.coefficient * b.coefficient});
        }
      }
    }
  }

  std::optional<TailBound> tail;
  if (f.tail() || g.tail() || !dropped.empty()) {
    double rho = 1.0;
    if (f.tail()) rho = std::min(rho, f.tail()->radius);
    if (g.tail()) rho = std::min(rho, g.tail()->radius);
    const double tf = f.tail_bound_at(rho);
    const double tg = g.tail_bound_at(rho);
    const double mf = polydisk_majorant(f, rho);
    const double mg = polydisk_majorant(g, rho);
    double cross = 0.0;
    for (const auto& t : dropped) cross += std::abs(t.coefficient) * std::pow(rho, t.index.degree());
    int order = cap + 1;
    if (f.tail()) order = std::min(order, f.tail_order());
    if (g.tail()) order = std::min(order, g.tail_order());
    const double bound = tf * mg + mf * tg + tf * tg + cross;
    tail = TailBound{bound, rho, order};
  }
  return TruncatedPowerSeries(n, cap, acc.collect(), tail);
}

TruncatedPowerSeries compose(std::span<const Complex> outer, const TruncatedPowerSeries& inner,
                             int max_degree) {
  if (outer.empty()) throw std::invalid_argument("compose: empty outer coefficients");
  if (max_degree < 0) throw std::invalid_argument("compose: negative degree");
  const int n = inner.dimension();
  const TruncatedPowerSeries centered = shifted(inner.with_tail(std::nullopt), -inner.constant_term());
  const int top = std::min<int>(static_cast<int>(outer.size()) - 1, max_degree);
  TruncatedPowerSeries result = TruncatedPowerSeries::constant(n, max_degree, outer[static_cast<std::size_t>(top)]);
  for (int k = top - 1; k >= 0; --k) {
    result = multiply(result, centered, max_degree);
    result = shifted(result, outer[static_cast<std::size_t>(k)]);
  }
  return TruncatedPowerSeries(n, max_degree, std::vector<Term>(result.terms().begin(), result.terms().end()));
}

TruncatedPowerSeries extract_coefficients(const Sampler& sampler, int dimension, int degree, double rho,
                                          int samples_per_axis) {
  if (dimension < 1) throw std::invalid_argument("extract_coefficients: dimension must be positive");
  if (degree < 0) throw std::invalid_argument("extract_coefficients: negative degree");
  if (samples_per_axis <= degree) throw std::invalid_argument("extract_coefficients: need N > d");
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("extract_coefficients: rho must lie in (0,1)");

  const int big_n = samples_per_axis;
  const auto n_u = static_cast<std::size_t>(big_n);
  std::vector<Complex> twiddle(n_u);
  std::vector<Complex> node(n_u);
  for (int m = 0; m < big_n; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / big_n;
    twiddle[static_cast<std::size_t>(m)] = std::polar(1.0, -theta);
    node[static_cast<std::size_t>(m)] = std::polar(rho, theta);
  }

  std::size_t total = 1;
  for (int i = 0; i < dimension; ++i) total *= n_u;

  std::vector<Complex> values(total);
  std::vector<int> grid(static_cast<std::size_t>(dimension), 0);
  std::vector<Complex> z(static_cast<std::size_t>(dimension));
  double sup = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int i = 0; i < dimension; ++i) {
      grid[static_cast<std::size_t>(i)] = static_cast<int>(rest % n_u);
      rest /= n_u;
      z[static_cast<std::size_t>(i)] = node[static_cast<std::size_t>(grid[static_cast<std::size_t>(i)])];
    }
    values[flat] = sampler(z);
    sup = std::max(sup, std::abs(values[flat]));
  }

  std::vector<Term> terms;
  const double norm = 1.0 / static_cast<double>(total);
  for (int k = 0; k <= degree; ++k) {
    const double scale = norm / std::pow(rho, k);
    for_each_index_of_degree(dimension, k, [&](const MultiIndex& a) {
      Complex sum{};
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        std::size_t phase = 0;
        for (int i = 0; i < dimension; ++i) {
          phase += (rest % n_u) * static_cast<std::size_t>(a[i]);
          rest /= n_u;
        }
        sum += values[flat] * twiddle[phase % n_u];
      }
      terms.push_back({a, sum * scale});
    });
  }
  // Aliasing touches every extracted coefficient, so the error starts at degree 0.
  TailBound alias{sup * std::pow(rho, big_n - degree) / (1.0 - rho), rho, 0};
  return TruncatedPowerSeries(dimension, degree, std::move(terms), alias);
}

double polydisk_majorant(const TruncatedPowerSeries& f, double rho, bool include_constant) {
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    const int k = t.index.degree();
    if (k == 0 && !include_constant) continue;
    sum += std::abs(t.coefficient) * std::pow(rho, k);
  }
  return sum;
}

std::string to_text(const TruncatedPowerSeries& f) {
  std::string out = std::to_string(f.dimension()) + " " + std::to_string(f.max_degree()) + "\n";
  char buf[64];
  for (const auto& t : f.terms()) {
    for (int e : t.index.exponents()) out += std::to_string(e) + " ";
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", t.coefficient.real(), t.coefficient.imag());
    out += buf;
  }
  return out;
}

TruncatedPowerSeries from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  int n = 0;
  int d = 0;
  if (!(in >> n >> d)) throw std::invalid_argument("from_text: missing header");
  std::vector<Term> terms;
  std::vector<int> e(static_cast<std::size_t>(std::max(n, 0)));
  while (true) {
    if (!(in >> e[0])) break;
    for (int i = 1; i < n; ++i) {
      if (!(in >> e[static_cast<std::size_t>(i)])) throw std::invalid_argument("from_text: truncated record");
    }
    double re = 0.0;
    double im = 0.0;
    if (!(in >> re >> im)) throw std::invalid_argument("from_text: truncated record");
    terms.push_back({MultiIndex(e), Complex{re, im}});
  }
  if (!in.eof()) throw std::invalid_argument("from_text: malformed record");
  return TruncatedPowerSeries(n, d, std::move(terms));
}

}  // namespace bohr
