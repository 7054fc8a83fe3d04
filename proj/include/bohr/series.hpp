#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bohr/multi_index.hpp"

namespace bohr {

/// Bound on the majorant of the discarded or inexact part of a series on the
/// closed polydisk of the given radius: sum |e_a| radius^|a|. Every error
/// term has total degree >= order; order < 0 means max_degree + 1.
struct TailBound {
  double bound = 0.0;
  double radius = 1.0;
  int order = -1;
};

struct Term {
  MultiIndex index;
  Complex coefficient;
};

/// Finite coefficient table of a holomorphic function in n variables,
/// truncated at total degree max_degree. Absent indices are zero.
///
/// Terms are stored sorted in graded order and the object is immutable once
/// built, so sharing across threads is safe.
class TruncatedPowerSeries {
 public:
  TruncatedPowerSeries(int dimension, int max_degree, std::vector<Term> terms = {},
                       std::optional<TailBound> tail = std::nullopt);

  static TruncatedPowerSeries constant(int dimension, int max_degree, Complex value);
  static TruncatedPowerSeries monomial(const MultiIndex& index, Complex coefficient, int max_degree);

  int dimension() const { return dimension_; }
  int max_degree() const { return max_degree_; }
  std::span<const Term> terms() const { return terms_; }
  const std::optional<TailBound>& tail() const { return tail_; }

  Complex coefficient(const MultiIndex& index) const;
  Complex constant_term() const;

  /// Tail bound rescaled to polyradius r <= radius via (r/radius)^order.
  /// Zero without a tail, +inf when r exceeds the reference radius.
  double tail_bound_at(double r) const;
  /// Lowest degree carried by the tail (max_degree + 1 by default).
  int tail_order() const;

  TruncatedPowerSeries with_tail(std::optional<TailBound> tail) const;

 private:
  int dimension_;
  int max_degree_;
  std::vector<Term> terms_;
  std::optional<TailBound> tail_;
};

using Sampler = std::function<Complex(std::span<const Complex>)>;

/// Sum of c_a z^a over stored indices in graded order.
Complex eval(const TruncatedPowerSeries& f, std::span<const Complex> z);

/// Taylor series of (alpha - z) / (1 - alpha z), 0 < alpha < 1.
TruncatedPowerSeries mobius_series(double alpha, int degree);

/// e^{i phi} f.
TruncatedPowerSeries rotate(const TruncatedPowerSeries& f, double phi);

/// f + delta (shifts the constant coefficient).
TruncatedPowerSeries shifted(const TruncatedPowerSeries& f, Complex delta);

/// s f.
TruncatedPowerSeries scaled(const TruncatedPowerSeries& f, Complex s);

/// g(w_1 z_1 + ... + w_n z_n) for a one-variable g.
TruncatedPowerSeries compose_linear(const TruncatedPowerSeries& g, std::span<const Complex> weights);

/// Cauchy product truncated at min(cap, d_f + d_g). The tail bound of the
/// result covers both input tails and the cross terms dropped by the cap.
TruncatedPowerSeries multiply(const TruncatedPowerSeries& f, const TruncatedPowerSeries& g,
                              std::optional<int> degree_cap = std::nullopt);

/// sum_k outer[k] (v - v(0))^k truncated at max_degree, where outer holds the
/// Taylor coefficients of the outer function about v(0). Tails are not
/// propagated; callers that know a bound attach it with with_tail.
TruncatedPowerSeries compose(std::span<const Complex> outer, const TruncatedPowerSeries& inner,
                             int max_degree);

/// Taylor coefficients from a discretized Cauchy integral on the polytorus of
/// radius rho with samples_per_axis points per axis. The aliasing estimate
/// sup|sampler| rho^(N-d) / (1-rho) is recorded as the tail bound.
TruncatedPowerSeries extract_coefficients(const Sampler& sampler, int dimension, int degree,
                                          double rho, int samples_per_axis);

/// Majorant sum |c_a| rho^|a| over stored terms, optionally skipping c_0.
double polydisk_majorant(const TruncatedPowerSeries& f, double rho, bool include_constant = true);

/// Text record: a line "n d", then one line "a_1 ... a_n re im" per term,
/// decimals printed with 17 significant digits.
std::string to_text(const TruncatedPowerSeries& f);
TruncatedPowerSeries from_text(std::string_view text);

}  // namespace bohr
