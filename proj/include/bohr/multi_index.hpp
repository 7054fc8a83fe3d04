#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace bohr {

using Complex = std::complex<double>;

/// Exponent tuple (a_1, ..., a_n) of a monomial z_1^a_1 ... z_n^a_n.
///
/// Ordering is graded: total degree first, then lexicographic on the
/// exponents. Every summation over a series walks indices in this order.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  /// The zero index in n variables.
  static MultiIndex zero(int dimension);
  /// The unit index e_axis in n variables.
  static MultiIndex unit(int dimension, int axis);

  int dimension() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int operator[](int axis) const { return exponents_[static_cast<std::size_t>(axis)]; }
  std::span<const int> exponents() const { return exponents_; }

  MultiIndex operator+(const MultiIndex& other) const;

  /// k! / (a_1! ... a_n!) with k = |a|, computed as a product of binomials.
  double multinomial() const;

  bool operator==(const MultiIndex& other) const = default;
  std::strong_ordering operator<=>(const MultiIndex& other) const;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Calls fn for every index of total degree exactly k in n variables,
/// in ascending lexicographic order.
void for_each_index_of_degree(int dimension, int degree,
                              const std::function<void(const MultiIndex&)>& fn);

/// Number of indices of total degree exactly k in n variables: C(k+n-1, n-1).
double count_of_degree(int dimension, int degree);

}  // namespace bohr
