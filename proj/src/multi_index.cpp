#include "bohr/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bohr {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zero(int dimension) {
  if (dimension < 1) throw std::invalid_argument("MultiIndex: dimension must be positive");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

MultiIndex MultiIndex::unit(int dimension, int axis) {
  if (axis < 0 || axis >= dimension) throw std::invalid_argument("MultiIndex: axis out of range");
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  e[static_cast<std::size_t>(axis)] = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  std::vector<int> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return MultiIndex(std::move(e));
}

double MultiIndex::multinomial() const {
  // prod_i C(a_1 + ... + a_i, a_i)
  double result = 1.0;
  int partial = 0;
  for (int a : exponents_) {
    for (int j = 1; j <= a; ++j) {
      result *= static_cast<double>(partial + j) / static_cast<double>(j);
    }
    partial += a;
  }
  return result < 9.0e15 ? std::round(result) : result;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  return std::lexicographical_compare_three_way(exponents_.begin(), exponents_.end(),
                                                other.exponents_.begin(), other.exponents_.end());
}

namespace {

void enumerate(std::vector<int>& e, std::size_t axis, int remaining,
               const std::function<void(const MultiIndex&)>& fn) {
  if (axis + 1 == e.size()) {
    e[axis] = remaining;
    fn(MultiIndex(e));
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    e[axis] = a;
    enumerate(e, axis + 1, remaining - a, fn);
  }
}

}  // namespace

void for_each_index_of_degree(int dimension, int degree,
                              const std::function<void(const MultiIndex&)>& fn) {
  if (dimension < 1 || degree < 0) return;
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  enumerate(e, 0, degree, fn);
}

double count_of_degree(int dimension, int degree) {
  double c = 1.0;
  for (int j = 1; j < dimension; ++j) {
    c *= static_cast<double>(degree + j) / static_cast<double>(j);
  }
  return std::round(c);
}

}  // namespace bohr
