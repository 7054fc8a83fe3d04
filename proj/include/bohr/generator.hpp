#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "bohr/domain.hpp"
#include "bohr/series.hpp"
#include "bohr/target.hpp"

namespace bohr {

/// Reproducible random stream for item `index` of a seeded experiment.
std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t index);
/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

/// Dense random series with c_a = u e^{i theta} decay^|a|, u uniform in [0,1),
/// degree >= 1, drawn from stream (seed, index).
TruncatedPowerSeries random_series(int dimension, int degree, std::uint64_t seed, std::uint64_t index,
                                   double decay = 0.8);

/// One generated admissible function f = h o phi_a o (s P), where P is a
/// polynomial with P(0) = 0 and sup_D |P| <= 1, 0 < s <= contraction < 1,
/// phi_a a disk automorphism and h a map of the unit disk into the target.
struct AdmissibleSample {
  TruncatedPowerSeries series;
  TruncatedPowerSeries inner;  ///< P
  double scale = 1.0;          ///< s
  Complex automorphism;        ///< a
  std::string description;
};

/// Supplies functions with f(D) inside the target by construction.
class AdmissibleGenerator {
 public:
  AdmissibleGenerator(ConvexTarget target, ReinhardtDomain domain, int inner_degree, double contraction,
                      std::uint64_t seed, int degree);

  AdmissibleSample generate(std::uint64_t index) const;

  /// Exact value of the sampled map at z (no truncation).
  Complex closed_form(const AdmissibleSample& sample, std::span<const Complex> z) const;

  /// Distance of f(0) to the hull boundary.
  double hull_distance_at_origin(const AdmissibleSample& sample) const;

  const ConvexTarget& target() const { return target_; }
  const ReinhardtDomain& domain() const { return domain_; }
  int degree() const { return degree_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Complex outer(Complex w) const;
  std::vector<Complex> outer_taylor(Complex w0, int degree) const;

  ConvexTarget target_;
  ReinhardtDomain domain_;
  int inner_degree_;
  double contraction_;
  std::uint64_t seed_;
  int degree_;
  TargetMap map_;
};

}  // namespace bohr
