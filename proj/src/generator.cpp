#include "bohr/generator.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "bohr/functionals.hpp"

namespace bohr {

std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

TruncatedPowerSeries random_series(int dimension, int degree, std::uint64_t seed, std::uint64_t index,
                                   double decay) {
  auto rng = seeded_stream(seed, index);
  std::vector<Term> terms;
  for (int k = 0; k <= degree; ++k) {
    for_each_index_of_degree(dimension, k, [&](const MultiIndex& a) {
      const double u = uniform01(rng);
      const double theta = 2.0 * std::numbers::pi * uniform01(rng);
      terms.push_back({a, std::polar(u * std::pow(decay, k), theta)});
    });
  }
  return TruncatedPowerSeries(dimension, degree, std::move(terms));
}

namespace {

ConvexTarget map_source(const ConvexTarget& g) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&g.shape())) {
    Complex centroid{};
    for (auto v : poly->vertices) centroid += v;
    centroid /= static_cast<double>(poly->vertices.size());
    return Disk{centroid, hull_distance(g, centroid)};
  }
  if (g.is_whole_plane()) return Disk{{}, 1.0};
  return g;
}

Complex random_unit_disk_point(std::mt19937_64& rng) {
  const double radius = uniform01(rng);
  return std::polar(radius, 2.0 * std::numbers::pi * uniform01(rng));
}

TruncatedPowerSeries random_inner(std::mt19937_64& rng, const ReinhardtDomain& d, int inner_degree, int degree,
                                  std::string& kind) {
  const int n = d.dimension();
  std::vector<Term> terms;
  const int choice = static_cast<int>(3.0 * uniform01(rng));
  if (choice == 1) {
    kind = "coordinate";
    const int axis = static_cast<int>(n * uniform01(rng));
    terms.push_back({MultiIndex::unit(n, std::min(axis, n - 1)), Complex{1.0, 0.0}});
  } else if (choice == 2) {
    kind = "sum";
    for (int i = 0; i < n; ++i) terms.push_back({MultiIndex::unit(n, i), Complex{1.0, 0.0}});
  } else {
    kind = "sparse";
    const int count = 1 + static_cast<int>(4.0 * uniform01(rng));
    for (int t = 0; t < count; ++t) {
      const int k = 1 + std::min(inner_degree - 1, static_cast<int>(inner_degree * uniform01(rng)));
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      for (int unit = 0; unit < k; ++unit) {
        const int axis = std::min(n - 1, static_cast<int>(n * uniform01(rng)));
        ++e[static_cast<std::size_t>(axis)];
      }
      Complex c = random_unit_disk_point(rng);
      if (c == Complex{}) c = 1.0;
      terms.push_back({MultiIndex(e), c});
    }
  }
  TruncatedPowerSeries p(n, std::max(degree, inner_degree), std::move(terms));
  // sup_D |P| <= sum |p_a| sup_D |z^a| = 1 after this normalization
  const double norm = r2_norm(p, d, 1.0);
  return scaled(p, 1.0 / norm);
}

}  // namespace

AdmissibleGenerator::AdmissibleGenerator(ConvexTarget target, ReinhardtDomain domain, int inner_degree,
                                         double contraction, std::uint64_t seed, int degree)
    : target_(std::move(target)),
      domain_(domain),
      inner_degree_(inner_degree),
      contraction_(contraction),
      seed_(seed),
      degree_(degree),
      map_(disk_to_target_map(map_source(target_))) {
  if (inner_degree < 1) throw std::invalid_argument("generator: inner degree must be at least 1");
  if (!(contraction > 0.0 && contraction < 1.0)) throw std::domain_error("generator: contraction must lie in (0,1)");
  if (degree < inner_degree) throw std::invalid_argument("generator: degree below inner degree");
}

Complex AdmissibleGenerator::outer(Complex w) const { return map_(w); }

std::vector<Complex> AdmissibleGenerator::outer_taylor(Complex w0, int degree) const { return map_.taylor(w0, degree); }

AdmissibleSample AdmissibleGenerator::generate(std::uint64_t index) const {
  auto rng = seeded_stream(seed_, index);
  std::string kind;
  TruncatedPowerSeries inner = random_inner(rng, domain_, inner_degree_, degree_, kind);
  const double s = contraction_ * (0.5 + 0.5 * uniform01(rng));
  const double a_mod = 1.0 - std::pow(10.0, -3.0 * uniform01(rng));
  const Complex a = std::polar(a_mod, 2.0 * std::numbers::pi * uniform01(rng));

  const auto v = compose(disk_automorphism_taylor(a, Complex{}, degree_), scaled(inner, s), degree_);
  auto f = compose(outer_taylor(a, degree_), v, degree_);

  const double delta = hull_distance(target_, f.constant_term());
  if (std::isfinite(delta)) {
    const double rho = domain_.is_polydisk() ? 0.5 : 0.5 * std::pow(domain_.dimension(), -1.0 / domain_.p());
    f = f.with_tail(TailBound{slice_tail_bound(domain_.dimension(), degree_, delta, 0.5), rho});
  }

  char buf[160];
  std::snprintf(buf, sizeof buf, "index=%llu inner=%s s=%.6g a=%.6g%+.6gi", static_cast<unsigned long long>(index),
                kind.c_str(), s, a.real(), a.imag());
  return AdmissibleSample{std::move(f), std::move(inner), s, a, buf};
}

Complex AdmissibleGenerator::closed_form(const AdmissibleSample& sample, std::span<const Complex> z) const {
  return outer(disk_automorphism(sample.automorphism, sample.scale * eval(sample.inner, z)));
}

double AdmissibleGenerator::hull_distance_at_origin(const AdmissibleSample& sample) const {
  return hull_distance(target_, sample.series.constant_term());
}

}  // namespace bohr
