#include "fixtures.hpp"

#include <algorithm>

namespace fx {

SimplicialComplex annulus_complex() {
  return SimplicialComplex::build({{0, 1, 2}, {0, 2, 3}});
}

MultivectorField annulus_field(const SimplicialComplex& K) {
  return MultivectorField::from_vectors(
      K, {{0, 4}, {1, 7}, {2, 8}, {3, 6}, {5}, {9}, {10}});
}

SimplicialComplex triangle_complex() { return SimplicialComplex::build({{0, 1, 2}}); }

SimplicialComplex fan_complex() { return SimplicialComplex::build({{0, 1, 3}, {0, 2}}); }

MultivectorField fan_field(const SimplicialComplex& K) {
  return MultivectorField::from_vectors(K, {{0}, {1}, {2}, {3}, {4}, {5}, {6, 7, 8}});
}

Instance random_instance(std::uint64_t seed) {
  Rng rng(seed);
  std::uint32_t v = 6 + static_cast<std::uint32_t>(rng.below(5));
  std::uint64_t e = v + rng.below(v * (v - 1) / 2 - v + 1);
  std::uint64_t t = 1 + rng.below(2 * v);
  SimplicialComplex K =
      mixed_complex(v, {{1, e}, {2, t}, {3, 1 + rng.below(3)}}, rng.raw());
  double p = 0.02 + 0.2 * rng.unit();
  auto co = coarsen_to(K, MultivectorField::singletons(K), p, rng.raw());
  return {std::move(K), std::move(co.field)};
}

std::vector<PosetId> random_linear_ext(const MorseDecomposition& md, Rng& rng) {
  std::size_t m = md.count();
  std::vector<std::uint32_t> pending(m, 0);
  std::vector<std::vector<PosetId>> above(m);
  for (PosetId p = 0; p < m; ++p)
    for (PosetId q : md.below[p]) {
      ++pending[p];
      above[q].push_back(p);
    }
  std::vector<PosetId> ready, ext;
  for (PosetId p = 0; p < m; ++p)
    if (pending[p] == 0) ready.push_back(p);
  while (!ready.empty()) {
    std::size_t k = rng.below(ready.size());
    PosetId p = ready[k];
    ready[k] = ready.back();
    ready.pop_back();
    ext.push_back(p);
    for (PosetId q : above[p])
      if (--pending[q] == 0) ready.push_back(q);
  }
  return ext;
}

LyapunovFunction random_lyapunov(const MorseDecomposition& md, Rng& rng) {
  PosetReach reach(md);
  LyapunovFunction f;
  f.values.assign(md.count(), 0);
  for (PosetId p : md.linear_ext) {
    double lo = 0;
    for (PosetId q = 0; q < md.count(); ++q)
      if (q != p && reach.reaches(p, q)) lo = std::max(lo, f.values[q]);
    // Ties with probability ~1/3 keep the triangular order honest under
    // stable tie-breaking.
    f.values[p] = rng.below(3) == 0 ? lo : lo + 1 + static_cast<double>(rng.below(4));
  }
  return f;
}

}  // namespace fx
