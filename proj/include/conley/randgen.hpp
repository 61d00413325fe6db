#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conley/mvf.hpp"

namespace conley {

// Seeded generator with a platform-independent bounded draw (std's
// distributions are not bit-stable across standard libraries; mt19937_64's
// raw stream is).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform integer in [0, n) by rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x, r;
    do {
      x = engine_();
      r = x % n;
    } while (x - r > std::uint64_t(0) - n);
    return r;
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

struct CoarsenResult {
  MultivectorField field;
  double achieved_p = 0;   // connection probability of the result
  double previous_p = 0;   // probability before the final merge
  std::uint64_t merges = 0;
};

// Repeatedly merges two uniformly drawn distinct live vectors (with
// convexity repair) until the connection probability reaches target_p.
// `validate_each` re-checks partition/convexity after every merge (tests).
CoarsenResult coarsen_to(const SimplicialComplex& K, MultivectorField field, double target_p,
                         std::uint64_t seed, bool validate_each = false);

// Benchmark complex families. All throw ValidationError on infeasible
// parameters.
SimplicialComplex full_simplex_complex(int dim);
SimplicialComplex triangle_soup_complex(std::uint32_t vertices, std::uint64_t triangles,
                                        std::uint64_t seed);
SimplicialComplex dense_graph_complex(std::uint32_t vertices, std::uint64_t edges,
                                      std::uint64_t seed);
SimplicialComplex mixed_complex(std::uint32_t vertices,
                                const std::vector<std::pair<int, std::uint64_t>>& dim_counts,
                                std::uint64_t seed);

// Dispatcher used by the CLI: kind in {full-simplex, triangle-soup,
// dense-graph, mixed}.
SimplicialComplex build_benchmark_complex(const std::string& kind, std::uint32_t vertices,
                                          std::uint64_t count, int dim,
                                          const std::vector<std::pair<int, std::uint64_t>>& dim_counts,
                                          std::uint64_t seed);

}  // namespace conley
