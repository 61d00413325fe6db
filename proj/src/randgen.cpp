#include "conley/randgen.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace conley {

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

// `count` distinct k-subsets of {0..n-1}. Rejection sampling for sparse
// requests, enumerate-and-shuffle when most subsets are wanted.
std::vector<std::vector<VertexId>> distinct_subsets(std::uint32_t n, std::uint32_t k,
                                                    std::uint64_t count, Rng& rng) {
  const std::uint64_t total = binom(n, k);
  if (count > total) throw ValidationError("requested more subsets than exist");
  std::vector<std::vector<VertexId>> out;
  out.reserve(count);
  if (count * 2 > total && total <= 20'000'000) {
    // Enumerate all subsets, partially Fisher-Yates shuffle, take a prefix.
    std::vector<std::vector<VertexId>> all;
    all.reserve(total);
    std::vector<VertexId> cur(k);
    for (std::uint32_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
      all.push_back(cur);
      int pos = static_cast<int>(k) - 1;
      while (pos >= 0 && cur[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++cur[pos];
      for (std::uint32_t t = pos + 1; t < k; ++t) cur[t] = cur[t - 1] + 1;
    }
    for (std::uint64_t t = 0; t < count; ++t) {
      const std::uint64_t pick = t + rng.below(all.size() - t);
      std::swap(all[t], all[pick]);
      out.push_back(all[t]);
    }
    return out;
  }
  // Sparse: draw sorted tuples and dedupe. Tuples of up to 3 vertices pack
  // into one word (vertices < 2^21); larger ones fall back to a tree set.
  std::unordered_set<std::uint64_t> seen;
  std::set<std::vector<VertexId>> seen_wide;
  std::vector<VertexId> pick(k);
  while (out.size() < count) {
    for (std::uint32_t t = 0; t < k; ++t) pick[t] = static_cast<VertexId>(rng.below(n));
    std::sort(pick.begin(), pick.end());
    if (std::adjacent_find(pick.begin(), pick.end()) != pick.end()) continue;
    bool fresh;
    if (k <= 3 && n < (1u << 21)) {
      std::uint64_t key = 0;
      for (VertexId v : pick) key = (key << 21) | v;
      fresh = seen.insert(key).second;
    } else {
      fresh = seen_wide.insert(pick).second;
    }
    if (fresh) out.push_back(pick);
  }
  return out;
}

}  // namespace

CoarsenResult coarsen_to(const SimplicialComplex& K, MultivectorField field, double target_p,
                         std::uint64_t seed, bool validate_each) {
  if (target_p < 0 || target_p > 1) throw ValidationError("target probability out of [0,1]");
  auto [num, den] = connection_ratio(field);
  const long double denom = static_cast<long double>(den);

  Rng rng(seed);
  MergeScratch scratch;
  std::vector<VectorId> live = field.live_ids();
  std::vector<std::uint32_t> live_pos(field.complex_size(), kNoIndex);
  for (std::uint32_t t = 0; t < live.size(); ++t) live_pos[live[t]] = t;

  auto validate = [&] {
    for (VectorId v : field.live_ids())
      if (!is_convex(K, field.members(v)))
        throw ValidationError("coarsening produced a non-convex vector");
  };

  CoarsenResult res{std::move(field), 0, 0, 0};
  res.previous_p = static_cast<double>(num) / static_cast<double>(den);

  while (static_cast<long double>(num) < static_cast<long double>(target_p) * denom) {
    if (live.size() < 2)
      throw ValidationError("target probability unreachable: one vector left");
    res.previous_p = static_cast<double>(num) / static_cast<double>(den);

    const std::uint64_t ia = rng.below(live.size());
    std::uint64_t ib = rng.below(live.size() - 1);
    if (ib >= ia) ++ib;
    const auto outcome =
        res.field.merge_in_place(K, live[ia], live[static_cast<std::size_t>(ib)], scratch);
    ++res.merges;

    num += static_cast<std::uint64_t>(outcome.new_size) * (outcome.new_size - 1);
    num -= static_cast<std::uint64_t>(outcome.survivor_old_size) *
           (outcome.survivor_old_size > 0 ? outcome.survivor_old_size - 1 : 0);
    for (const auto& [v, size] : outcome.absorbed) {
      num -= static_cast<std::uint64_t>(size) * (size - 1);
      // Swap-remove the retired id from the live list.
      const std::uint32_t pos = live_pos[v];
      live_pos[live.back()] = pos;
      live[pos] = live.back();
      live.pop_back();
      live_pos[v] = kNoIndex;
    }
    if (validate_each) validate();
  }
  res.achieved_p = static_cast<double>(num) / static_cast<double>(den);
  return res;
}

SimplicialComplex full_simplex_complex(int dim) {
  if (dim < 0 || dim > 24) throw ValidationError("full simplex dimension out of range");
  std::vector<VertexId> top(static_cast<std::size_t>(dim) + 1);
  for (std::size_t t = 0; t < top.size(); ++t) top[t] = static_cast<VertexId>(t);
  return SimplicialComplex::build({top});
}

SimplicialComplex triangle_soup_complex(std::uint32_t vertices, std::uint64_t triangles,
                                        std::uint64_t seed) {
  if (vertices < 3) throw ValidationError("triangle soup needs at least 3 vertices");
  if (triangles > binom(vertices, 3))
    throw ValidationError("more triangles requested than exist");
  Rng rng(seed);
  auto tris = distinct_subsets(vertices, 3, triangles, rng);
  // Always include every vertex and every edge: the soup sits on a complete
  // graph, which keeps the complex connected and the size predictable.
  std::vector<std::vector<VertexId>> input;
  for (VertexId v = 0; v < vertices; ++v) input.push_back({v});
  for (VertexId a = 0; a < vertices; ++a)
    for (VertexId b = a + 1; b < vertices; ++b) input.push_back({a, b});
  for (auto& t : tris) input.push_back(std::move(t));
  return SimplicialComplex::build(input);
}

SimplicialComplex dense_graph_complex(std::uint32_t vertices, std::uint64_t edges,
                                      std::uint64_t seed) {
  if (vertices < 2) throw ValidationError("graph needs at least 2 vertices");
  if (edges > binom(vertices, 2))
    throw ValidationError("more edges requested than exist: " + std::to_string(edges) + " > " +
                          std::to_string(binom(vertices, 2)));
  Rng rng(seed);
  auto es = distinct_subsets(vertices, 2, edges, rng);
  std::vector<std::vector<VertexId>> input;
  for (VertexId v = 0; v < vertices; ++v) input.push_back({v});
  for (auto& e : es) input.push_back(std::move(e));
  return SimplicialComplex::build(input);
}

SimplicialComplex mixed_complex(std::uint32_t vertices,
                                const std::vector<std::pair<int, std::uint64_t>>& dim_counts,
                                std::uint64_t seed) {
  if (vertices < 1) throw ValidationError("mixed complex needs vertices");
  Rng rng(seed);
  std::vector<std::vector<VertexId>> input;
  for (VertexId v = 0; v < vertices; ++v) input.push_back({v});
  for (const auto& [dim, count] : dim_counts) {
    if (dim < 0 || static_cast<std::uint32_t>(dim) + 1 > vertices)
      throw ValidationError("mixed complex: dimension " + std::to_string(dim) +
                            " too large for the vertex set");
    auto subs = distinct_subsets(vertices, static_cast<std::uint32_t>(dim) + 1, count, rng);
    for (auto& s : subs) input.push_back(std::move(s));
  }
  return SimplicialComplex::build(input);
}

SimplicialComplex build_benchmark_complex(const std::string& kind, std::uint32_t vertices,
                                          std::uint64_t count, int dim,
                                          const std::vector<std::pair<int, std::uint64_t>>& dim_counts,
                                          std::uint64_t seed) {
  if (kind == "full-simplex") return full_simplex_complex(dim);
  if (kind == "triangle-soup") return triangle_soup_complex(vertices, count, seed);
  if (kind == "dense-graph") return dense_graph_complex(vertices, count, seed);
  if (kind == "mixed") return mixed_complex(vertices, dim_counts, seed);
  throw ValidationError("unknown complex kind '" + kind + "'");
}

}  // namespace conley
