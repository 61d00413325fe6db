#include "conley/morse.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace conley {

namespace {

// Sparse digraph with the same reachability as the full F_V digraph:
// facet edges plus one directed cycle through each vector (the cycle makes
// the vector mutually reachable without quadratic fan-out).
std::vector<std::vector<SimplexId>> sparse_fv(const SimplicialComplex& K,
                                              const MultivectorField& V) {
  std::vector<std::vector<SimplexId>> adj(K.size());
  for (SimplexId s = 0; s < K.size(); ++s) {
    const auto& fs = K.facets(s);
    adj[s].assign(fs.begin(), fs.end());
  }
  for (VectorId v = 0; v < V.complex_size(); ++v) {
    if (!V.is_live(v)) continue;
    const auto& mem = V.members(v);
    if (mem.size() < 2) continue;
    for (std::size_t t = 0; t < mem.size(); ++t)
      adj[mem[t]].push_back(mem[(t + 1) % mem.size()]);
  }
  return adj;
}

// Iterative Tarjan; returns component id per node (ids in discovery order).
std::vector<std::uint32_t> tarjan_scc(const std::vector<std::vector<SimplexId>>& adj,
                                      std::uint32_t& scc_count) {
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  std::vector<std::uint32_t> index(n, kNoIndex), lowlink(n, 0), comp(n, kNoIndex);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  std::uint32_t next = 0;
  scc_count = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kNoIndex) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.v].size()) {
        std::uint32_t w = adj[f.v][f.edge++];
        if (index[w] == kNoIndex) {
          index[w] = lowlink[w] = next++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          for (;;) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = scc_count;
            if (w == f.v) break;
          }
          ++scc_count;
        }
        std::uint32_t v = f.v;
        call.pop_back();
        if (!call.empty()) lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
      }
    }
  }
  return comp;
}

std::vector<PosetId> default_linear_ext(const MorseDecomposition& md) {
  const std::size_t m = md.count();
  // p may be placed once everything strictly below it is placed.
  std::vector<std::uint32_t> pending(m);
  std::vector<std::vector<PosetId>> above(m);
  for (PosetId p = 0; p < m; ++p) {
    pending[p] = static_cast<std::uint32_t>(md.below[p].size());
    for (PosetId q : md.below[p]) above[q].push_back(p);
  }
  // Poset ids are numbered by smallest member simplex id, so a min-heap on
  // the id itself realizes the "smallest simplex id" tie-break.
  std::priority_queue<PosetId, std::vector<PosetId>, std::greater<>> ready;
  for (PosetId p = 0; p < m; ++p)
    if (pending[p] == 0) ready.push(p);
  std::vector<PosetId> ext;
  ext.reserve(m);
  while (!ready.empty()) {
    PosetId p = ready.top();
    ready.pop();
    ext.push_back(p);
    for (PosetId r : above[p])
      if (--pending[r] == 0) ready.push(r);
  }
  if (ext.size() != m) throw ValidationError("poset contains a cycle");
  return ext;
}

}  // namespace

FvDigraph fv_digraph(const SimplicialComplex& K, const MultivectorField& V) {
  FvDigraph G;
  G.adj.resize(K.size());
  for (SimplexId s = 0; s < K.size(); ++s) {
    std::vector<SimplexId> out = K.closure(s);
    const auto& mem = V.members(V.vector_of(s));
    out.insert(out.end(), mem.begin(), mem.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), s), out.end());
    G.adj[s] = std::move(out);
  }
  return G;
}

MorseDecomposition minimum_morse_decomposition(const SimplicialComplex& K,
                                               const MultivectorField& V) {
  if (V.complex_size() != K.size()) throw ValidationError("field does not match complex");
  const auto adj = sparse_fv(K, V);
  std::uint32_t scc_count = 0;
  const auto comp = tarjan_scc(adj, scc_count);

  // Renumber components by smallest member simplex id.
  std::vector<SimplexId> least(scc_count, kNoIndex);
  for (SimplexId s = 0; s < K.size(); ++s)
    least[comp[s]] = std::min(least[comp[s]], s);
  std::vector<std::uint32_t> rank(scc_count);
  {
    std::vector<std::uint32_t> by_least(scc_count);
    for (std::uint32_t c = 0; c < scc_count; ++c) by_least[c] = c;
    std::sort(by_least.begin(), by_least.end(),
              [&](std::uint32_t a, std::uint32_t b) { return least[a] < least[b]; });
    for (std::uint32_t r = 0; r < scc_count; ++r) rank[by_least[r]] = r;
  }

  MorseDecomposition md;
  md.sets.resize(scc_count);
  md.set_of.resize(K.size());
  for (SimplexId s = 0; s < K.size(); ++s) {
    md.set_of[s] = rank[comp[s]];
    md.sets[md.set_of[s]].push_back(s);  // ascending: s visited in order
  }

  md.below.resize(scc_count);
  for (SimplexId s = 0; s < K.size(); ++s)
    for (SimplexId t : adj[s])
      if (md.set_of[s] != md.set_of[t]) md.below[md.set_of[s]].push_back(md.set_of[t]);
  for (auto& b : md.below) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }

  md.linear_ext = default_linear_ext(md);
  return md;
}

MorseDecomposition with_linear_ext(const MorseDecomposition& md, std::vector<PosetId> ext) {
  const std::size_t m = md.count();
  if (ext.size() != m) throw ValidationError("linear extension has wrong length");
  std::vector<std::uint32_t> pos(m, kNoIndex);
  for (std::uint32_t i = 0; i < ext.size(); ++i) {
    if (ext[i] >= m || pos[ext[i]] != kNoIndex)
      throw ValidationError("linear extension is not a permutation of poset elements");
    pos[ext[i]] = i;
  }
  for (PosetId p = 0; p < m; ++p)
    for (PosetId q : md.below[p])
      if (pos[q] >= pos[p])
        throw ValidationError("not a linear extension: " + std::to_string(q) + " <_P " +
                              std::to_string(p) + " placed later");
  MorseDecomposition out = md;
  out.linear_ext = std::move(ext);
  return out;
}

bool is_morse_set(const SimplicialComplex& K, const MultivectorField& V,
                  std::span<const SimplexId> simplices) {
  const auto adj = sparse_fv(K, V);
  std::vector<std::vector<SimplexId>> radj(K.size());
  for (SimplexId s = 0; s < K.size(); ++s)
    for (SimplexId t : adj[s]) radj[t].push_back(s);

  auto bfs = [&](const std::vector<std::vector<SimplexId>>& g) {
    std::vector<char> mark(K.size(), 0);
    std::vector<SimplexId> stack;
    for (SimplexId s : simplices) {
      if (s >= K.size()) throw ValidationError("simplex id out of range");
      if (!mark[s]) {
        mark[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      SimplexId s = stack.back();
      stack.pop_back();
      for (SimplexId t : g[s])
        if (!mark[t]) {
          mark[t] = 1;
          stack.push_back(t);
        }
    }
    return mark;
  };
  const auto fwd = bfs(adj);
  const auto bwd = bfs(radj);

  std::vector<char> in(K.size(), 0);
  for (SimplexId s : simplices) in[s] = 1;
  for (SimplexId s = 0; s < K.size(); ++s)
    if (fwd[s] && bwd[s] && !in[s]) return false;
  return true;
}

PosetReach::PosetReach(const MorseDecomposition& md) {
  m_ = md.count();
  words_ = (m_ + 63) / 64;
  bits_.assign(m_ * words_, 0);
  // linear_ext is minimal-first, so all of p's direct successors are
  // finished before p comes up.
  for (PosetId p : md.linear_ext) {
    auto* row = &bits_[p * words_];
    row[p / 64] |= 1ull << (p % 64);
    for (PosetId q : md.below[p]) {
      const auto* qrow = &bits_[q * words_];
      for (std::size_t w = 0; w < words_; ++w) row[w] |= qrow[w];
    }
  }
}

namespace {

FilteredOrder build_order(const SimplicialComplex& K, const MorseDecomposition& md,
                          const std::vector<std::vector<SimplexId>>* within) {
  // Reject stale decompositions instead of producing a garbled order.
  if (md.set_of.size() != K.size()) throw ValidationError("decomposition does not match complex");
  FilteredOrder fo;
  fo.linear_ext = md.linear_ext;
  fo.order.reserve(K.size());
  fo.grading.reserve(K.size());
  fo.block.reserve(K.size());
  fo.dims.reserve(K.size());
  fo.position.assign(K.size(), kNoIndex);

  std::vector<SimplexId> layout;
  for (std::uint32_t b = 0; b < md.linear_ext.size(); ++b) {
    const PosetId p = md.linear_ext[b];
    const auto& set = md.sets[p];
    if (within != nullptr && p < within->size() && !(*within)[p].empty()) {
      layout = (*within)[p];
      if (layout.size() != set.size())
        throw ValidationError("non-admissible within-set order: wrong length for set " +
                              std::to_string(p));
      auto sorted = layout;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != set)
        throw ValidationError("non-admissible within-set order: not a permutation of set " +
                              std::to_string(p));
      for (std::size_t t = 1; t < layout.size(); ++t)
        if (K.dim(layout[t - 1]) > K.dim(layout[t]))
          throw ValidationError("non-admissible within-set order: dimension decreases in set " +
                                std::to_string(p));
    } else {
      layout = set;
      std::stable_sort(layout.begin(), layout.end(),
                       [&](SimplexId a, SimplexId b2) { return K.dim(a) < K.dim(b2); });
      // Members are ascending by id, so the stable sort yields (dim, id).
    }
    for (SimplexId s : layout) {
      fo.position[s] = static_cast<std::uint32_t>(fo.order.size());
      fo.order.push_back(s);
      fo.grading.push_back(p);
      fo.block.push_back(b);
      fo.dims.push_back(K.dim(s));
    }
  }
  if (fo.order.size() != K.size()) throw ValidationError("order does not cover the complex");
  return fo;
}

}  // namespace

FilteredOrder filtered_order(const SimplicialComplex& K, const MorseDecomposition& md) {
  return build_order(K, md, nullptr);
}

FilteredOrder filtered_order(const SimplicialComplex& K, const MorseDecomposition& md,
                             const std::vector<std::vector<SimplexId>>& within) {
  return build_order(K, md, &within);
}

}  // namespace conley
