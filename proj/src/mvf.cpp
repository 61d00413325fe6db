#include "conley/mvf.hpp"

#include <algorithm>
#include <string>

namespace conley {

bool is_convex(const SimplicialComplex& K, std::span<const SimplexId> simplices) {
  // S is convex iff cl(S) n star(S) contains nothing outside S: any witness
  // m in the intersection sits between some member face-pair.
  std::vector<char> in(K.size(), 0), down(K.size(), 0), up(K.size(), 0);
  for (SimplexId s : simplices) {
    if (s >= K.size()) throw ValidationError("simplex id out of range");
    in[s] = 1;
  }
  std::vector<SimplexId> stack(simplices.begin(), simplices.end());
  for (SimplexId s : stack) down[s] = 1;
  while (!stack.empty()) {
    SimplexId s = stack.back();
    stack.pop_back();
    for (SimplexId f : K.facets(s))
      if (!down[f]) {
        down[f] = 1;
        stack.push_back(f);
      }
  }
  stack.assign(simplices.begin(), simplices.end());
  for (SimplexId s : stack) up[s] = 1;
  while (!stack.empty()) {
    SimplexId s = stack.back();
    stack.pop_back();
    if (down[s] && !in[s]) return false;
    for (SimplexId c : K.cofacets(s))
      if (!up[c]) {
        up[c] = 1;
        stack.push_back(c);
      }
  }
  return true;
}

MultivectorField MultivectorField::singletons(const SimplicialComplex& K) {
  MultivectorField V;
  V.vector_of_.resize(K.size());
  V.members_.resize(K.size());
  for (SimplexId s = 0; s < K.size(); ++s) {
    V.vector_of_[s] = s;
    V.members_[s] = {s};
  }
  V.live_count_ = K.size();
  return V;
}

MultivectorField MultivectorField::from_vectors(const SimplicialComplex& K,
                                                const std::vector<std::vector<SimplexId>>& vectors) {
  MultivectorField V;
  V.vector_of_.assign(K.size(), kNoIndex);
  V.members_.resize(vectors.size());
  for (VectorId v = 0; v < vectors.size(); ++v) {
    if (vectors[v].empty()) throw ValidationError("empty vector " + std::to_string(v));
    auto mem = vectors[v];
    std::sort(mem.begin(), mem.end());
    if (std::adjacent_find(mem.begin(), mem.end()) != mem.end())
      throw ValidationError("duplicate simplex in vector " + std::to_string(v));
    for (SimplexId s : mem) {
      if (s >= K.size()) throw ValidationError("simplex id out of range in vector " + std::to_string(v));
      if (V.vector_of_[s] != kNoIndex)
        throw ValidationError("partition violated: simplex " + std::to_string(s) + " covered twice");
      V.vector_of_[s] = v;
    }
    if (!is_convex(K, mem)) throw ValidationError("convexity violated in vector " + std::to_string(v));
    V.members_[v] = std::move(mem);
  }
  for (SimplexId s = 0; s < K.size(); ++s)
    if (V.vector_of_[s] == kNoIndex)
      throw ValidationError("partition violated: simplex " + std::to_string(s) + " uncovered");
  V.live_count_ = vectors.size();
  return V;
}

std::vector<VectorId> MultivectorField::live_ids() const {
  std::vector<VectorId> out;
  out.reserve(live_count_);
  for (VectorId v = 0; v < members_.size(); ++v)
    if (!members_[v].empty()) out.push_back(v);
  return out;
}

MultivectorField MultivectorField::merge_vectors(const SimplicialComplex& K, VectorId a,
                                                 VectorId b) const {
  MultivectorField out = *this;
  MergeScratch scratch;
  out.merge_in_place(K, a, b, scratch);
  return out;
}

MultivectorField::MergeOutcome MultivectorField::merge_in_place(const SimplicialComplex& K,
                                                                VectorId a, VectorId b,
                                                                MergeScratch& scratch) {
  if (!is_live(a) || !is_live(b)) throw ValidationError("merge of a retired vector id");
  if (a == b) throw ValidationError("merge requires two distinct vectors");

  MergeOutcome outcome;
  outcome.survivor = std::min(a, b);
  const VectorId other = std::max(a, b);
  outcome.survivor_old_size = static_cast<std::uint32_t>(members_[outcome.survivor].size());
  outcome.absorbed.emplace_back(other, static_cast<std::uint32_t>(members_[other].size()));

  auto absorb = [&](VectorId v) {
    auto& w = members_[outcome.survivor];
    for (SimplexId s : members_[v]) {
      vector_of_[s] = outcome.survivor;
      w.push_back(s);
    }
    members_[v].clear();
    members_[v].shrink_to_fit();
    --live_count_;
  };
  absorb(other);

  if (scratch.down_mark.size() < K.size()) {
    scratch.down_mark.assign(K.size(), 0);
    scratch.up_mark.assign(K.size(), 0);
    scratch.epoch = 0;
  }

  // Saturate: absorb every vector meeting cl(W) n star(W) until W is convex.
  // The least convex fixpoint is unique, so the absorption order is
  // immaterial; we sweep whole rounds for cache-friendliness.
  std::vector<VectorId> need;
  for (;;) {
    const std::uint32_t e = ++scratch.epoch;
    auto& W = members_[outcome.survivor];

    auto sweep = [&](std::vector<std::uint32_t>& mark, auto neighbors) {
      scratch.stack.assign(W.begin(), W.end());
      for (SimplexId s : scratch.stack) mark[s] = e;
      while (!scratch.stack.empty()) {
        SimplexId s = scratch.stack.back();
        scratch.stack.pop_back();
        for (SimplexId t : neighbors(s))
          if (mark[t] != e) {
            mark[t] = e;
            scratch.stack.push_back(t);
          }
      }
    };
    sweep(scratch.down_mark, [&](SimplexId s) -> const std::vector<SimplexId>& { return K.facets(s); });
    sweep(scratch.up_mark, [&](SimplexId s) -> const std::vector<SimplexId>& { return K.cofacets(s); });

    need.clear();
    for (SimplexId s = 0; s < K.size(); ++s)
      if (scratch.down_mark[s] == e && scratch.up_mark[s] == e && vector_of_[s] != outcome.survivor)
        need.push_back(vector_of_[s]);
    std::sort(need.begin(), need.end());
    need.erase(std::unique(need.begin(), need.end()), need.end());
    if (need.empty()) break;
    for (VectorId v : need) {
      outcome.absorbed.emplace_back(v, static_cast<std::uint32_t>(members_[v].size()));
      absorb(v);
    }
  }

  auto& W = members_[outcome.survivor];
  std::sort(W.begin(), W.end());
  outcome.new_size = static_cast<std::uint32_t>(W.size());
  std::sort(outcome.absorbed.begin(), outcome.absorbed.end());
  return outcome;
}

std::vector<SimplexId> fv(const SimplicialComplex& K, const MultivectorField& V, SimplexId s) {
  std::vector<SimplexId> out = K.closure(s);
  const auto& mem = V.members(V.vector_of(s));
  out.insert(out.end(), mem.begin(), mem.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<std::uint64_t, std::uint64_t> connection_ratio(const MultivectorField& V) {
  const std::uint64_t n = V.complex_size();
  if (n < 2) throw ValidationError("connection probability needs at least two simplices");
  std::uint64_t num = 0;
  for (VectorId v = 0; v < V.complex_size(); ++v) {
    if (!V.is_live(v)) continue;
    const std::uint64_t k = V.members(v).size();
    num += k * (k - 1);
  }
  return {num, n * (n - 1)};
}

double connection_probability(const MultivectorField& V) {
  auto [num, den] = connection_ratio(V);
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace conley
