#include "conley/complex.hpp"

#include <algorithm>

namespace conley {

std::size_t SimplicialComplex::VertexListHash::operator()(const std::vector<VertexId>& v) const {
  // FNV-1a over the vertex words.
  std::uint64_t h = 1469598103934665603ull;
  for (VertexId x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

namespace {

std::vector<VertexId> normalize(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

SimplicialComplex SimplicialComplex::build(const std::vector<std::vector<VertexId>>& simplices) {
  if (simplices.empty()) throw ValidationError("empty complex");

  std::unordered_map<std::vector<VertexId>, SimplexId, VertexListHash> seen;
  std::vector<std::vector<VertexId>> all;
  std::vector<VertexId> subset;
  for (const auto& raw : simplices) {
    std::vector<VertexId> top = normalize(raw);
    if (top.empty()) throw ValidationError("empty simplex in input");
    if (top.size() > 25) throw ValidationError("simplex dimension too large (max 24)");
    // Enumerate every nonempty subset of the vertex list.
    const std::uint32_t k = static_cast<std::uint32_t>(top.size());
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      subset.clear();
      for (std::uint32_t b = 0; b < k; ++b)
        if (mask & (1u << b)) subset.push_back(top[b]);
      if (seen.emplace(subset, 0).second) all.push_back(subset);
    }
  }

  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  SimplicialComplex K;
  K.simplices_.reserve(all.size());
  for (SimplexId id = 0; id < all.size(); ++id) {
    K.index_[all[id]] = id;
    K.max_dim_ = std::max(K.max_dim_, static_cast<int>(all[id].size()) - 1);
    K.simplices_.push_back(Simplex{std::move(all[id])});
  }

  K.facets_.resize(K.size());
  K.cofacets_.resize(K.size());
  std::vector<VertexId> face;
  for (SimplexId id = 0; id < K.size(); ++id) {
    const auto& verts = K.simplices_[id].vertices;
    if (verts.size() < 2) continue;
    auto& fs = K.facets_[id];
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      face.clear();
      for (std::size_t t = 0; t < verts.size(); ++t)
        if (t != drop) face.push_back(verts[t]);
      fs.push_back(K.index_.at(face));
    }
    std::sort(fs.begin(), fs.end());
    for (SimplexId f : fs) K.cofacets_[f].push_back(id);
  }
  // Cofacet lists come out sorted because ids are visited in order.
  return K;
}

std::optional<SimplexId> SimplicialComplex::find(std::vector<VertexId> vertices) const {
  auto it = index_.find(normalize(std::move(vertices)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<SimplexId> SimplicialComplex::closure(std::span<const SimplexId> seed) const {
  std::vector<char> mark(size(), 0);
  std::vector<SimplexId> stack, out;
  for (SimplexId s : seed) {
    if (s >= size()) throw ValidationError("simplex id out of range");
    if (!mark[s]) {
      mark[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    SimplexId s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (SimplexId f : facets_[s])
      if (!mark[f]) {
        mark[f] = 1;
        stack.push_back(f);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SimplexId> SimplicialComplex::closure(SimplexId s) const {
  return closure(std::span<const SimplexId>(&s, 1));
}

std::vector<SimplexId> SimplicialComplex::star(std::span<const SimplexId> seed) const {
  std::vector<char> mark(size(), 0);
  std::vector<SimplexId> stack, out;
  for (SimplexId s : seed) {
    if (s >= size()) throw ValidationError("simplex id out of range");
    if (!mark[s]) {
      mark[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    SimplexId s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (SimplexId c : cofacets_[s])
      if (!mark[c]) {
        mark[c] = 1;
        stack.push_back(c);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace conley
