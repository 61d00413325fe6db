#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "conley/types.hpp"

namespace conley {

// Finite abstract simplicial complex, closed under taking faces.
// Simplices get dense ids 0..size-1 assigned by (dimension, lexicographic
// vertex list); in particular the id of a vertex simplex equals its rank
// among vertex numbers.
class SimplicialComplex {
public:
  struct Simplex {
    std::vector<VertexId> vertices;  // sorted, distinct
    int dim() const { return static_cast<int>(vertices.size()) - 1; }
  };

  // Builds the face closure of the given simplices. Entries are vertex
  // lists (normalized by sorting/deduplication); duplicates after
  // normalization are silently merged. Throws ValidationError on an empty
  // list, an empty entry, or a simplex with more than 25 vertices.
  static SimplicialComplex build(const std::vector<std::vector<VertexId>>& simplices);

  std::size_t size() const { return simplices_.size(); }
  const Simplex& simplex(SimplexId s) const { return simplices_.at(s); }
  int dim(SimplexId s) const { return simplices_.at(s).dim(); }
  int max_dim() const { return max_dim_; }

  // Codimension-1 faces, sorted by id. For a vertex this is empty.
  const std::vector<SimplexId>& facets(SimplexId s) const { return facets_.at(s); }
  // Codimension-1 cofaces, sorted by id.
  const std::vector<SimplexId>& cofacets(SimplexId s) const { return cofacets_.at(s); }

  // The Z2 boundary of an elementary chain is exactly its facet set.
  const std::vector<SimplexId>& boundary_chain(SimplexId s) const { return facets_.at(s); }

  // Id lookup by vertex list (normalized internally).
  std::optional<SimplexId> find(std::vector<VertexId> vertices) const;

  // Union of all faces of the seed simplices (including them), sorted.
  std::vector<SimplexId> closure(std::span<const SimplexId> seed) const;
  std::vector<SimplexId> closure(SimplexId s) const;

  // Union of all cofaces (simplices having a seed member as a face), sorted.
  std::vector<SimplexId> star(std::span<const SimplexId> seed) const;

private:
  struct VertexListHash {
    std::size_t operator()(const std::vector<VertexId>& v) const;
  };

  std::vector<Simplex> simplices_;
  std::vector<std::vector<SimplexId>> facets_;
  std::vector<std::vector<SimplexId>> cofacets_;
  std::unordered_map<std::vector<VertexId>, SimplexId, VertexListHash> index_;
  int max_dim_ = -1;
};

}  // namespace conley
