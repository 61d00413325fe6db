#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "conley/complex.hpp"
#include "conley/types.hpp"

namespace conley {

// Convexity in the face poset: S is convex when every simplex between two
// members (face-wise) is itself a member. Equivalently cl(S) n star(S) = S.
bool is_convex(const SimplicialComplex& K, std::span<const SimplexId> simplices);

// Reusable scratch space for the merge machinery; callers doing many merges
// (coarsening, discretization) keep one instance alive.
struct MergeScratch {
  std::vector<std::uint32_t> down_mark, up_mark;
  std::uint32_t epoch = 0;
  std::vector<SimplexId> stack;
};

// A combinatorial multivector field: a partition of the complex into convex
// sets ("vectors"). Vector ids are stable; a merge retires the absorbed ids
// and keeps the smallest participating id.
class MultivectorField {
public:
  // One singleton vector per simplex; vector ids coincide with simplex ids.
  static MultivectorField singletons(const SimplicialComplex& K);

  // Validates a partition into convex sets. Throws ValidationError naming
  // the offending vector or simplex.
  static MultivectorField from_vectors(const SimplicialComplex& K,
                                       const std::vector<std::vector<SimplexId>>& vectors);

  VectorId vector_of(SimplexId s) const { return vector_of_.at(s); }
  const std::vector<SimplexId>& members(VectorId v) const { return members_.at(v); }
  bool is_live(VectorId v) const { return v < members_.size() && !members_[v].empty(); }
  std::size_t vector_count() const { return live_count_; }
  std::size_t complex_size() const { return vector_of_.size(); }
  std::vector<VectorId> live_ids() const;

  // Merge two distinct vectors and repair convexity by absorbing whole
  // vectors until the least convex fixpoint is reached. Returns the new
  // field; the original is untouched.
  MultivectorField merge_vectors(const SimplicialComplex& K, VectorId a, VectorId b) const;

  struct MergeOutcome {
    VectorId survivor = kNoIndex;
    // (retired vector id, its size before the merge), ascending by id.
    std::vector<std::pair<VectorId, std::uint32_t>> absorbed;
    std::uint32_t survivor_old_size = 0;
    std::uint32_t new_size = 0;
  };

  // In-place variant used by generators; `scratch` may be reused across calls.
  MergeOutcome merge_in_place(const SimplicialComplex& K, VectorId a, VectorId b,
                              MergeScratch& scratch);

private:
  std::vector<VectorId> vector_of_;              // simplex -> vector id
  std::vector<std::vector<SimplexId>> members_;  // vector id -> sorted members; empty = retired
  std::size_t live_count_ = 0;
};

// F_V(s) = [s]_V u cl(s), sorted.
std::vector<SimplexId> fv(const SimplicialComplex& K, const MultivectorField& V, SimplexId s);

// (sum over vectors of |v|(|v|-1), n(n-1)). Throws ValidationError if n < 2.
std::pair<std::uint64_t, std::uint64_t> connection_ratio(const MultivectorField& V);
double connection_probability(const MultivectorField& V);

}  // namespace conley
