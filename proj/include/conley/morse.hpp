#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "conley/complex.hpp"
#include "conley/mvf.hpp"
#include "conley/types.hpp"

namespace conley {

// Full digraph of the map F_V: an edge s -> t whenever t is in F_V(s),
// i.e. t is a proper face of s or shares s's vector. Quadratic in vector
// sizes; meant for inspection and small inputs. The decomposition below
// works on a sparse reachability-equivalent graph instead.
struct FvDigraph {
  std::vector<std::vector<SimplexId>> adj;  // sorted, no self loops
};
FvDigraph fv_digraph(const SimplicialComplex& K, const MultivectorField& V);

// Morse decomposition indexed by poset elements 0..count-1, numbered by
// the smallest simplex id in each Morse set. `below[p]` holds the direct
// condensation successors q (so q <_P p); <=_P is the reflexive-transitive
// closure. `linear_ext` lists poset ids minimal elements first.
struct MorseDecomposition {
  std::vector<std::vector<SimplexId>> sets;  // poset id -> sorted simplex ids
  std::vector<PosetId> set_of;               // simplex id -> poset id
  std::vector<std::vector<PosetId>> below;   // direct edges p -> q, q <_P p
  std::vector<PosetId> linear_ext;
  std::size_t count() const { return sets.size(); }
};

// The finest Morse decomposition: strongly connected components of the
// F_V digraph, with the default linear extension (Kahn's algorithm, ties
// broken by smallest simplex id, minimal sets first).
MorseDecomposition minimum_morse_decomposition(const SimplicialComplex& K,
                                               const MultivectorField& V);

// Same decomposition with a caller-chosen linear extension (validated).
MorseDecomposition with_linear_ext(const MorseDecomposition& md, std::vector<PosetId> ext);

// S is a Morse set iff every F_V path leaving S and returning stays in S.
bool is_morse_set(const SimplicialComplex& K, const MultivectorField& V,
                  std::span<const SimplexId> simplices);

// Dense reachability over the condensation: reaches(p, q) <=> q <=_P p.
class PosetReach {
public:
  explicit PosetReach(const MorseDecomposition& md);
  bool reaches(PosetId p, PosetId q) const {
    return (bits_[p * words_ + q / 64] >> (q % 64)) & 1u;
  }
  std::size_t count() const { return m_; }

private:
  std::size_t m_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// A linear order on all simplices: Morse sets laid out as contiguous blocks
// following `linear_ext`, dimensions non-decreasing inside each block. The
// associated boundary matrix is strictly upper triangular.
struct FilteredOrder {
  std::vector<SimplexId> order;          // position -> simplex id
  std::vector<std::uint32_t> position;   // simplex id -> position
  std::vector<PosetId> grading;          // position -> poset id
  std::vector<std::uint32_t> block;      // position -> rank of grading in linear_ext
  std::vector<std::int32_t> dims;        // position -> simplex dimension
  std::vector<PosetId> linear_ext;
  std::size_t size() const { return order.size(); }
};

// Default within-set order: (dimension, simplex id).
FilteredOrder filtered_order(const SimplicialComplex& K, const MorseDecomposition& md);

// `within[p]`, when nonempty, prescribes the layout of Morse set p; it must
// be a permutation of the set with non-decreasing dimensions, otherwise a
// ValidationError ("non-admissible within-set order") is thrown.
FilteredOrder filtered_order(const SimplicialComplex& K, const MorseDecomposition& md,
                             const std::vector<std::vector<SimplexId>>& within);

}  // namespace conley
