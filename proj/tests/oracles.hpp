#pragma once

// Independent test-side implementations used to cross-check the library:
// brute-force interval enumeration, dense Z2 elimination, full path search.
// Everything here favors obvious correctness over speed.

#include <cstdint>
#include <optional>
#include <vector>

#include "conley/discretize.hpp"
#include "conley/morse.hpp"
#include "conley/mvf.hpp"
#include "conley/reduce.hpp"

namespace oracle {

using namespace conley;

// Convexity by enumerating every interval [s, t] inside S and checking that
// all simplices between belong to S.
bool is_convex(const SimplicialComplex& K, const std::vector<SimplexId>& S);

// Naive merge-to-fixpoint: union the two vectors, then repeatedly absorb the
// whole vector of any simplex lying in an interval of the current set.
// Returns the sorted member list of the merged vector.
std::vector<SimplexId> merge_fixpoint(const SimplicialComplex& K, const MultivectorField& V,
                                      VectorId a, VectorId b);

// Full F_V edge set, straight from the definition.
std::vector<std::vector<SimplexId>> fv_edges(const SimplicialComplex& K,
                                             const MultivectorField& V);

// Simplices reachable from `from` by F_V paths (including the seeds).
std::vector<char> reachable(const std::vector<std::vector<SimplexId>>& edges,
                            const std::vector<SimplexId>& from);

bool is_morse_set(const SimplicialComplex& K, const MultivectorField& V,
                  const std::vector<SimplexId>& S);

// Rank of a Z2 matrix given as columns of row indices.
std::size_t dense_rank(const std::vector<std::vector<std::uint32_t>>& cols, std::size_t rows);

// Betti numbers of a graded Z2 complex: dims[i] grades index i, cols[j]
// lists the boundary indices of j (all of dimension dims[j]-1).
std::vector<std::size_t> betti(const std::vector<std::int32_t>& dims,
                               const std::vector<std::vector<std::uint32_t>>& cols);

std::vector<std::size_t> betti_complex(const SimplicialComplex& K);
std::vector<std::size_t> betti_connection(const ConnectionMatrix& cm);

// rank of the leading l x l block of A for every l = 0..n; positions beyond
// column l are ignored (upper triangular input keeps rows < l too).
std::vector<std::size_t> prefix_ranks(const FilteredMatrix& A);

// Downset sizes |union of Morse sets at or below p|, via full path search.
std::vector<std::size_t> downset_sizes(const SimplicialComplex& K, const MultivectorField& V,
                                       const MorseDecomposition& md);

// Exhaustive search for a permutation R with R^T S R = S'. Matrices as
// dense 0/1; feasible for n <= 8.
bool permutation_equivalent(const std::vector<std::vector<std::uint32_t>>& s_cols,
                            const std::vector<std::vector<std::uint32_t>>& t_cols,
                            std::size_t n);

// Angle-based reimplementation of the sector query.
std::optional<SimplexId> sector(const GridComplex& G, VertexId v, Vec2 dir, double eps);

}  // namespace oracle
