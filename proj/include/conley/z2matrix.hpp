#pragma once

#include <cstdint>
#include <vector>

#include "conley/complex.hpp"
#include "conley/morse.hpp"
#include "conley/types.hpp"

namespace conley {

// Boundary matrix over Z2 in a filtered order. Columns are sorted vectors of
// row positions; column j optionally carries the chain (set of simplex ids)
// it currently represents, so that the column content always equals the
// boundary of that chain taken in K.
class FilteredMatrix {
public:
  // cols[j] = positions of the facets of order.order[j]; strictly upper
  // triangular by construction of the filtered order.
  static FilteredMatrix boundary(const SimplicialComplex& K, FilteredOrder order,
                                 bool track_chains);

  // Assembles a matrix directly (used when re-filtering a connection
  // matrix). `order` supplies position metadata; columns must be sorted.
  static FilteredMatrix assemble(FilteredOrder order, std::vector<std::vector<std::uint32_t>> cols,
                                 std::vector<std::vector<SimplexId>> chains);

  std::size_t size() const { return cols_.size(); }
  const std::vector<std::uint32_t>& col(std::uint32_t j) const { return cols_[j]; }
  std::uint32_t low(std::uint32_t j) const { return cols_[j].empty() ? kNoIndex : cols_[j].back(); }

  // Z2 column addition: col j ^= col s (and chain j ^= chain s).
  void add_column(std::uint32_t s, std::uint32_t j);

  // Chain bookkeeping alone; used when the column arithmetic happens in an
  // external workspace.
  void add_chain_only(std::uint32_t s, std::uint32_t j);

  // Overwrites column j wholesale (legacy reduction writes its workspace
  // back through this).
  void set_col(std::uint32_t j, std::vector<std::uint32_t> entries) { cols_[j] = std::move(entries); }

  bool is_homogeneous(std::uint32_t j) const {
    const std::uint32_t l = low(j);
    return l != kNoIndex && grading_[l] == grading_[j];
  }

  struct HomTarget {
    std::vector<std::uint32_t> homogeneous;  // J_h, ascending
    std::vector<std::uint32_t> targetable;   // J_t, ascending
  };
  HomTarget targetable_of() const;

  PosetId grading(std::uint32_t i) const { return grading_[i]; }
  std::uint32_t block(std::uint32_t i) const { return block_[i]; }
  std::int32_t dim(std::uint32_t i) const { return dims_[i]; }
  SimplexId simplex_at(std::uint32_t i) const { return order_.order[i]; }
  const FilteredOrder& order() const { return order_; }

  bool tracks_chains() const { return track_chains_; }
  const std::vector<SimplexId>& chain(std::uint32_t j) const { return chains_[j]; }
  std::vector<std::vector<SimplexId>> take_chains() { return std::move(chains_); }

private:
  FilteredOrder order_;
  std::vector<std::vector<std::uint32_t>> cols_;
  std::vector<PosetId> grading_;        // copied out of order_ for locality
  std::vector<std::uint32_t> block_;
  std::vector<std::int32_t> dims_;
  std::vector<std::vector<SimplexId>> chains_;
  bool track_chains_ = false;
};

// Checks the full invariant set and throws ValidationError on the first
// violation: sorted strictly-upper-triangular columns, non-decreasing blocks
// down each column, boundary grading (facet dimensions), dd = 0 through K
// (the K-boundary of each column's simplex set vanishes), and, when chains
// are tracked, sigma_j in chain[j] with boundary(chain[j]) = column j.
void validate_filtered_matrix(const FilteredMatrix& A, const SimplicialComplex& K);

// Plain-text dump: one "i j" pair per nonzero, preceded by a JSON header
// line describing order, grading and dimensions.
void dump_matrix(std::ostream& out, const FilteredMatrix& A);

}  // namespace conley
