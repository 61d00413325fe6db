#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conley/z2matrix.hpp"

namespace conley {

// Connection matrix extracted from a reduced filtered matrix: the submatrix
// on indices that are neither homogeneous columns nor targetable rows.
// Columns use local indices into `kept`.
struct ConnectionMatrix {
  std::vector<std::uint32_t> kept;       // source positions, ascending
  std::vector<SimplexId> simplices;      // kept -> representing simplex id
  std::vector<PosetId> grading;          // kept -> poset element
  std::vector<std::int32_t> dims;        // kept -> dimension
  std::vector<std::vector<std::uint32_t>> cols;  // local row indices, sorted
  std::vector<std::vector<SimplexId>> basis_chains;  // kept -> chain (may be empty)
  std::vector<PosetId> linear_ext;
  std::size_t size() const { return kept.size(); }
};

struct ReduceStats {
  std::uint64_t column_additions = 0;
  std::uint64_t row_additions = 0;
};

class Deadline {
public:
  Deadline() = default;
  static Deadline after(double seconds) {
    Deadline d;
    d.at_ = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(seconds));
    d.armed_ = true;
    return d;
  }
  bool expired() const { return armed_ && std::chrono::steady_clock::now() > at_; }

private:
  std::chrono::steady_clock::time_point at_{};
  bool armed_ = false;
};

struct ReduceOptions {
  // Assert that no column ever turns homogeneous during the run (columns
  // may only lose homogeneity). Used by the test suites.
  bool verify_no_homogenization = false;
  Deadline deadline;
};

struct ReduceResult {
  FilteredMatrix matrix;        // A_out
  ConnectionMatrix connection;  // extraction of A_out
  ReduceStats stats;
};

// Single-pass persistence-like reduction: columns left to right; inside a
// column, entries top-down; an entry at row i is cancelled by adding the
// earlier homogeneous column whose low is i, if one exists. Only
// left-to-right column additions, no row operations.
ReduceResult conmat(FilteredMatrix A, const ReduceOptions& opt = {});

// Legacy reduction: same scan, but the source may be any other homogeneous
// column with that low (also to the right), the smallest index wins, and
// every column addition is mirrored by a row addition (row j into row s).
ReduceResult connectmat(FilteredMatrix A, const ReduceOptions& opt = {});

// Standard persistence reduction ignoring homogeneity: after it, every
// nonzero column has a unique low.
FilteredMatrix complete_reduction(FilteredMatrix A, const Deadline& deadline = {});

struct ReducedReport {
  bool r1 = false;  // low restricted to homogeneous columns is injective
  bool r2 = false;  // no index is both homogeneous and targetable
  bool r3 = false;  // no entry sits on the low of an earlier homogeneous column
  bool all() const { return r1 && r2 && r3; }
};
ReducedReport check_reduced(const FilteredMatrix& A);

ConnectionMatrix extract_connection(const FilteredMatrix& A);

// Refiles a connection matrix as a FilteredMatrix under the given linear
// extension of its poset (kept elements stay in their relative order inside
// each block, which keeps dimensions monotone).
FilteredMatrix matrix_from_connection(const ConnectionMatrix& cm,
                                      const std::vector<PosetId>& linear_ext);

// Entrywise comparison under the correspondence induced by representing
// simplex ids. False (with a human-readable witness) when the kept sets
// differ or any entry differs.
bool morse_fixed_compare(const ConnectionMatrix& a, const ConnectionMatrix& b,
                         std::string* witness = nullptr);

// Squared-zero, strict filtration by <=_P, boundary grading, sortedness.
// Throws ValidationError on the first violation.
void validate_connection_matrix(const ConnectionMatrix& cm, const PosetReach& reach);

// Betti numbers (index 0..max dim) via complete reduction.
std::vector<std::size_t> betti_numbers(const ConnectionMatrix& cm);
std::vector<std::size_t> betti_numbers(const SimplicialComplex& K);

}  // namespace conley
