#include "conley/reduce.hpp"

#include <algorithm>
#include <set>

namespace conley {

namespace {

void check_deadline(const Deadline& d) {
  if (d.expired()) throw TimeoutError("reduction exceeded its deadline");
}

struct HomogenizationGuard {
  // Tracks per-column homogeneity and objects when a column gains it.
  const FilteredMatrix& A;
  std::vector<char> hom;
  explicit HomogenizationGuard(const FilteredMatrix& a) : A(a) {
    hom.resize(A.size());
    for (std::uint32_t j = 0; j < A.size(); ++j) hom[j] = A.is_homogeneous(j);
  }
  void recheck(std::uint32_t j) {
    const bool now = A.is_homogeneous(j);
    if (now && !hom[j])
      throw ValidationError("non-homogeneous column " + std::to_string(j) +
                            " became homogeneous");
    hom[j] = now;
  }
};

}  // namespace

ReduceResult conmat(FilteredMatrix A, const ReduceOptions& opt) {
  const std::uint32_t n = static_cast<std::uint32_t>(A.size());
  // owner[i] = processed homogeneous column whose low is i. Homogeneous
  // columns never change once processed (additions only target the current
  // column), so the map is append-only; a second claim on a row would break
  // reducedness R1 and is reported as an internal error.
  std::vector<std::uint32_t> owner(n, kNoIndex);
  ReduceStats stats;
  std::optional<HomogenizationGuard> guard;
  if (opt.verify_no_homogenization) guard.emplace(A);

  for (std::uint32_t j = 0; j < n; ++j) {
    check_deadline(opt.deadline);
    // Scan entries from the low upward; `scan` is the count of entries not
    // yet inspected, all of them below every inspected row.
    std::size_t scan = A.col(j).size();
    while (scan > 0) {
      const std::uint32_t i = A.col(j)[scan - 1];
      const std::uint32_t s = owner[i];
      if (s == kNoIndex) {
        --scan;
        continue;
      }
      if (s >= j) throw ValidationError("internal: right-to-left addition attempted");
      A.add_column(s, j);
      ++stats.column_additions;
      if (guard) guard->recheck(j);
      // Entries at rows > i were already inspected and are untouched (the
      // source column lives entirely at rows <= i); resume below row i.
      const auto& col = A.col(j);
      scan = std::lower_bound(col.begin(), col.end(), i) - col.begin();
    }
    if (A.is_homogeneous(j)) {
      const std::uint32_t l = A.low(j);
      if (owner[l] != kNoIndex)
        throw ValidationError("internal: two homogeneous columns share low " + std::to_string(l));
      owner[l] = j;
    }
  }

  ReduceResult res{std::move(A), {}, stats};
  res.connection = extract_connection(res.matrix);
  return res;
}

namespace {

// Row/column workspace for the legacy reduction. Row additions are realized
// as column operations on the transposed companion: both orientations keep
// sorted support vectors, lows are maintained incrementally, and a per-row
// index of columns having that low serves the candidate lookups.
class RowColWorkspace {
public:
  explicit RowColWorkspace(const FilteredMatrix& A)
      : n_(static_cast<std::uint32_t>(A.size())), rows_(n_), low_(n_, kNoIndex), with_low_(n_) {
    cols_.reserve(n_);
    for (std::uint32_t j = 0; j < n_; ++j) {
      cols_.push_back(A.col(j));
      for (std::uint32_t i : cols_[j]) rows_[i].push_back(j);
      if (!cols_[j].empty()) {
        low_[j] = cols_[j].back();
        with_low_[low_[j]].insert(j);
      }
    }
  }

  const std::vector<std::uint32_t>& col(std::uint32_t j) const { return cols_[j]; }
  const std::vector<std::uint32_t>& row(std::uint32_t i) const { return rows_[i]; }
  std::uint32_t low(std::uint32_t j) const { return low_[j]; }

  // Smallest homogeneous column (other than j) whose low is i; blocks stand
  // in for gradings (equal block <=> same Morse set).
  std::uint32_t min_homogeneous_with_low(std::uint32_t i, std::uint32_t j,
                                         const FilteredMatrix& A) const {
    for (std::uint32_t s : with_low_[i])
      if (s != j && A.block(i) == A.block(s)) return s;
    return kNoIndex;
  }

  void add_col(std::uint32_t s, std::uint32_t j) {
    // Row supports change exactly on the source column's entries.
    for (std::uint32_t r : cols_[s]) toggle_sorted(rows_[r], j);
    tmp_.clear();
    std::set_symmetric_difference(cols_[j].begin(), cols_[j].end(), cols_[s].begin(),
                                  cols_[s].end(), std::back_inserter(tmp_));
    cols_[j].swap(tmp_);
    refresh_low(j);
  }

  // row s += row j  (toggles entry (s,k) for every column k in row j).
  void add_row(std::uint32_t j, std::uint32_t s) {
    tmp_ = rows_[j];  // copy: toggles below mutate rows_[s], never rows_[j]
    for (std::uint32_t k : tmp_) {
      toggle_sorted(cols_[k], s);
      toggle_sorted(rows_[s], k);
      refresh_low(k);
    }
  }

private:
  static void toggle_sorted(std::vector<std::uint32_t>& v, std::uint32_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x)
      v.erase(it);
    else
      v.insert(it, x);
  }

  void refresh_low(std::uint32_t j) {
    const std::uint32_t nl = cols_[j].empty() ? kNoIndex : cols_[j].back();
    if (nl == low_[j]) return;
    if (low_[j] != kNoIndex) with_low_[low_[j]].erase(j);
    low_[j] = nl;
    if (nl != kNoIndex) with_low_[nl].insert(j);
  }

  std::uint32_t n_;
  std::vector<std::vector<std::uint32_t>> cols_, rows_;
  std::vector<std::uint32_t> low_;
  std::vector<std::set<std::uint32_t>> with_low_;
  std::vector<std::uint32_t> tmp_;
};

}  // namespace

ReduceResult connectmat(FilteredMatrix A, const ReduceOptions& opt) {
  const std::uint32_t n = static_cast<std::uint32_t>(A.size());
  RowColWorkspace W(A);
  ReduceStats stats;

  for (std::uint32_t j = 0; j < n; ++j) {
    check_deadline(opt.deadline);
    std::size_t scan = W.col(j).size();
    while (scan > 0) {
      const std::uint32_t i = W.col(j)[scan - 1];
      const std::uint32_t s = W.min_homogeneous_with_low(i, j, A);
      if (s == kNoIndex) {
        --scan;
        continue;
      }
      W.add_col(s, j);
      if (A.tracks_chains()) A.add_chain_only(s, j);
      W.add_row(j, s);
      ++stats.column_additions;
      ++stats.row_additions;
      const auto& col = W.col(j);
      scan = std::lower_bound(col.begin(), col.end(), i) - col.begin();
    }
  }

  for (std::uint32_t j = 0; j < n; ++j) A.set_col(j, W.col(j));
  ReduceResult res{std::move(A), {}, stats};
  res.connection = extract_connection(res.matrix);
  return res;
}

FilteredMatrix complete_reduction(FilteredMatrix A, const Deadline& deadline) {
  const std::uint32_t n = static_cast<std::uint32_t>(A.size());
  std::vector<std::uint32_t> owner(n, kNoIndex);
  for (std::uint32_t j = 0; j < n; ++j) {
    check_deadline(deadline);
    for (;;) {
      const std::uint32_t l = A.low(j);
      if (l == kNoIndex) break;
      const std::uint32_t s = owner[l];
      if (s == kNoIndex) {
        owner[l] = j;
        break;
      }
      A.add_column(s, j);
    }
  }
  return A;
}

ReducedReport check_reduced(const FilteredMatrix& A) {
  ReducedReport rep;
  const std::uint32_t n = static_cast<std::uint32_t>(A.size());
  std::vector<std::uint32_t> hom_low_owner(n, kNoIndex);
  std::vector<char> targetable(n, 0);

  rep.r1 = true;
  for (std::uint32_t j = 0; j < n; ++j)
    if (A.is_homogeneous(j)) {
      const std::uint32_t l = A.low(j);
      if (hom_low_owner[l] != kNoIndex) rep.r1 = false;
      hom_low_owner[l] = std::min(hom_low_owner[l], j);
      targetable[l] = 1;
    }

  rep.r2 = true;
  for (std::uint32_t j = 0; j < n; ++j)
    if (A.is_homogeneous(j) && targetable[j]) rep.r2 = false;

  rep.r3 = true;
  for (std::uint32_t j = 0; j < n && rep.r3; ++j)
    for (std::uint32_t i : A.col(j)) {
      const std::uint32_t s = hom_low_owner[i];
      if (s != kNoIndex && s < j) {
        rep.r3 = false;
        break;
      }
    }
  return rep;
}

ConnectionMatrix extract_connection(const FilteredMatrix& A) {
  const std::uint32_t n = static_cast<std::uint32_t>(A.size());
  std::vector<char> drop(n, 0);
  for (std::uint32_t j = 0; j < n; ++j)
    if (A.is_homogeneous(j)) {
      drop[j] = 1;
      drop[A.low(j)] = 1;
    }

  ConnectionMatrix cm;
  std::vector<std::uint32_t> local(n, kNoIndex);
  for (std::uint32_t j = 0; j < n; ++j)
    if (!drop[j]) {
      local[j] = static_cast<std::uint32_t>(cm.kept.size());
      cm.kept.push_back(j);
      cm.simplices.push_back(A.simplex_at(j));
      cm.grading.push_back(A.grading(j));
      cm.dims.push_back(A.dim(j));
    }
  cm.cols.resize(cm.kept.size());
  cm.basis_chains.resize(cm.kept.size());
  for (std::uint32_t j = 0; j < n; ++j) {
    if (drop[j]) continue;
    auto& col = cm.cols[local[j]];
    for (std::uint32_t i : A.col(j))
      if (!drop[i]) col.push_back(local[i]);
    if (A.tracks_chains()) cm.basis_chains[local[j]] = A.chain(j);
  }
  cm.linear_ext = A.order().linear_ext;
  return cm;
}

FilteredMatrix matrix_from_connection(const ConnectionMatrix& cm,
                                      const std::vector<PosetId>& linear_ext) {
  const std::uint32_t k = static_cast<std::uint32_t>(cm.size());
  std::uint32_t max_poset = 0;
  for (PosetId p : linear_ext) max_poset = std::max(max_poset, p);
  for (PosetId p : cm.grading) max_poset = std::max(max_poset, p);
  std::vector<std::uint32_t> rank(max_poset + 1, kNoIndex);
  for (std::uint32_t r = 0; r < linear_ext.size(); ++r) rank[linear_ext[r]] = r;
  for (PosetId p : cm.grading)
    if (rank[p] == kNoIndex) throw ValidationError("linear extension misses a kept grading");

  // Stable sort by block keeps the original relative order inside blocks,
  // hence dimension monotonicity.
  std::vector<std::uint32_t> perm(k);
  for (std::uint32_t t = 0; t < k; ++t) perm[t] = t;
  std::stable_sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    return rank[cm.grading[a]] < rank[cm.grading[b]];
  });
  std::vector<std::uint32_t> inv(k);
  for (std::uint32_t t = 0; t < k; ++t) inv[perm[t]] = t;

  FilteredOrder fo;
  fo.linear_ext = linear_ext;
  SimplexId max_simplex = 0;
  for (SimplexId s : cm.simplices) max_simplex = std::max(max_simplex, s);
  fo.position.assign(max_simplex + 1, kNoIndex);
  for (std::uint32_t t = 0; t < k; ++t) {
    const std::uint32_t src = perm[t];
    fo.order.push_back(cm.simplices[src]);
    fo.position[cm.simplices[src]] = t;
    fo.grading.push_back(cm.grading[src]);
    fo.block.push_back(rank[cm.grading[src]]);
    fo.dims.push_back(cm.dims[src]);
  }

  std::vector<std::vector<std::uint32_t>> cols(k);
  for (std::uint32_t t = 0; t < k; ++t) {
    const std::uint32_t src = perm[t];
    for (std::uint32_t i : cm.cols[src]) cols[t].push_back(inv[i]);
    std::sort(cols[t].begin(), cols[t].end());
    if (!cols[t].empty() && cols[t].back() >= t)
      throw ValidationError("connection matrix is not filtered by the given extension");
  }
  std::vector<std::vector<SimplexId>> chains;
  if (!cm.basis_chains.empty() &&
      std::any_of(cm.basis_chains.begin(), cm.basis_chains.end(),
                  [](const auto& c) { return !c.empty(); })) {
    chains.resize(k);
    for (std::uint32_t t = 0; t < k; ++t) chains[t] = cm.basis_chains[perm[t]];
  }
  return FilteredMatrix::assemble(std::move(fo), std::move(cols), std::move(chains));
}

bool morse_fixed_compare(const ConnectionMatrix& a, const ConnectionMatrix& b,
                         std::string* witness) {
  auto fail = [&](std::string msg) {
    if (witness) *witness = std::move(msg);
    return false;
  };
  if (a.size() != b.size())
    return fail("kept sets differ in size: " + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()));

  // Correspondence via representing simplex ids.
  std::vector<std::pair<SimplexId, std::uint32_t>> bs;
  for (std::uint32_t t = 0; t < b.size(); ++t) bs.emplace_back(b.simplices[t], t);
  std::sort(bs.begin(), bs.end());
  std::vector<std::uint32_t> map_a_to_b(a.size(), kNoIndex);
  for (std::uint32_t t = 0; t < a.size(); ++t) {
    auto it = std::lower_bound(bs.begin(), bs.end(),
                               std::make_pair(a.simplices[t], std::uint32_t{0}));
    if (it == bs.end() || it->first != a.simplices[t])
      return fail("simplex " + std::to_string(a.simplices[t]) + " kept on one side only");
    map_a_to_b[t] = it->second;
  }

  for (std::uint32_t j = 0; j < a.size(); ++j) {
    std::vector<std::uint32_t> mapped;
    for (std::uint32_t i : a.cols[j]) mapped.push_back(map_a_to_b[i]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != b.cols[map_a_to_b[j]])
      return fail("columns for simplex " + std::to_string(a.simplices[j]) + " differ");
  }
  return true;
}

void validate_connection_matrix(const ConnectionMatrix& cm, const PosetReach& reach) {
  const std::uint32_t k = static_cast<std::uint32_t>(cm.size());
  std::vector<std::uint32_t> parity(k, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t j = 0; j < k; ++j) {
    const auto& col = cm.cols[j];
    for (std::size_t t = 0; t < col.size(); ++t) {
      const std::uint32_t i = col[t];
      if (t > 0 && col[t - 1] >= i)
        throw ValidationError("connection column " + std::to_string(j) + " not strictly sorted");
      if (i >= j) throw ValidationError("connection matrix not upper triangular");
      if (cm.grading[i] == cm.grading[j])
        throw ValidationError("nonzero diagonal block at poset element " +
                              std::to_string(cm.grading[j]));
      if (!reach.reaches(cm.grading[j], cm.grading[i]))
        throw ValidationError("entry violates the partial order: " +
                              std::to_string(cm.grading[i]) + " not below " +
                              std::to_string(cm.grading[j]));
      if (cm.dims[i] != cm.dims[j] - 1)
        throw ValidationError("connection matrix entry not boundary-graded");
    }
    touched.clear();
    for (std::uint32_t i : col)
      for (std::uint32_t r : cm.cols[i]) {
        parity[r] ^= 1u;
        touched.push_back(r);
      }
    for (std::uint32_t r : touched)
      if (parity[r]) {
        for (std::uint32_t q : touched) parity[q] = 0;
        throw ValidationError("connection matrix does not square to zero at column " +
                              std::to_string(j));
      }
    for (std::uint32_t r : touched) parity[r] = 0;
  }
}

namespace {

std::vector<std::size_t> betti_of_reduced(const FilteredMatrix& R) {
  std::int32_t max_dim = 0;
  for (std::uint32_t j = 0; j < R.size(); ++j) max_dim = std::max(max_dim, R.dim(j));
  std::vector<std::size_t> betti(static_cast<std::size_t>(max_dim) + 1, 0);
  for (std::uint32_t j = 0; j < R.size(); ++j) {
    if (R.low(j) == kNoIndex)
      ++betti[R.dim(j)];  // creator
    else
      --betti[R.dim(j) - 1];  // kills a creator one dimension down
  }
  return betti;
}

}  // namespace

std::vector<std::size_t> betti_numbers(const ConnectionMatrix& cm) {
  if (cm.size() == 0) return {};
  return betti_of_reduced(complete_reduction(matrix_from_connection(cm, cm.linear_ext)));
}

std::vector<std::size_t> betti_numbers(const SimplicialComplex& K) {
  // Trivial one-block filtration by (dim, id).
  FilteredOrder fo;
  fo.linear_ext = {0};
  fo.position.resize(K.size());
  fo.order.resize(K.size());
  for (SimplexId s = 0; s < K.size(); ++s) fo.order[s] = s;
  std::stable_sort(fo.order.begin(), fo.order.end(),
                   [&](SimplexId a, SimplexId b) { return K.dim(a) < K.dim(b); });
  for (std::uint32_t p = 0; p < K.size(); ++p) {
    fo.position[fo.order[p]] = p;
    fo.grading.push_back(0);
    fo.block.push_back(0);
    fo.dims.push_back(K.dim(fo.order[p]));
  }
  return betti_of_reduced(complete_reduction(FilteredMatrix::boundary(K, std::move(fo), false)));
}

}  // namespace conley
