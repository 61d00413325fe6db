#include "conley/z2matrix.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace conley {

namespace {

// Z2 symmetric difference of two sorted vectors.
void xor_into(std::vector<std::uint32_t>& dst, const std::vector<std::uint32_t>& src,
              std::vector<std::uint32_t>& tmp) {
  tmp.clear();
  std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                std::back_inserter(tmp));
  dst.swap(tmp);
}

}  // namespace

FilteredMatrix FilteredMatrix::boundary(const SimplicialComplex& K, FilteredOrder order,
                                        bool track_chains) {
  if (order.size() != K.size()) throw ValidationError("order does not cover the complex");
  FilteredMatrix A;
  A.cols_.resize(order.size());
  for (std::uint32_t j = 0; j < order.size(); ++j) {
    const SimplexId s = order.order[j];
    auto& col = A.cols_[j];
    for (SimplexId f : K.boundary_chain(s)) col.push_back(order.position[f]);
    std::sort(col.begin(), col.end());
    if (!col.empty() && col.back() >= j)
      throw ValidationError("order is not filtered: face after coface at position " +
                            std::to_string(j));
  }
  A.grading_ = order.grading;
  A.block_ = order.block;
  A.dims_ = order.dims;
  A.track_chains_ = track_chains;
  if (track_chains) {
    A.chains_.resize(order.size());
    for (std::uint32_t j = 0; j < order.size(); ++j) A.chains_[j] = {order.order[j]};
  }
  A.order_ = std::move(order);
  return A;
}

FilteredMatrix FilteredMatrix::assemble(FilteredOrder order,
                                        std::vector<std::vector<std::uint32_t>> cols,
                                        std::vector<std::vector<SimplexId>> chains) {
  if (cols.size() != order.size()) throw ValidationError("column count does not match order");
  FilteredMatrix A;
  A.grading_ = order.grading;
  A.block_ = order.block;
  A.dims_ = order.dims;
  A.cols_ = std::move(cols);
  A.track_chains_ = !chains.empty();
  A.chains_ = std::move(chains);
  A.order_ = std::move(order);
  return A;
}

void FilteredMatrix::add_column(std::uint32_t s, std::uint32_t j) {
  static thread_local std::vector<std::uint32_t> tmp;
  xor_into(cols_[j], cols_[s], tmp);
  if (track_chains_) add_chain_only(s, j);
}

void FilteredMatrix::add_chain_only(std::uint32_t s, std::uint32_t j) {
  if (!track_chains_) return;
  static thread_local std::vector<SimplexId> ctmp;
  ctmp.clear();
  std::set_symmetric_difference(chains_[j].begin(), chains_[j].end(), chains_[s].begin(),
                                chains_[s].end(), std::back_inserter(ctmp));
  chains_[j].swap(ctmp);
}

FilteredMatrix::HomTarget FilteredMatrix::targetable_of() const {
  HomTarget ht;
  for (std::uint32_t j = 0; j < size(); ++j)
    if (is_homogeneous(j)) {
      ht.homogeneous.push_back(j);
      ht.targetable.push_back(low(j));
    }
  std::sort(ht.targetable.begin(), ht.targetable.end());
  ht.targetable.erase(std::unique(ht.targetable.begin(), ht.targetable.end()),
                      ht.targetable.end());
  return ht;
}

void validate_filtered_matrix(const FilteredMatrix& A, const SimplicialComplex& K) {
  const std::size_t n = A.size();
  std::vector<std::uint32_t> parity(n, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto& col = A.col(j);
    for (std::size_t t = 0; t < col.size(); ++t) {
      if (t > 0 && col[t - 1] >= col[t])
        throw ValidationError("column " + std::to_string(j) + " is not strictly sorted");
      const std::uint32_t i = col[t];
      if (i >= j)
        throw ValidationError("not upper triangular: entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      if (A.block(i) > A.block(j))
        throw ValidationError("not filtered: entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") descends blocks");
      if (A.dim(i) != A.dim(j) - 1)
        throw ValidationError("not boundary-graded: entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
    // dd = 0 through K: the K-boundary of the column's simplex set cancels.
    touched.clear();
    for (std::uint32_t i : col)
      for (SimplexId f : K.boundary_chain(A.simplex_at(i))) {
        const std::uint32_t p = A.order().position[f];
        parity[p] ^= 1u;
        touched.push_back(p);
      }
    for (std::uint32_t p : touched)
      if (parity[p]) {
        for (std::uint32_t q : touched) parity[q] = 0;
        throw ValidationError("boundary of column " + std::to_string(j) + " does not vanish");
      }
    for (std::uint32_t p : touched) parity[p] = 0;

    if (A.tracks_chains()) {
      const auto& chain = A.chain(j);
      if (!std::binary_search(chain.begin(), chain.end(), A.simplex_at(j)))
        throw ValidationError("chain of column " + std::to_string(j) + " lost its own simplex");
      // boundary(chain) must equal the column as a simplex set.
      touched.clear();
      for (SimplexId c : chain)
        for (SimplexId f : K.boundary_chain(c)) {
          const std::uint32_t p = A.order().position[f];
          parity[p] ^= 1u;
          touched.push_back(p);
        }
      std::vector<std::uint32_t> nz;
      for (std::uint32_t p : touched)
        if (parity[p]) {
          nz.push_back(p);
          parity[p] = 0;
        }
      std::sort(nz.begin(), nz.end());
      nz.erase(std::unique(nz.begin(), nz.end()), nz.end());
      if (nz != col)
        throw ValidationError("chain of column " + std::to_string(j) +
                              " does not produce the column");
    }
  }
}

void dump_matrix(std::ostream& out, const FilteredMatrix& A) {
  nlohmann::json header;
  header["n"] = A.size();
  header["order"] = A.order().order;
  header["grading"] = A.order().grading;
  header["dims"] = A.order().dims;
  out << header.dump() << "\n";
  for (std::uint32_t j = 0; j < A.size(); ++j)
    for (std::uint32_t i : A.col(j)) out << i << " " << j << "\n";
}

}  // namespace conley
