#include "conley/persist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace conley {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

bool Bar::finite() const { return !std::isinf(death); }

std::optional<std::pair<PosetId, PosetId>> lyapunov_violation(const MorseDecomposition& md,
                                                              const LyapunovFunction& f) {
  if (f.values.size() != md.count())
    throw ValidationError("Lyapunov function has wrong arity");
  // Monotone on direct relations implies monotone on the closure.
  for (PosetId p = 0; p < md.count(); ++p)
    for (PosetId q : md.below[p])
      if (f.values[q] > f.values[p]) return std::make_pair(p, q);
  return std::nullopt;
}

LyapunovFunction downset_function(const SimplicialComplex& K, const MorseDecomposition& md) {
  (void)K;
  PosetReach reach(md);
  LyapunovFunction f;
  f.values.resize(md.count());
  for (PosetId p = 0; p < md.count(); ++p) {
    std::size_t total = 0;
    for (PosetId q = 0; q < md.count(); ++q)
      if (reach.reaches(p, q)) total += md.sets[q].size();
    f.values[p] = static_cast<double>(total);
  }
  return f;
}

std::vector<PosetId> f_compatible_order(const MorseDecomposition& md, const LyapunovFunction& f) {
  if (auto v = lyapunov_violation(md, f))
    throw ValidationError("not a Lyapunov function: element " + std::to_string(v->second) +
                          " below " + std::to_string(v->first) + " has larger value");
  std::vector<std::uint32_t> rank(md.count());
  for (std::uint32_t r = 0; r < md.linear_ext.size(); ++r) rank[md.linear_ext[r]] = r;
  std::vector<PosetId> ext = md.linear_ext;
  std::stable_sort(ext.begin(), ext.end(), [&](PosetId a, PosetId b) {
    if (f.values[a] != f.values[b]) return f.values[a] < f.values[b];
    return rank[a] < rank[b];
  });
  return ext;
}

namespace {

Barcode bars_of_reduction(FilteredMatrix R, const LyapunovFunction& f, bool keep_zero_bars) {
  R = complete_reduction(std::move(R));
  const std::uint32_t n = static_cast<std::uint32_t>(R.size());
  std::vector<char> killed(n, 0);
  Barcode bc;
  for (std::uint32_t j = 0; j < n; ++j) {
    const std::uint32_t i = R.low(j);
    if (i == kNoIndex) continue;
    killed[i] = 1;
    Bar bar{R.dim(i), f.values[R.grading(i)], f.values[R.grading(j)]};
    if (keep_zero_bars || bar.length() > 0) bc.bars.push_back(bar);
  }
  for (std::uint32_t j = 0; j < n; ++j)
    if (R.low(j) == kNoIndex && !killed[j])
      bc.bars.push_back(Bar{R.dim(j), f.values[R.grading(j)], kInf});
  std::sort(bc.bars.begin(), bc.bars.end(), [](const Bar& a, const Bar& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return bc;
}

}  // namespace

Barcode morse_persistence(const SimplicialComplex& K, const MorseDecomposition& md,
                          const LyapunovFunction& f, bool keep_zero_bars) {
  const auto order = filtered_order(K, with_linear_ext(md, f_compatible_order(md, f)));
  return bars_of_reduction(FilteredMatrix::boundary(K, order, false), f, keep_zero_bars);
}

Barcode connection_persistence(const SimplicialComplex& K, const MorseDecomposition& md,
                               const LyapunovFunction& f, bool keep_zero_bars) {
  const auto ext = f_compatible_order(md, f);
  const auto order = filtered_order(K, with_linear_ext(md, ext));
  auto res = conmat(FilteredMatrix::boundary(K, order, false));
  return bars_of_reduction(matrix_from_connection(res.connection, ext), f, keep_zero_bars);
}

EquivalenceResult persistence_equivalence_check(const SimplicialComplex& K,
                                                const MorseDecomposition& md,
                                                const LyapunovFunction& f) {
  const Barcode full = morse_persistence(K, md, f);
  const Barcode conn = connection_persistence(K, md, f);
  EquivalenceResult res;
  if (full.bars == conn.bars) return res;
  res.equal = false;
  const std::size_t upto = std::min(full.bars.size(), conn.bars.size());
  for (std::size_t t = 0; t < upto; ++t)
    if (!(full.bars[t] == conn.bars[t])) {
      res.witness = "bar " + std::to_string(t) + ": filtration has dim " +
                    std::to_string(full.bars[t].dim) + " [" + fmt(full.bars[t].birth) + "," +
                    fmt(full.bars[t].death) + "), connection route has dim " +
                    std::to_string(conn.bars[t].dim) + " [" + fmt(conn.bars[t].birth) + "," +
                    fmt(conn.bars[t].death) + ")";
      return res;
    }
  res.witness = "bar counts differ: " + std::to_string(full.bars.size()) + " vs " +
                std::to_string(conn.bars.size());
  return res;
}

namespace {

// Perfect matching test for the bottleneck feasibility graph via Kuhn's
// augmenting paths. Left side: bars of `a` plus one diagonal slot per bar
// of `b`; right side symmetric.
class BottleneckFeasibility {
public:
  BottleneckFeasibility(const std::vector<Bar>& a, const std::vector<Bar>& b)
      : a_(a), b_(b), na_(a.size()), nb_(b.size()) {}

  bool feasible(double c) {
    const std::size_t left = na_ + nb_, right = nb_ + na_;
    match_right_.assign(right, kNoIndex);
    std::vector<char> used;
    std::size_t matched = 0;
    for (std::size_t l = 0; l < left; ++l) {
      used.assign(right, 0);
      if (augment(l, c, used)) ++matched;
    }
    return matched == left;
  }

private:
  static double pair_cost(const Bar& x, const Bar& y) {
    return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death));
  }
  static double diag_cost(const Bar& x) { return (x.death - x.birth) / 2; }

  bool edge(std::size_t l, std::size_t r, double c) const {
    const bool l_real = l < na_, r_real = r < nb_;
    if (l_real && r_real) return pair_cost(a_[l], b_[r]) <= c;
    if (l_real) return r - nb_ == l && diag_cost(a_[l]) <= c;  // own diagonal slot
    if (r_real) return l - na_ == r && diag_cost(b_[r]) <= c;
    return true;  // diagonal to diagonal
  }

  bool augment(std::size_t l, double c, std::vector<char>& used) {
    for (std::size_t r = 0; r < nb_ + na_; ++r) {
      if (used[r] || !edge(l, r, c)) continue;
      used[r] = 1;
      if (match_right_[r] == kNoIndex || augment(match_right_[r], c, used)) {
        match_right_[r] = static_cast<std::uint32_t>(l);
        return true;
      }
    }
    return false;
  }

  const std::vector<Bar>& a_;
  const std::vector<Bar>& b_;
  std::size_t na_, nb_;
  std::vector<std::uint32_t> match_right_;
};

double bottleneck_finite(const std::vector<Bar>& a, const std::vector<Bar>& b) {
  if (a.empty() && b.empty()) return 0;
  std::vector<double> candidates{0};
  for (const Bar& x : a) candidates.push_back((x.death - x.birth) / 2);
  for (const Bar& y : b) candidates.push_back((y.death - y.birth) / 2);
  for (const Bar& x : a)
    for (const Bar& y : b)
      candidates.push_back(std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death)));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  BottleneckFeasibility feas(a, b);
  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!feas.feasible(candidates[hi])) return kInf;  // cannot happen: diagonal always works
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feas.feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace

double bottleneck_distance(const Barcode& a, const Barcode& b) {
  std::int32_t max_dim = -1;
  for (const Bar& x : a.bars) max_dim = std::max(max_dim, x.dim);
  for (const Bar& y : b.bars) max_dim = std::max(max_dim, y.dim);
  double d = 0;
  for (std::int32_t dim = 0; dim <= max_dim; ++dim) {
    std::vector<Bar> fa, fb;
    std::vector<double> ia, ib;
    for (const Bar& x : a.bars)
      if (x.dim == dim) {
        if (x.finite())
          fa.push_back(x);
        else
          ia.push_back(x.birth);
      }
    for (const Bar& y : b.bars)
      if (y.dim == dim) {
        if (y.finite())
          fb.push_back(y);
        else
          ib.push_back(y.birth);
      }
    if (ia.size() != ib.size()) return kInf;
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    for (std::size_t t = 0; t < ia.size(); ++t) d = std::max(d, std::abs(ia[t] - ib[t]));
    d = std::max(d, bottleneck_finite(fa, fb));
  }
  return d;
}

void write_barcode_csv(std::ostream& out, const Barcode& bc) {
  out << "dim,birth,death\n";
  for (const Bar& b : bc.bars)
    out << b.dim << "," << fmt(b.birth) << "," << fmt(b.death) << "\n";
}

Barcode read_barcode_csv(std::istream& in) {
  Barcode bc;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("dim", 0) == 0) continue;
    std::istringstream row(line);
    std::string d, birth, death;
    if (!std::getline(row, d, ',') || !std::getline(row, birth, ',') ||
        !std::getline(row, death, ','))
      throw IoError("barcode csv line " + std::to_string(lineno) + ": expected dim,birth,death");
    try {
      Bar bar;
      bar.dim = std::stoi(d);
      bar.birth = std::stod(birth);
      bar.death = (death == "inf") ? kInf : std::stod(death);
      bc.bars.push_back(bar);
    } catch (const std::exception&) {
      throw IoError("barcode csv line " + std::to_string(lineno) + ": bad number");
    }
  }
  return bc;
}

void write_barcode_svg(std::ostream& out, const Barcode& bc, const SvgOptions& opt) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b"};
  const double row_h = 8, pad = 30;
  const double height = opt.height > 0 ? opt.height
                                       : pad * 2 + row_h * std::max<std::size_t>(bc.bars.size(), 1);
  double lo = kInf, hi = -kInf, max_len = 0;
  for (const Bar& b : bc.bars) {
    lo = std::min(lo, b.birth);
    hi = std::max(hi, b.finite() ? b.death : b.birth);
    if (b.finite()) max_len = std::max(max_len, b.length());
  }
  if (!(lo < kInf)) {
    lo = 0;
    hi = 1;
  }
  if (hi <= lo) hi = lo + 1;
  if (max_len <= 0) max_len = 1;
  const double usable = opt.width - 2 * pad;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(opt.width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(opt.width) << " " << fmt(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto xpos = [&](double v) { return pad + usable * (v - lo) / (hi - lo); };
  double y = pad;
  for (const Bar& b : bc.bars) {
    const char* color = kPalette[b.dim % 6];
    double x0 = xpos(b.birth), x1;
    if (opt.log_length) {
      // Bars start at their birth; lengths are log-compressed so that short
      // features stay visible next to dominant ones.
      const double len = b.finite() ? b.length() : max_len;
      const double frac = std::log1p(len) / std::log1p(max_len);
      x1 = x0 + std::max(1.0, frac * usable * 0.5);
    } else {
      x1 = b.finite() ? xpos(b.death) : opt.width - pad / 2;
    }
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(x1)
        << "\" y2=\"" << fmt(y) << "\" stroke=\"" << color << "\" stroke-width=\"4\"";
    if (!b.finite()) out << " stroke-dasharray=\"6,3\"";
    out << "><title>dim " << b.dim << " [" << fmt(b.birth) << ","
        << (b.finite() ? fmt(b.death) : "inf") << ")</title></line>\n";
    y += row_h;
  }
  out << "<text x=\"" << fmt(pad) << "\" y=\"" << fmt(height - 8) << "\" font-size=\"10\">"
      << fmt(lo) << "</text>\n";
  out << "<text x=\"" << fmt(opt.width - pad) << "\" y=\"" << fmt(height - 8)
      << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(hi) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace conley
