#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conley/reduce.hpp"

namespace conley {

// A Lyapunov function: one value per poset element, monotone with respect
// to <=_P (smaller or equal below).
struct LyapunovFunction {
  std::vector<double> values;  // indexed by poset id
};

// Monotonicity check; returns a violated direct relation (p above, q below)
// or nullopt when f is Lyapunov.
std::optional<std::pair<PosetId, PosetId>> lyapunov_violation(const MorseDecomposition& md,
                                                              const LyapunovFunction& f);

// f(p) = number of simplices in the union of Morse sets at or below p.
LyapunovFunction downset_function(const SimplicialComplex& K, const MorseDecomposition& md);

// Linear extension ordered by ascending f, ties broken by the position in
// the decomposition's own extension. Throws if f is not Lyapunov.
std::vector<PosetId> f_compatible_order(const MorseDecomposition& md, const LyapunovFunction& f);

struct Bar {
  std::int32_t dim = 0;
  double birth = 0;
  double death = 0;  // +infinity for essential classes
  bool finite() const;
  double length() const { return death - birth; }
  friend bool operator==(const Bar&, const Bar&) = default;
};

struct Barcode {
  std::vector<Bar> bars;  // sorted by (dim, birth, death)
};

// Persistence of the Morse decomposition under f: complete reduction of the
// boundary matrix filtered by the f-compatible order; pairs map to bars
// [f(grading(i)), f(grading(j))), unpaired creators to infinite bars.
// Zero-length bars are dropped unless keep_zero_bars.
Barcode morse_persistence(const SimplicialComplex& K, const MorseDecomposition& md,
                          const LyapunovFunction& f, bool keep_zero_bars = false);

// Barcode of a connection matrix refiled by the f-compatible order (the
// Conley-complex route). Used by the equivalence check.
Barcode connection_persistence(const SimplicialComplex& K, const MorseDecomposition& md,
                               const LyapunovFunction& f, bool keep_zero_bars = false);

struct EquivalenceResult {
  bool equal = true;
  std::string witness;  // first differing bar, empty when equal
};
EquivalenceResult persistence_equivalence_check(const SimplicialComplex& K,
                                                const MorseDecomposition& md,
                                                const LyapunovFunction& f);

// Exact bottleneck distance between barcodes (finite parts matched against
// each other and the diagonal; infinite bars matched among themselves per
// dimension, infinity when their counts differ).
double bottleneck_distance(const Barcode& a, const Barcode& b);

// CSV rows "dim,birth,death" with "inf" for essential deaths.
void write_barcode_csv(std::ostream& out, const Barcode& bc);
Barcode read_barcode_csv(std::istream& in);

struct SvgOptions {
  bool log_length = false;  // plot bar lengths on a log scale
  double width = 640, height = 0;  // height 0: derived from the bar count
};
void write_barcode_svg(std::ostream& out, const Barcode& bc, const SvgOptions& opt = {});

}  // namespace conley
