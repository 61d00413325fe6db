#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "conley/mvf.hpp"
#include "conley/reduce.hpp"

namespace conley {

struct BenchInstance {
  std::string name;
  SimplicialComplex complex;
  MultivectorField field;
};

struct BenchRow {
  std::string name;
  std::size_t simplices = 0;
  int max_dim = 0;
  double avg_dim = 0;
  double probability = 0;
  double connectmat_ms = 0;
  double conmat_ms = 0;
  long speedup = 0;        // rounded ratio connectmat/conmat
  std::string status;      // ok | timeout | validated (correctness-only)
};

struct BenchOptions {
  int repetitions = 3;          // median of k; construction is never timed
  double timeout_seconds = 0;   // 0 = unlimited; expiry marks the row "timeout"
  bool validate = true;         // cross-validate both reductions before timing
  bool correctness_only = false;  // skip timing, may run instances in parallel
  bool parallel = false;
};

std::vector<BenchRow> run_benchmark(const std::vector<BenchInstance>& instances,
                                    const BenchOptions& opt);

void write_benchmark_markdown(std::ostream& out, const std::vector<BenchRow>& rows);
void write_benchmark_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace conley
