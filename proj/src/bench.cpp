#include "conley/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <ostream>

#include "conley/morse.hpp"

namespace conley {

namespace {

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

// Light structural checks that stay affordable at benchmark scale; the
// full <=_P validation additionally needs the poset closure.
void validate_connection_light(const ConnectionMatrix& cm) {
  std::vector<std::uint32_t> parity(cm.size(), 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t j = 0; j < cm.size(); ++j) {
    for (std::uint32_t i : cm.cols[j]) {
      if (i >= j) throw ValidationError("connection matrix not upper triangular");
      if (cm.grading[i] == cm.grading[j])
        throw ValidationError("nonzero diagonal block in connection matrix");
      if (cm.dims[i] != cm.dims[j] - 1)
        throw ValidationError("connection matrix entry not boundary-graded");
    }
    touched.clear();
    for (std::uint32_t i : cm.cols[j])
      for (std::uint32_t r : cm.cols[i]) {
        parity[r] ^= 1u;
        touched.push_back(r);
      }
    for (std::uint32_t r : touched)
      if (parity[r]) throw ValidationError("connection matrix does not square to zero");
    for (std::uint32_t r : touched) parity[r] = 0;
  }
}

BenchRow run_instance(const BenchInstance& inst, const BenchOptions& opt) {
  BenchRow row;
  row.name = inst.name;
  row.simplices = inst.complex.size();
  row.max_dim = inst.complex.max_dim();
  double dimsum = 0;
  for (SimplexId s = 0; s < inst.complex.size(); ++s) dimsum += inst.complex.dim(s);
  row.avg_dim = dimsum / static_cast<double>(inst.complex.size());
  row.probability = connection_probability(inst.field);
  row.status = "ok";

  // Construction is excluded from all timings.
  const auto md = minimum_morse_decomposition(inst.complex, inst.field);
  const auto order = filtered_order(inst.complex, md);
  const FilteredMatrix A = FilteredMatrix::boundary(inst.complex, order, false);

  ReduceOptions ropt;
  if (opt.timeout_seconds > 0) ropt.deadline = Deadline::after(opt.timeout_seconds);

  try {
    if (opt.validate || opt.correctness_only) {
      auto fast = conmat(A, ropt);
      auto slow = connectmat(A, ropt);
      validate_connection_light(fast.connection);
      validate_connection_light(slow.connection);
      if (md.count() <= 20000) {
        PosetReach reach(md);
        validate_connection_matrix(fast.connection, reach);
        validate_connection_matrix(slow.connection, reach);
      }
      auto b1 = betti_numbers(fast.connection);
      auto b2 = betti_numbers(slow.connection);
      // A reduction may keep no generator in the top dimension at all;
      // pad so vanishing Betti numbers compare equal.
      const std::size_t arity = std::max(b1.size(), b2.size());
      b1.resize(arity, 0);
      b2.resize(arity, 0);
      if (b1 != b2)
        throw ValidationError("cross-validation failed on " + inst.name +
                              ": Betti numbers differ between reductions");
    }
    if (opt.correctness_only) {
      row.status = "validated";
      return row;
    }

    auto time_one = [&](auto&& fn) {
      std::vector<double> times;
      for (int r = 0; r < std::max(1, opt.repetitions); ++r) {
        FilteredMatrix copy = A;
        const auto t0 = std::chrono::steady_clock::now();
        fn(std::move(copy));
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      return median(times);
    };
    row.conmat_ms = time_one([&](FilteredMatrix m) { conmat(std::move(m), ropt); });
    row.connectmat_ms = time_one([&](FilteredMatrix m) { connectmat(std::move(m), ropt); });
    row.speedup = std::lround(row.connectmat_ms / std::max(row.conmat_ms, 1e-9));
  } catch (const TimeoutError&) {
    row.status = "timeout";
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const std::vector<BenchInstance>& instances,
                                    const BenchOptions& opt) {
  std::vector<BenchRow> rows;
  if (opt.parallel && opt.correctness_only) {
    std::vector<std::future<BenchRow>> futures;
    for (const auto& inst : instances)
      futures.push_back(std::async(std::launch::async,
                                   [&inst, &opt] { return run_instance(inst, opt); }));
    for (auto& f : futures) rows.push_back(f.get());
  } else {
    // Timed runs stay sequential to avoid interference.
    for (const auto& inst : instances) rows.push_back(run_instance(inst, opt));
  }
  return rows;
}

namespace {

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

void write_benchmark_markdown(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "| instance | simplices | max dim | avg dim | p | ConnectMat (ms) | ConMat (ms) | "
         "speedup | status |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.name << " | " << r.simplices << " | " << r.max_dim << " | "
        << fixed3(r.avg_dim) << " | " << fixed4(r.probability) << " | ";
    if (r.status == "ok")
      out << fixed3(r.connectmat_ms) << " | " << fixed3(r.conmat_ms) << " | " << r.speedup
          << "x | ";
    else
      out << "- | - | - | ";
    out << r.status << " |\n";
  }
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "instance,simplices,max_dim,avg_dim,p,connectmat_ms,conmat_ms,speedup,status\n";
  for (const auto& r : rows)
    out << r.name << "," << r.simplices << "," << r.max_dim << "," << fixed3(r.avg_dim) << ","
        << fixed4(r.probability) << "," << fixed3(r.connectmat_ms) << "," << fixed3(r.conmat_ms)
        << "," << r.speedup << "," << r.status << "\n";
}

}  // namespace conley
