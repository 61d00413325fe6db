#include <sstream>

#include "conley/bench.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace conley;

namespace {
std::vector<BenchInstance> small_instances() {
  std::vector<BenchInstance> out;
  {
    auto K = fx::annulus_complex();
    auto V = fx::annulus_field(K);
    out.push_back({"annulus", std::move(K), std::move(V)});
  }
  {
    auto [K, V] = fx::random_instance(131);
    out.push_back({"random131", std::move(K), std::move(V)});
  }
  return out;
}
}  // namespace

TEST_CASE("benchmark rows carry instance statistics and timings") {
  BenchOptions opt;
  opt.repetitions = 1;
  auto rows = run_benchmark(small_instances(), opt);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].name == "annulus");
  CHECK(rows[0].simplices == 11);
  CHECK(rows[0].max_dim == 2);
  CHECK(rows[0].avg_dim == doctest::Approx((4 * 0 + 5 * 1 + 2 * 2) / 11.0));
  CHECK(rows[0].probability == doctest::Approx(8.0 / 110.0));
  CHECK(rows[0].status == "ok");
  CHECK(rows[0].conmat_ms >= 0);
  CHECK(rows[0].connectmat_ms >= 0);
  CHECK(rows[1].status == "ok");
}

TEST_CASE("correctness-only mode validates without timing") {
  BenchOptions opt;
  opt.correctness_only = true;
  auto rows = run_benchmark(small_instances(), opt);
  for (const auto& r : rows) {
    CHECK(r.status == "validated");
    CHECK(r.conmat_ms == 0);
    CHECK(r.connectmat_ms == 0);
  }
  opt.parallel = true;
  auto prows = run_benchmark(small_instances(), opt);
  for (const auto& r : prows) CHECK(r.status == "validated");
}

TEST_CASE("timeouts are reported per instance") {
  auto K = full_simplex_complex(9);
  auto co = coarsen_to(K, MultivectorField::singletons(K), 0.3, 5);
  std::vector<BenchInstance> insts;
  insts.push_back({"big", std::move(K), std::move(co.field)});
  BenchOptions opt;
  opt.repetitions = 1;
  opt.timeout_seconds = 1e-9;
  auto rows = run_benchmark(insts, opt);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == "timeout");
}

TEST_CASE("benchmark table writers") {
  BenchOptions opt;
  opt.repetitions = 1;
  auto rows = run_benchmark(small_instances(), opt);
  std::ostringstream md, csv;
  write_benchmark_markdown(md, rows);
  write_benchmark_csv(csv, rows);
  auto mtext = md.str();
  CHECK(mtext.find("| instance |") == 0);
  CHECK(mtext.find("| annulus | 11 | 2 |") != std::string::npos);
  CHECK(mtext.find(" ok |") != std::string::npos);
  auto ctext = csv.str();
  CHECK(ctext.find("instance,simplices,") == 0);
  std::size_t lines = 0;
  for (char ch : ctext) lines += ch == '\n';
  CHECK(lines == 3);
}
