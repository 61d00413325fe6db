#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "conley/bench.hpp"
#include "conley/discretize.hpp"
#include "conley/io.hpp"
#include "conley/persist.hpp"
#include "conley/randgen.hpp"

namespace {

using namespace conley;
using nlohmann::json;

struct LoadedField {
  SimplicialComplex complex;
  MultivectorField field;
};

LoadedField load_inputs(const std::string& complex_path, const std::string& field_path) {
  SimplicialComplex K = complex_from_json(load_json_file(complex_path));
  MultivectorField V = field_path.empty() ? MultivectorField::singletons(K)
                                          : field_from_json(K, load_json_file(field_path));
  return {std::move(K), std::move(V)};
}

// A connection matrix may keep no generator of the complex's top dimension;
// pad before comparing Betti numbers.
bool betti_match(const ConnectionMatrix& cm, const SimplicialComplex& K) {
  auto a = betti_numbers(cm);
  auto b = betti_numbers(K);
  const std::size_t arity = std::max(a.size(), b.size());
  a.resize(arity, 0);
  b.resize(arity, 0);
  return a == b;
}

void emit(const std::string& path, const json& j) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(path, j);
}

int run(int argc, char** argv) {
  CLI::App app{"Connection matrices of Morse decompositions of combinatorial multivector fields"};
  app.require_subcommand(1);

  // ---- morse ----
  auto* morse_cmd = app.add_subcommand("morse", "Minimum Morse decomposition of a field");
  std::string morse_complex, morse_field, morse_out;
  morse_cmd->add_option("--complex", morse_complex, "complex JSON")->required();
  morse_cmd->add_option("--field", morse_field, "field JSON (default: singletons)");
  morse_cmd->add_option("--out,-o", morse_out, "output path (default: stdout)");
  morse_cmd->callback([&] {
    auto in = load_inputs(morse_complex, morse_field);
    emit(morse_out, morse_to_json(minimum_morse_decomposition(in.complex, in.field)));
  });

  // ---- connect ----
  auto* conn_cmd = app.add_subcommand("connect", "Connection matrix of a Morse decomposition");
  std::string conn_complex, conn_field, conn_out, conn_order, conn_algorithm = "conmat";
  std::string conn_dump;
  double conn_timeout = 0;
  bool conn_check = false;
  conn_cmd->add_option("--complex", conn_complex, "complex JSON")->required();
  conn_cmd->add_option("--field", conn_field, "field JSON (default: singletons)");
  conn_cmd->add_option("--order", conn_order, "within/between order override JSON");
  conn_cmd->add_option("--algorithm", conn_algorithm, "conmat | connectmat | both")
      ->check(CLI::IsMember({"conmat", "connectmat", "both"}));
  conn_cmd->add_option("--timeout", conn_timeout, "seconds before aborting the reduction");
  conn_cmd->add_flag("--check", conn_check, "validate the result (invariants, Betti match)");
  conn_cmd->add_option("--dump-matrix", conn_dump, "write the reduced matrix dump here");
  conn_cmd->add_option("--out,-o", conn_out, "output path (default: stdout)");
  conn_cmd->callback([&] {
    auto in = load_inputs(conn_complex, conn_field);
    const auto md = minimum_morse_decomposition(in.complex, in.field);
    const FilteredOrder order = conn_order.empty()
                                    ? filtered_order(in.complex, md)
                                    : order_from_json(in.complex, md, load_json_file(conn_order));
    FilteredMatrix A = FilteredMatrix::boundary(in.complex, order, true);
    ReduceOptions opt;
    if (conn_timeout > 0) opt.deadline = Deadline::after(conn_timeout);

    auto finish = [&](ReduceResult res, const std::string& suffix) {
      if (conn_check) {
        PosetReach reach(md);
        validate_connection_matrix(res.connection, reach);
        if (!betti_match(res.connection, in.complex))
          throw ValidationError("Betti numbers of the connection matrix differ from the complex");
      }
      if (!conn_dump.empty()) {
        std::ofstream dump(conn_dump + suffix);
        if (!dump) throw IoError("cannot open '" + conn_dump + suffix + "' for writing");
        dump_matrix(dump, res.matrix);
      }
      emit(conn_out.empty() || suffix.empty() ? conn_out : conn_out + suffix,
           connection_to_json(res.connection));
    };
    if (conn_algorithm == "conmat" || conn_algorithm == "both")
      finish(conmat(A, opt), conn_algorithm == "both" ? ".conmat" : "");
    if (conn_algorithm == "connectmat" || conn_algorithm == "both")
      finish(connectmat(A, opt), conn_algorithm == "both" ? ".connectmat" : "");
  });

  // ---- persist ----
  auto* pers_cmd = app.add_subcommand("persist", "Morse-decomposition persistence barcode");
  std::string pers_complex, pers_field, pers_lyap, pers_csv = "barcode.csv", pers_svg;
  bool pers_zero = false, pers_log = false, pers_check = false;
  pers_cmd->add_option("--complex", pers_complex, "complex JSON")->required();
  pers_cmd->add_option("--field", pers_field, "field JSON (default: singletons)");
  pers_cmd->add_option("--lyapunov", pers_lyap,
                       "JSON {\"values\": [...]} per poset element (default: downset sizes)");
  pers_cmd->add_flag("--keep-zero-bars", pers_zero, "keep zero-length bars");
  pers_cmd->add_flag("--log-length", pers_log, "log-scale bar lengths in the SVG");
  pers_cmd->add_flag("--check", pers_check, "verify filtration/connection barcode equivalence");
  pers_cmd->add_option("--csv", pers_csv, "barcode CSV path (default barcode.csv, - for stdout)");
  pers_cmd->add_option("--svg", pers_svg, "barcode SVG path (optional)");
  pers_cmd->callback([&] {
    auto in = load_inputs(pers_complex, pers_field);
    const auto md = minimum_morse_decomposition(in.complex, in.field);
    LyapunovFunction f;
    if (pers_lyap.empty()) {
      f = downset_function(in.complex, md);
    } else {
      const json j = load_json_file(pers_lyap);
      if (!j.contains("values") || !j["values"].is_array())
        throw IoError("lyapunov JSON needs a 'values' array");
      for (const auto& v : j["values"]) f.values.push_back(v.get<double>());
    }
    const Barcode bc = morse_persistence(in.complex, md, f, pers_zero);
    if (pers_check) {
      const auto eq = persistence_equivalence_check(in.complex, md, f);
      if (!eq.equal) throw ValidationError("barcode equivalence failed: " + eq.witness);
      std::cerr << "equivalence check passed (" << bc.bars.size() << " bars)\n";
    }
    if (pers_csv == "-") {
      write_barcode_csv(std::cout, bc);
    } else {
      std::ofstream out(pers_csv);
      if (!out) throw IoError("cannot open '" + pers_csv + "' for writing");
      write_barcode_csv(out, bc);
    }
    if (!pers_svg.empty()) {
      std::ofstream out(pers_svg);
      if (!out) throw IoError("cannot open '" + pers_svg + "' for writing");
      SvgOptions so;
      so.log_length = pers_log;
      write_barcode_svg(out, bc, so);
    }
  });

  // ---- discretize ----
  auto* disc_cmd = app.add_subcommand("discretize", "Discretize a planar vector field");
  std::string disc_samples, disc_out_complex = "complex.json", disc_out_field = "field.json";
  std::string disc_builtin;
  std::vector<double> disc_region{-3, 3, -3, 3};
  std::size_t disc_res = 21;
  double disc_eps = 1e-9;
  disc_cmd->add_option("--samples", disc_samples, "CSV of x,y,vx,vy samples");
  disc_cmd->add_option("--builtin-field", disc_builtin, "built-in field name (g)")
      ->check(CLI::IsMember({"g"}));
  disc_cmd->add_option("--region", disc_region, "xmin xmax ymin ymax (builtin sampling)")
      ->expected(4);
  disc_cmd->add_option("--resolution", disc_res, "grid points per axis (builtin sampling)");
  disc_cmd->add_option("--eps", disc_eps, "relative tolerance for sector tests");
  disc_cmd->add_option("--out-complex", disc_out_complex, "output complex JSON");
  disc_cmd->add_option("--out-field", disc_out_field, "output field JSON");
  disc_cmd->callback([&] {
    SampledField samples;
    if (!disc_builtin.empty()) {
      samples = sample_builtin_g(disc_region[0], disc_region[1], disc_region[2], disc_region[3],
                                 disc_res, disc_res);
    } else if (!disc_samples.empty()) {
      std::ifstream in(disc_samples);
      if (!in) throw IoError("cannot open '" + disc_samples + "' for reading");
      samples = read_samples_csv(in);
    } else {
      throw ValidationError("discretize needs --samples or --builtin-field");
    }
    const GridComplex G = triangulate_grid(samples);
    const MultivectorField V = discretize_field(G, samples, disc_eps);
    save_json_file(disc_out_complex, complex_to_json(G.complex));
    save_json_file(disc_out_field, field_to_json(V));
    std::cerr << "complex: " << G.complex.size() << " simplices, field: " << V.vector_count()
              << " vectors, p = " << connection_probability(V) << "\n";
  });

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "Generate benchmark complexes and coarsened fields");
  std::string gen_kind = "triangle-soup", gen_out_complex = "complex.json",
              gen_out_field = "field.json";
  std::uint32_t gen_vertices = 55;
  std::uint64_t gen_count = 25001, gen_seed = 1;
  int gen_dim = 12;
  std::vector<std::string> gen_mixed;
  double gen_target = 0;
  gen_cmd->add_option("--kind", gen_kind, "full-simplex | triangle-soup | dense-graph | mixed")
      ->check(CLI::IsMember({"full-simplex", "triangle-soup", "dense-graph", "mixed"}));
  gen_cmd->add_option("--vertices", gen_vertices, "vertex count");
  gen_cmd->add_option("--count", gen_count, "top-cell count (triangle-soup/dense-graph)");
  gen_cmd->add_option("--dim", gen_dim, "dimension (full-simplex)");
  gen_cmd->add_option("--mixed", gen_mixed, "dim:count pairs (mixed), e.g. 3:100 4:50");
  gen_cmd->add_option("--target-p", gen_target, "coarsen until this connection probability");
  gen_cmd->add_option("--seed", gen_seed, "random seed");
  gen_cmd->add_option("--out-complex", gen_out_complex, "output complex JSON");
  gen_cmd->add_option("--out-field", gen_out_field, "output field JSON");
  gen_cmd->callback([&] {
    std::vector<std::pair<int, std::uint64_t>> dim_counts;
    for (const auto& spec : gen_mixed) {
      const auto colon = spec.find(':');
      if (colon == std::string::npos)
        throw ValidationError("--mixed entries look like dim:count, got '" + spec + "'");
      dim_counts.emplace_back(std::stoi(spec.substr(0, colon)),
                              std::stoull(spec.substr(colon + 1)));
    }
    const SimplicialComplex K =
        build_benchmark_complex(gen_kind, gen_vertices, gen_count, gen_dim, dim_counts, gen_seed);
    const auto result = coarsen_to(K, MultivectorField::singletons(K), gen_target, gen_seed);
    save_json_file(gen_out_complex, complex_to_json(K));
    save_json_file(gen_out_field, field_to_json(result.field));
    std::cerr << "complex: " << K.size() << " simplices, field: " << result.field.vector_count()
              << " vectors, p = " << result.achieved_p << " after " << result.merges
              << " merges (seed " << gen_seed << ")\n";
  });

  // ---- bench ----
  auto* bench_cmd = app.add_subcommand("bench", "Time ConMat against ConnectMat");
  std::vector<std::string> bench_presets{"quick"};
  std::string bench_csv, bench_md;
  int bench_reps = 3;
  double bench_timeout = 0;
  std::uint64_t bench_seed = 1;
  bool bench_no_validate = false, bench_parallel = false;
  bench_cmd->add_option("--preset", bench_presets,
                        "quick | soup26k | graph101k | grid21 | simplex12");
  bench_cmd->add_option("--reps", bench_reps, "repetitions per timing (median)");
  bench_cmd->add_option("--timeout", bench_timeout, "per-reduction timeout in seconds");
  bench_cmd->add_option("--seed", bench_seed, "seed for generated instances");
  bench_cmd->add_flag("--no-validate", bench_no_validate, "skip cross-validation");
  bench_cmd->add_flag("--parallel", bench_parallel,
                      "correctness-only sweep, instances in parallel, no timings");
  bench_cmd->add_option("--csv", bench_csv, "write rows as CSV here");
  bench_cmd->add_option("--md", bench_md, "write rows as Markdown here");
  bench_cmd->callback([&] {
    std::vector<BenchInstance> instances;
    auto coarse = [&](SimplicialComplex K, double p, const std::string& name) {
      auto field = coarsen_to(K, MultivectorField::singletons(K), p, bench_seed).field;
      instances.push_back({name, std::move(K), std::move(field)});
    };
    for (const auto& preset : bench_presets) {
      if (preset == "quick") {
        coarse(triangle_soup_complex(25, 500, bench_seed), 0.05, "quick-soup");
        coarse(dense_graph_complex(120, 1500, bench_seed), 0.03, "quick-graph");
      } else if (preset == "soup26k") {
        coarse(triangle_soup_complex(55, 25001, bench_seed), 0.0636, "soup26k");
      } else if (preset == "graph101k") {
        coarse(dense_graph_complex(1056, 100000, bench_seed), 0.0309, "graph101k");
      } else if (preset == "simplex12") {
        coarse(full_simplex_complex(12), 0.4597, "simplex12");
      } else if (preset == "grid21") {
        const SampledField samples = sample_builtin_g(-3, 3, -3, 3, 21, 21);
        const GridComplex G = triangulate_grid(samples);
        MultivectorField V = discretize_field(G, samples);
        instances.push_back({"grid21", G.complex, std::move(V)});
      } else {
        throw ValidationError("unknown preset '" + preset + "'");
      }
    }
    BenchOptions opt;
    opt.repetitions = bench_reps;
    opt.timeout_seconds = bench_timeout;
    opt.validate = !bench_no_validate;
    opt.correctness_only = bench_parallel;
    opt.parallel = bench_parallel;
    const auto rows = run_benchmark(instances, opt);
    write_benchmark_markdown(std::cout, rows);
    if (!bench_csv.empty()) {
      std::ofstream out(bench_csv);
      if (!out) throw IoError("cannot open '" + bench_csv + "' for writing");
      write_benchmark_csv(out, rows);
    }
    if (!bench_md.empty()) {
      std::ofstream out(bench_md);
      if (!out) throw IoError("cannot open '" + bench_md + "' for writing");
      write_benchmark_markdown(out, rows);
    }
    for (const auto& r : rows)
      if (r.status == "timeout") throw TimeoutError("instance " + r.name + " timed out");
  });

  // ---- validate ----
  auto* val_cmd = app.add_subcommand("validate", "Validate a complex/field/connection file set");
  std::string val_complex, val_field, val_connection;
  val_cmd->add_option("--complex", val_complex, "complex JSON")->required();
  val_cmd->add_option("--field", val_field, "field JSON");
  val_cmd->add_option("--connection", val_connection, "connection matrix JSON");
  val_cmd->callback([&] {
    auto in = load_inputs(val_complex, val_field);
    const auto md = minimum_morse_decomposition(in.complex, in.field);
    std::cerr << "complex: " << in.complex.size() << " simplices, field: "
              << in.field.vector_count() << " vectors, morse sets: " << md.count() << "\n";
    if (!val_connection.empty()) {
      const ConnectionMatrix cm = connection_from_json(load_json_file(val_connection));
      PosetReach reach(md);
      validate_connection_matrix(cm, reach);
      if (!betti_match(cm, in.complex))
        throw ValidationError("Betti numbers of the connection matrix differ from the complex");
      std::cerr << "connection matrix: " << cm.size() << " generators, all checks passed\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage counts as an I/O-level failure
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const conley::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return 3;
  } catch (const conley::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const conley::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
