#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "conley/io.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace conley;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out, err;
};

fs::path workdir() {
  auto p = fs::temp_directory_path() / "conley_cli_test";
  fs::create_directories(p);
  return p;
}

CliResult run_cli(const std::string& args) {
  auto dir = workdir();
  auto out = (dir / "stdout.txt").string(), err = (dir / "stderr.txt").string();
  std::string cmd = std::string("\"") + CONLEY_CLI_PATH + "\" " + args + " > " + out + " 2> " + err;
  int rc = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp_file(out);
  r.err = slurp_file(err);
  return r;
}

// Annulus inputs on disk, shared by most cases.
struct Files {
  std::string complex, field;
};

Files annulus_files() {
  auto dir = workdir();
  Files f{(dir / "annulus.json").string(), (dir / "annulus_field.json").string()};
  auto K = fx::annulus_complex();
  save_json_file(f.complex, complex_to_json(K));
  save_json_file(f.field, field_to_json(fx::annulus_field(K)));
  return f;
}

}  // namespace

TEST_CASE("cli usage and parse errors") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("--help").out.find("morse") != std::string::npos);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("connect").code == 2);               // missing --complex
  CHECK(run_cli("connect --complex x --bogus").code == 2);
  CHECK(run_cli("connect --complex missing.json").code == 2);  // I/O failure
}

TEST_CASE("cli morse") {
  auto f = annulus_files();
  auto r = run_cli("morse --complex " + f.complex + " --field " + f.field);
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["morse_sets"].size() == 4);
  CHECK(j["linear_ext"] == json::array({0, 1, 2, 3}));

  // Singletons by default: every simplex its own Morse set here.
  auto r2 = run_cli("morse --complex " + f.complex);
  REQUIRE(r2.code == 0);
  CHECK(json::parse(r2.out)["morse_sets"].size() == 11);
}

TEST_CASE("cli connect with both algorithms and checks") {
  auto f = annulus_files();
  auto dir = workdir();
  auto out = (dir / "cm.json").string();
  auto r = run_cli("connect --complex " + f.complex + " --field " + f.field +
                   " --algorithm both --check --out " + out);
  REQUIRE(r.code == 0);
  auto a = load_json_file(out + ".conmat");
  auto b = load_json_file(out + ".connectmat");
  CHECK(a["kept"] == json::array({0, 8, 5, 9, 10}));
  CHECK(b["kept"] == json::array({0, 6, 5, 9, 10}));
  CHECK(a["entries"] == json::array({{2, 3}, {1, 4}, {2, 4}}));
  CHECK(b["entries"] == a["entries"]);

  auto dump = (dir / "dump.txt").string();
  auto r2 = run_cli("connect --complex " + f.complex + " --field " + f.field +
                    " --dump-matrix " + dump + " --out " + out);
  REQUIRE(r2.code == 0);
  CHECK(slurp_file(dump).find("\"order\"") != std::string::npos);

  // A non-convex vector in the field file is a validation failure.
  auto badfield = (dir / "bad_field.json").string();
  write_text_file(badfield, "{\"vectors\": [[0, 9]]}");
  CHECK(run_cli("connect --complex " + f.complex + " --field " + badfield).code == 1);
}

TEST_CASE("cli connect respects order overrides") {
  auto dir = workdir();
  auto K = fx::fan_complex();
  auto cpath = (dir / "fan.json").string(), fpath = (dir / "fan_field.json").string(),
       opath = (dir / "fan_order.json").string(), mpath = (dir / "fan_cm.json").string();
  save_json_file(cpath, complex_to_json(K));
  save_json_file(fpath, field_to_json(fx::fan_field(K)));
  save_json_file(opath, json{{"order", {0, 1, 2, 3, 4, 5, 7, 6, 8}}});
  auto r = run_cli("connect --complex " + cpath + " --field " + fpath + " --order " + opath +
                   " --out " + mpath);
  REQUIRE(r.code == 0);
  auto cm = load_json_file(mpath);
  CHECK(cm["kept"] == json::array({0, 1, 2, 3, 4, 5, 7}));  // BD survives, not AD
  save_json_file(opath, json{{"order", {0, 1, 2, 3, 4, 6, 5, 7, 8}}});
  CHECK(run_cli("connect --complex " + cpath + " --field " + fpath + " --order " + opath).code ==
        1);
}

TEST_CASE("cli connect timeout maps to exit 3") {
  auto dir = workdir();
  auto c = (dir / "big.json").string(), f = (dir / "big_field.json").string();
  auto r = run_cli("gen --kind full-simplex --dim 9 --target-p 0.3 --seed 5 --out-complex " + c +
                   " --out-field " + f);
  REQUIRE(r.code == 0);
  CHECK(run_cli("connect --complex " + c + " --field " + f + " --timeout 1e-9").code == 3);
  CHECK(run_cli("connect --complex " + c + " --field " + f + " --timeout 60").code == 0);
}

TEST_CASE("cli persist") {
  auto f = annulus_files();
  auto dir = workdir();
  auto r = run_cli("persist --complex " + f.complex + " --field " + f.field + " --check --csv -");
  REQUIRE(r.code == 0);
  CHECK(r.out == "dim,birth,death\n0,8,inf\n1,8,10\n1,9,10\n");
  CHECK(r.err.find("equivalence check passed") != std::string::npos);

  auto csv = (dir / "bars.csv").string(), svg = (dir / "bars.svg").string();
  auto r2 = run_cli("persist --complex " + f.complex + " --field " + f.field + " --csv " + csv +
                    " --svg " + svg + " --keep-zero-bars");
  REQUIRE(r2.code == 0);
  CHECK(slurp_file(csv).find("0,8,8\n") != std::string::npos);
  CHECK(slurp_file(svg).find("<svg") == 0);

  auto lyap = (dir / "lyap.json").string();
  write_text_file(lyap, "{\"values\": [5, 4, 10, 10]}");
  CHECK(run_cli("persist --complex " + f.complex + " --field " + f.field + " --lyapunov " + lyap +
                " --csv -")
            .code == 1);
  write_text_file(lyap, "{\"values\": [0, 1, 2, 2]}");
  auto r3 = run_cli("persist --complex " + f.complex + " --field " + f.field + " --lyapunov " +
                    lyap + " --check --csv -");
  REQUIRE(r3.code == 0);
  CHECK(r3.out == "dim,birth,death\n0,0,inf\n1,0,2\n1,1,2\n");
}

TEST_CASE("cli discretize, validate, and connect chain") {
  auto dir = workdir();
  auto c = (dir / "grid.json").string(), f = (dir / "grid_field.json").string();
  auto r = run_cli("discretize --builtin-field g --resolution 7 --out-complex " + c +
                   " --out-field " + f);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("simplices") != std::string::npos);
  CHECK(run_cli("validate --complex " + c + " --field " + f).code == 0);
  CHECK(run_cli("connect --complex " + c + " --field " + f + " --check --out " +
                (dir / "grid_cm.json").string())
            .code == 0);
  CHECK(run_cli("discretize --resolution 7").code == 1);
}

TEST_CASE("cli gen families and mixed parsing") {
  auto dir = workdir();
  auto c = (dir / "gen.json").string(), f = (dir / "gen_field.json").string();
  auto r = run_cli("gen --kind mixed --vertices 7 --mixed 2:5 3:1 --target-p 0.1 --seed 3"
                   " --out-complex " + c + " --out-field " + f);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("merges") != std::string::npos);
  CHECK(run_cli("validate --complex " + c + " --field " + f).code == 0);
  CHECK(run_cli("gen --kind mixed --mixed nonsense --out-complex " + c + " --out-field " + f)
            .code == 1);
}

TEST_CASE("cli bench quick preset") {
  auto dir = workdir();
  auto csv = (dir / "bench.csv").string();
  auto r = run_cli("bench --preset quick --reps 1 --seed 2 --csv " + csv);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("| instance |") == 0);
  CHECK(r.out.find("quick-soup") != std::string::npos);
  CHECK(r.out.find("quick-graph") != std::string::npos);
  auto rows = slurp_file(csv);
  CHECK(rows.find("quick-soup") != std::string::npos);
  auto rp = run_cli("bench --preset quick --seed 2 --parallel");
  REQUIRE(rp.code == 0);
  CHECK(rp.out.find("validated") != std::string::npos);
}

TEST_CASE("cli validate rejects a tampered connection matrix") {
  auto f = annulus_files();
  auto dir = workdir();
  auto out = (dir / "vcm.json").string();
  REQUIRE(run_cli("connect --complex " + f.complex + " --field " + f.field + " --out " + out)
              .code == 0);
  CHECK(run_cli("validate --complex " + f.complex + " --field " + f.field + " --connection " +
                out)
            .code == 0);
  auto j = load_json_file(out);
  j["entries"] = json::array({{0, 1}});  // same-block entry, breaks the diagonal rule
  save_json_file(out, j);
  CHECK(run_cli("validate --complex " + f.complex + " --field " + f.field + " --connection " +
                out)
            .code == 1);
}
