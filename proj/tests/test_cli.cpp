#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qres/io.hpp"
#include "qres/matrix.hpp"

using namespace qres;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/qres_cli_stdout.tmp";
  const std::string cmd =
      std::string(QRES_CLI_PATH) + " " + args + " > " + out_path + " 2> /tmp/qres_cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(QRES_FIXTURE_DIR) + "/" + name;
}

std::string golden(const std::string& name) {
  return slurp(fixture("golden/" + name));
}

void check_golden(const std::string& args, const std::string& golden_name) {
  CAPTURE(args);
  const RunResult r = run_cli(args);
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden(golden_name));
}

}  // namespace

TEST_CASE("command output matches the frozen transcripts") {
  check_golden("reshuffle " + fixture("alpha.json") + " --dims 2 2", "reshuffle_alpha.json");
  check_golden("reshuffle " + fixture("alpha.json") + " --dims 2 2 --variant alternative",
               "reshuffle_alpha_alt.json");
  check_golden("reshuffle " + fixture("alpha.json") + " --dims 2 2 --plain",
               "reshuffle_alpha_plain.txt");
  check_golden("schmidt " + fixture("bell_vec.json") + " --dims 2 2", "schmidt_bell.json");
  check_golden("schmidt " + fixture("product_vec.json") + " --dims 2 2", "schmidt_product.json");
  check_golden("schmidt " + fixture("bell_proj.json") + " --dims 2 2 --mode operator",
               "schmidt_maxent_operator.json");
  check_golden("channel " + fixture("depol05.json") + " --action choi",
               "channel_depol_choi.json");
  check_golden("channel " + fixture("depol05.json") + " --action kraus",
               "channel_depol_kraus.json");
  check_golden("channel " + fixture("depol05.json") + " --action check-cp",
               "channel_depol_check-cp.json");
  check_golden("channel " + fixture("depol05.json") + " --action check-tp",
               "channel_depol_check-tp.json");
  check_golden("channel " + fixture("depol05.json") + " --action check-unital",
               "channel_depol_check-unital.json");
  check_golden("ppt " + fixture("werner05.json") + " --dims 2 2", "ppt_werner05.json");
  check_golden("ppt " + fixture("werner025.json") + " --dims 2 2", "ppt_werner025.json");
  check_golden("ppt " + fixture("bell_proj.json") + " --dims 2 2", "ppt_bell.json");
  check_golden("compose " + fixture("transpose_superop.json") + " " +
                   fixture("identity_kraus.json"),
               "compose_t1.json");
  check_golden("partial-trace " + fixture("bell_proj.json") + " --dims 2 2 --mode first",
               "ptrace_bell_first.json");
  check_golden("partial-transpose " + fixture("bell_proj.json") + " --dims 2 2 --mode first",
               "pt_bell_first.json");
}

TEST_CASE("identical invocations are byte-identical") {
  const std::string args = "schmidt " + fixture("bell_vec.json") + " --dims 2 2";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("matrix output feeds back in losslessly") {
  const RunResult once = run_cli("reshuffle " + fixture("alpha.json") + " --dims 2 2");
  REQUIRE(once.exit_code == 0);
  const std::string inter = "/tmp/qres_cli_roundtrip.json";
  {
    std::ofstream out(inter, std::ios::binary);
    out << once.out;
  }
  const RunResult twice = run_cli("reshuffle " + inter + " --dims 2 2");
  REQUIRE(twice.exit_code == 0);

  // Reordering twice over a symmetric split restores the input exactly.
  const ComplexMatrix back = io::matrix_from_json(nlohmann::json::parse(twice.out));
  const ComplexMatrix alpha = io::load_matrix(fixture("alpha.json"));
  CHECK(max_abs_diff(back, alpha) == 0.0);
}

TEST_CASE("dash reads the matrix from standard input") {
  const RunResult r = run_cli("reshuffle - --dims 2 2 < " + fixture("alpha.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("reshuffle_alpha.json"));
}

TEST_CASE("parse failures exit with code two") {
  CHECK(run_cli("reshuffle " + fixture("malformed.json") + " --dims 2 2").exit_code == 2);
  CHECK(run_cli("reshuffle /nonexistent.json --dims 2 2").exit_code == 2);
  CHECK(run_cli("channel " + fixture("badspec.json") + " --action superop").exit_code == 2);
  CHECK(run_cli("reshuffle " + fixture("alpha.json") + " --dims 2 2 --variant bogus").exit_code ==
        2);
  CHECK(run_cli("schmidt " + fixture("bell_vec.json")).exit_code == 2);  // missing --dims
}

TEST_CASE("contract violations exit with code three") {
  CHECK(run_cli("reshuffle " + fixture("threebythree.json") + " --dims 2 2").exit_code == 3);
  CHECK(run_cli("ppt " + fixture("nonhermitian.json") + " --dims 2 2").exit_code == 3);
  CHECK(run_cli("schmidt " + fixture("bell_proj.json") + " --dims 2 2").exit_code == 3);
  CHECK(run_cli("channel " + fixture("halfident_kraus.json") + " --action jamiolkowski")
            .exit_code == 3);
}

TEST_CASE("kraus extraction from a non-CP channel exits with code four") {
  const RunResult r =
      run_cli("channel " + fixture("transpose_superop.json") + " --action kraus");
  CHECK(r.exit_code == 4);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("reshuffle --help").exit_code == 0);
}

TEST_CASE("non-CP channels still answer the checks on exit zero") {
  const RunResult cp =
      run_cli("channel " + fixture("transpose_superop.json") + " --action check-cp");
  CHECK(cp.exit_code == 0);
  const auto parsed = nlohmann::json::parse(cp.out);
  CHECK(parsed.at("verdict").get<bool>() == false);
  CHECK(parsed.at("witness_eigenvalue").get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
}
