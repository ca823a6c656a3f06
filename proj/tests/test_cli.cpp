// End-to-end checks of the command line tool: config parsing, report shape,
// determinism, and exit codes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#ifndef LMOP_CLI_PATH
#error "LMOP_CLI_PATH must point at the built binary"
#endif

namespace {

using nlohmann::json;

std::string temp_dir() {
  const char* t = std::getenv("TMPDIR");
  return t ? t : "/tmp";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  out << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LMOP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

const char* kAngelescoConfig = R"({
  "command": "normality-table",
  "n_max": 3,
  "system": {
    "t0": 0.0, "closed_end": "left",
    "angelesco_arcs": [[0.2, 2.9], [3.3, 6.0]],
    "measures": [
      {"type": "atoms", "atoms": [[0.5,1.0],[1.2,0.7],[2.0,1.3],[2.6,0.5]]},
      {"type": "atoms", "atoms": [[3.6,1.0],[4.4,0.8],[5.1,1.1],[5.7,0.6]]}
    ]
  }
})";

}  // namespace

TEST_CASE("normality table emits one row per index and exit 0") {
  const std::string dir = temp_dir();
  const std::string cfg = dir + "/lmop_cli_cfg1.json";
  const std::string out = dir + "/lmop_cli_out1.jsonl";
  write_file(cfg, kAngelescoConfig);
  CHECK(run_cli("--config " + cfg + " --out " + out) == 0);

  std::ifstream in(out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json row = json::parse(line);
    CHECK(row["normal"].get<bool>());
    CHECK(row.contains("det"));
    CHECK(row.contains("sigma_min"));
    ++rows;
  }
  CHECK(rows == 10);  // all |n| <= 3 with r = 2
}

TEST_CASE("reports are byte-for-byte reproducible across runs and jobs") {
  const std::string dir = temp_dir();
  const std::string cfg = dir + "/lmop_cli_cfg2.json";
  write_file(cfg, kAngelescoConfig);
  const std::string out1 = dir + "/lmop_cli_out2a.jsonl";
  const std::string out2 = dir + "/lmop_cli_out2b.jsonl";
  REQUIRE(run_cli("--config " + cfg + " --out " + out1) == 0);
  REQUIRE(run_cli("--config " + cfg + " --out " + out2 + " --jobs 4") == 0);
  CHECK(read_file(out1) == read_file(out2));

  const std::string id_cfg = dir + "/lmop_cli_cfg_id.json";
  write_file(id_cfg, R"({"command":"verify-identities","seed":7})");
  const std::string out3 = dir + "/lmop_cli_out3a.jsonl";
  const std::string out4 = dir + "/lmop_cli_out3b.jsonl";
  REQUIRE(run_cli("--config " + id_cfg + " --out " + out3) == 0);
  REQUIRE(run_cli("--config " + id_cfg + " --out " + out4) == 0);
  CHECK(read_file(out3) == read_file(out4));
}

TEST_CASE("malformed configs exit with status 2") {
  const std::string dir = temp_dir();
  const std::string bad = dir + "/lmop_cli_bad.json";
  write_file(bad, "this is not json");
  CHECK(run_cli("--config " + bad) == 2);

  const std::string incomplete = dir + "/lmop_cli_incomplete.json";
  write_file(incomplete, R"({"command":"solve"})");
  CHECK(run_cli("--config " + incomplete) == 2);

  CHECK(run_cli("--config " + dir + "/does_not_exist.json") == 2);
}

TEST_CASE("failed checks exit with status 1") {
  // Two identical measures: nothing beyond the trivial index is normal.
  const std::string dir = temp_dir();
  const std::string cfg = dir + "/lmop_cli_dup.json";
  write_file(cfg, R"({
    "command": "normality-table", "n_max": 2,
    "system": {"t0": 0.0, "closed_end": "left", "measures": [
      {"type": "atoms", "atoms": [[0.5,1.0],[1.5,0.7],[2.5,1.3]]},
      {"type": "atoms", "atoms": [[0.5,1.0],[1.5,0.7],[2.5,1.3]]}
    ]}
  })");
  CHECK(run_cli("--config " + cfg) == 1);
}

TEST_CASE("solve emits coefficient rows in the documented schema") {
  const std::string dir = temp_dir();
  const std::string cfg = dir + "/lmop_cli_solve.json";
  const std::string out = dir + "/lmop_cli_solve_out.jsonl";
  write_file(cfg, R"({
    "command": "solve", "what": "phi", "indices": [[2]],
    "system": {"t0": 0.0, "closed_end": "left", "measures": [{"type": "lebesgue"}]}
  })");
  REQUIRE(run_cli("--config " + cfg + " --out " + out) == 0);
  const json row = json::parse(read_file(out).substr(0, read_file(out).find('\n')));
  CHECK(row["normal"].get<bool>());
  CHECK(row["residual_max"].get<double>() < 1e-12);
  // phi for the Lebesgue measure at total order 2 is z: one coefficient pair.
  bool found_z = false;
  for (const auto& triple : row["coeffs"])
    if (triple[0].get<int>() == 2 &&
        std::abs(triple[1].get<double>() - 1.0) < 1e-12)
      found_z = true;
  CHECK(found_z);
}

TEST_CASE("AT system configs carry the certificate into the report") {
  const std::string dir = temp_dir();
  const std::string cfg = dir + "/lmop_cli_at.json";
  const std::string out = dir + "/lmop_cli_at_out.jsonl";
  write_file(cfg, R"({
    "command": "normality-table", "n_max": 2,
    "system": {"t0": 0.0, "closed_end": "left,",
      "at_system": {"alpha": 0.5, "beta": 2.5, "nodes": 80,
        "weights": [{"kind": "uniform"}, {"kind": "trig_poly", "cos": [1.0, 0.5]}],
        "index": [2, 2], "samples": 32, "seed": 5}}
  })");
  // Fix the deliberate typo in closed_end first: it must be rejected.
  CHECK(run_cli("--config " + cfg) == 2);
  write_file(cfg, R"({
    "command": "normality-table", "n_max": 2,
    "system": {"t0": 0.0, "closed_end": "left",
      "at_system": {"alpha": 0.5, "beta": 2.5, "nodes": 80,
        "weights": [{"kind": "uniform"}, {"kind": "trig_poly", "cos": [1.0, 0.5]}],
        "index": [2, 2], "samples": 32, "seed": 5}}
  })");
  REQUIRE(run_cli("--config " + cfg + " --out " + out) == 0);
  const std::string text = read_file(out);
  const json first = json::parse(text.substr(0, text.find('\n')));
  CHECK(first["check"] == "at_certificate");
  CHECK(first["dimension"].get<int>() == 4);
  CHECK(first["min_abs_det"].get<double>() > 0.0);
}
