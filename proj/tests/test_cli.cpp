#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "vaba/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<const char*> args) {
  args.insert(args.begin(), "vaba-lab");
  return vaba::cli::run(static_cast<int>(args.size()), args.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("vaba-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run writes csv, summary and trace files") {
  TempDir tmp;
  auto csv = (tmp.path / "out.csv").string();
  auto trace = (tmp.path / "trace.jsonl").string();
  int rc = run_cli({"run", "--n", "4", "--f", "1", "--adversary", "fair", "--validator", "even",
                    "--seed", "2", "--runs", "3", "--out", csv.c_str(), "--trace", trace.c_str()});
  CHECK(rc == 0);

  std::string csv_text = slurp(csv);
  CHECK(csv_text.rfind("run_seed,", 0) == 0);
  CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') == 4);  // header + 3 rows

  std::string summary = slurp(csv + ".summary.json");
  CHECK(summary.find("\"runs\": 3") != std::string::npos);

  std::string trace_text = slurp(trace);
  CHECK(trace_text.find("\"kind\":\"send\"") != std::string::npos);
}

TEST_CASE("serial and default runs write identical files") {
  TempDir tmp;
  auto a = (tmp.path / "a.csv").string();
  auto b = (tmp.path / "b.csv").string();
  CHECK(run_cli({"run", "--n", "4", "--f", "1", "--seed", "9", "--runs", "8", "--out",
                 a.c_str()}) == 0);
  CHECK(run_cli({"run", "--n", "4", "--f", "1", "--seed", "9", "--runs", "8", "--serial", "--out",
                 b.c_str()}) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("sweep executes every config in the file") {
  TempDir tmp;
  auto out1 = (tmp.path / "one.csv").string();
  auto out2 = (tmp.path / "two.csv").string();
  auto cfg = tmp.path / "sweep.json";
  {
    std::ofstream f(cfg);
    f << R"([
      {"n": 4, "f": 1, "adversary": "fair", "seed": 1, "runs": 2, "out": ")" << out1 << R"("},
      {"n": 4, "f": 1, "adversary": "crash", "seed": 1, "runs": 2, "out": ")" << out2 << R"("}
    ])";
  }
  CHECK(run_cli({"sweep", "--config", cfg.string().c_str()}) == 0);
  CHECK(slurp(out1).rfind("run_seed,", 0) == 0);
  CHECK(slurp(out2).rfind("run_seed,", 0) == 0);
}

TEST_CASE("bad arguments are rejected") {
  CHECK(run_cli({"run", "--n", "4"}) != 0);                                   // missing --f
  CHECK(run_cli({"run", "--n", "4", "--f", "1", "--adversary", "bogus"}) != 0);
  CHECK(run_cli({"run", "--n", "3", "--f", "1"}) == 2);                       // n < 3f+1
  CHECK(run_cli({"sweep", "--config", "/nonexistent/sweep.json"}) == 2);
  CHECK(run_cli({}) != 0);
}
