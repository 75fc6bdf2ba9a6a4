#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(NOMA_MEC_SIM_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("noma_mec_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("simulate writes a CSV and exits 0") {
    TempDir dir;
    const auto out = dir.path / "rows.csv";
    CHECK(run("simulate --sweep n_uds=4,8 --schemes joint,local --trials 2 --out " +
              out.string()) == 0);
    const auto text = slurp(out);
    CHECK(text.rfind("scheme,sweep_var,sweep_value,trial,", 0) == 0);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 1 + 2 * 2 * 2);
  }

  TEST_CASE("config errors exit 1") {
    TempDir dir;
    const auto cfg = dir.path / "bad.json";
    std::ofstream(cfg) << R"({"n_uds": 0})";
    CHECK(run("simulate --config " + cfg.string() + " --sweep density=100 --out " +
              (dir.path / "o.csv").string()) == 1);
    CHECK(run("simulate --sweep speed=1 --out " + (dir.path / "o.csv").string()) == 1);
    CHECK(run("simulate --sweep n_uds=4 --schemes nope --out " + (dir.path / "o.csv").string()) ==
          1);
  }

  TEST_CASE("I/O errors exit 2") {
    TempDir dir;
    CHECK(run("simulate --sweep n_uds=4 --out /nonexistent-dir/x/out.csv") == 2);
    CHECK(run("simulate --config " + (dir.path / "missing.json").string() +
              " --sweep n_uds=4 --out " + (dir.path / "o.csv").string()) == 2);
  }

  TEST_CASE("summarize and dump-graph") {
    TempDir dir;
    const auto rows = dir.path / "rows.csv";
    REQUIRE(run("simulate --sweep n_uds=6 --schemes joint --trials 3 --out " + rows.string()) == 0);
    const auto summary = dir.path / "summary.json";
    CHECK(run("summarize --in " + rows.string() + " --out " + summary.string() +
              " --format json") == 0);
    CHECK(slurp(summary).find("\"joint\"") != std::string::npos);
    const auto dump = dir.path / "graph.txt";
    CHECK(run("dump-graph --kind pruned --seed 3 --out " + dump.string()) == 0);
    CHECK(slurp(dump).rfind("graph pruned vertices ", 0) == 0);
  }
}
