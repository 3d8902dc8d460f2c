#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + PLANCHEREL_BIN + " " + args + " 2>/dev/null";
  Run r{0, {}};
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  auto d = fs::temp_directory_path() / ("plancherel_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("curve --t2 0.2").code == 0);
  CHECK(run("curve --t2 1").code == 4);
  CHECK(run("curve --family xp --p 3 --t 2").code == 4);
  CHECK(run("fg --t2 0.2 --gmax 2 --local-order 3").code == 5);
  CHECK(run("fg --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("curve --t2 0.2", "PLANCHEREL_PRECISION=banana").code == 2);
  CHECK(run("shape --q 4 --t2 0 --t3 -3").code == 4);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  auto a = run("oracle --q 3 --t2 0.2 --max-weight 14 --threads 1");
  auto b = run("oracle --q 3 --t2 0.2 --max-weight 14 --threads 4");
  REQUIRE(a.code == 0);
  auto at = b.out.find("\"threads\": 4");
  REQUIRE(at != std::string::npos);
  b.out[at + 11] = '1';
  CHECK(a.out == b.out);
  auto c = run("fg --t2 0.2 --gmax 2"), d = run("fg --t2 0.2 --gmax 2");
  CHECK(c.out == d.out);
}

TEST_CASE("file output is atomic") {
  auto dir = scratch();
  auto good = dir / "fg.json", bad = dir / "bad.json";
  REQUIRE(run("fg --t2 0.2 --gmax 2 --out " + good.string()).code == 0);
  CHECK(slurp(good).find("\"schema\"") != std::string::npos);
  CHECK(run("curve --t2 1 --out " + bad.string()).code == 4);
  CHECK_FALSE(fs::exists(bad));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("shape csv") {
  auto r = run("shape --q 9 --points 25");
  REQUIRE(r.code == 0);
  int lines = 0, comments = 0;
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);) (l.rfind("#", 0) == 0 ? comments : lines)++;
  CHECK(lines == 26);
  CHECK(comments >= 2);
}

TEST_CASE("precision from the environment is recorded") {
  auto r = run("curve --t2 0.2", "PLANCHEREL_PRECISION=128");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"precision_bits\": 128") != std::string::npos);
}

TEST_CASE("verify quick profile reports every criterion") {
  auto r = run("verify --quick");
  int lines = 0;
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);)
    if (l.rfind("PASS [", 0) == 0 || l.rfind("FAIL [", 0) == 0 || l.rfind("SKIP [", 0) == 0) ++lines;
  CHECK(lines == 12);
}
