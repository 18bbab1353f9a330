#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "scatter2d/cli.hpp"

using namespace scatter2d;
using std::numbers::pi;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "scatter2d");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// CSV body as rows of cells, header first
std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : split(text, '\n')) {
    if (!line.empty()) rows.push_back(split(line, ','));
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* value) { setenv("SCATTER2D_THREADS", value, 1); }
  ~ThreadsEnv() { unsetenv("SCATTER2D_THREADS"); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("phase-shift for 1/r^2") {
    const auto r = invoke({"phase-shift", "--inverse-square", "--two-m-lambda", "3", "--ell", "1"});
    REQUIRE(r.code == 0);
    const auto t = csv(r.out);
    REQUIRE(t.size() == 2);
    CHECK(t[0] == std::vector<std::string>{"potential", "m", "k", "a", "a_start", "shrink", "tol", "ell", "method",
                                           "tan_delta", "delta", "sin_delta"});
    const double delta = std::stod(t[1][column(t[0], "delta")]);
    CHECK(std::abs(std::remainder(delta + pi / 2, pi)) < 1e-12);
    CHECK(t[1][column(t[0], "m")] == "0.5");
  }

  TEST_CASE("sweep-a for the running coupling") {
    const auto r = invoke({"sweep-a", "--scheme", "log", "--a0", "1", "--k", "0.7357588823"});
    REQUIRE(r.code == 0);
    const auto t = csv(r.out);
    const std::size_t kind = column(t[0], "kind"), est = column(t[0], "estimate");
    double limit = NAN, closed = NAN;
    int finite_rows = 0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i][kind] == "finite") ++finite_rows;
      if (t[i][kind] == "limit") limit = std::stod(t[i][est]);
      if (t[i][kind] == "closed_form") closed = std::stod(t[i][est]);
    }
    CHECK(finite_rows >= 8);
    CHECK(std::abs(closed + pi / 2) < 1e-9);
    // the a -> 0 limit of the matching solution at m = 1/2
    CHECK(std::abs(limit - (pi / 2) / (std::log(0.7357588823 / 2) - 0.25)) < 1e-4);
  }

  TEST_CASE("sae-check report") {
    const auto r = invoke({"sae-check", "--tan-delta0", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("scale-invariant: true\n") != std::string::npos);
    const auto f = invoke({"sae-check", "--tan-delta0", "0.5"});
    CHECK(f.out.find("scale-invariant: false\n") != std::string::npos);
    const auto j = invoke({"sae-check", "--tan-delta0", "0", "--format", "json"});
    CHECK(j.out.find("\"scale_invariant\": true") != std::string::npos);
  }

  TEST_CASE("cross-section and oracle-compare") {
    const auto c = invoke({"cross-section", "--inverse-square", "--two-m-lambda", "1", "--k-grid", "1,9", "--L", "6",
                           "--n-theta", "5"});
    REQUIRE(c.code == 0);
    const auto t = csv(c.out);
    REQUIRE(t.size() == 11);
    const std::size_t kd = column(t[0], "k_dsigma");
    for (std::size_t i = 1; i <= 5; ++i) {
      CHECK(std::abs(std::stod(t[i][kd]) - std::stod(t[i + 5][kd])) < 1e-10 * (1 + std::stod(t[i][kd])));
    }

    const auto o = invoke({"oracle-compare", "--scheme", "const", "--v", "-2", "--a", "0.1", "--k", "1"});
    REQUIRE(o.code == 0);
    const auto u = csv(o.out);
    CHECK(std::stod(u[1][column(u[0], "max_abs_difference")]) < 1e-6);
  }

  TEST_CASE("usage errors exit 2") {
    const std::vector<std::vector<std::string>> bad = {
        {"phase-shift"},
        {"phase-shift", "--inverse-square", "--scheme", "log", "--a0", "1"},
        {"phase-shift", "--inverse-square"},
        {"phase-shift", "--inverse-square", "--lambda", "1", "--two-m-lambda", "2"},
        {"phase-shift", "--scheme", "log"},
        {"phase-shift", "--scheme", "const", "--v", "1", "--a0", "1"},
        {"phase-shift", "--scheme", "log", "--a0", "1", "--k-grid", "2,1"},
        {"phase-shift", "--scheme", "log", "--a0", "1", "--k", "-1"},
        {"phase-shift", "--scheme", "log", "--a0", "1", "--ell-range", "3:1"},
        {"sweep-a", "--inverse-square", "--lambda", "1"},
        {"sweep-a", "--scheme", "log", "--a0", "1", "--a", "0.1"},
        {"oracle-compare", "--scheme", "log", "--a0", "1"},
        {"sae-check"},
        {"sae-check", "--tan-delta0", "0", "--inverse-square", "--lambda", "1"},
        {"phase-shift", "--scheme", "exp"},
        {"bogus"},
        {},
    };
    for (const auto& args : bad) {
      const auto r = invoke(args);
      CHECK(r.code == 2);
      CHECK(r.out.empty());
    }
    CHECK(invoke({"phase-shift"}).err.rfind("usage error: ", 0) == 0);
  }

  TEST_CASE("module errors exit 1 with a diagnostic") {
    // disc radius at the pole of the running coupling
    const auto pole = invoke({"phase-shift", "--scheme", "log", "--a0", "1", "--a", "0.5614594835668851"});
    CHECK(pole.code == 1);
    CHECK(pole.err.rfind("error: ", 0) == 0);
    CHECK(pole.out.empty());
    // sequence starting beyond half the pole radius
    const auto res = invoke({"sweep-a", "--scheme", "log", "--a0", "1", "--a-start", "0.4"});
    CHECK(res.code == 1);
    CHECK(res.err.rfind("error: ", 0) == 0);
  }

  TEST_CASE("output is byte-identical and independent of thread count") {
    const std::vector<std::string> args = {"phase-shift", "--scheme", "log", "--a0", "1", "--k-grid",
                                           "0.3,0.7,1.1,2.5", "--ell-range", "0:2"};
    std::string serial, parallel;
    {
      ThreadsEnv env("0");
      serial = invoke(args).out;
      CHECK(serial == invoke(args).out);
    }
    {
      ThreadsEnv env("4");
      parallel = invoke(args).out;
    }
    CHECK(serial == parallel);
    CHECK(csv(serial).size() == 13);
    CHECK(serial.find('\r') == std::string::npos);
  }

  TEST_CASE("thread_count") {
    {
      ThreadsEnv env("0");
      CHECK(cli::thread_count() == 1);
    }
    {
      ThreadsEnv env("3");
      CHECK(cli::thread_count() == 3);
    }
    {
      ThreadsEnv env("x");
      CHECK(cli::thread_count() >= 1);
    }
  }

  TEST_CASE("json mirrors csv columns") {
    const std::vector<std::string> base = {"phase-shift", "--inverse-square", "--lambda", "0.7", "--ell-range", "0:1"};
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    const auto c = csv(invoke(base).out);
    const auto j = invoke(json_args).out;
    CHECK(j.front() == '[');
    CHECK(j.substr(j.size() - 2) == "]\n");
    std::size_t objects = 0;
    for (std::size_t p = j.find('{'); p != std::string::npos; p = j.find('{', p + 1)) ++objects;
    CHECK(objects == c.size() - 1);
    for (const auto& col : c[0]) CHECK(j.find("\"" + col + "\": ") != std::string::npos);
    CHECK(j.find("\"potential\": \"inverse-square lambda=0.69999999999999996 ") != std::string::npos);
  }

  TEST_CASE("--output writes the file") {
    const auto path = std::filesystem::temp_directory_path() / "scatter2d_cli_test.csv";
    const auto r = invoke({"sae-check", "--tan-delta0", "1", "--format", "csv", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().rfind("potential,m,k,tol,tan_delta0,", 0) == 0);
    std::filesystem::remove(path);
    const auto bad = invoke({"sae-check", "--tan-delta0", "1", "--output", "/nonexistent/dir/x.csv"});
    CHECK(bad.code == 1);
  }
}
