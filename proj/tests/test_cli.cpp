#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "doctest.h"

#ifndef ASYM_BIN
#error "ASYM_BIN must point at the command-line binary"
#endif
#ifndef PROBLEMS_DIR
#error "PROBLEMS_DIR must point at the shipped problem files"
#endif

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;

  std::string last_err_line() const {
    std::istringstream in(err);
    std::string line, last;
    while (std::getline(in, line)) {
      if (!line.empty()) last = line;
    }
    return last;
  }
};

std::string temp_path(const std::string& tag) {
  static int counter = 0;
  return "/tmp/asym_cli_" + std::to_string(::getpid()) + "_" + tag + "_" +
         std::to_string(counter++);
}

RunResult run(const std::string& args) {
  RunResult res;
  const std::string errfile = temp_path("stderr");
  const std::string cmd =
      std::string(ASYM_BIN) + " " + args + " 2>" + errfile;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    res.out.append(buf, got);
  }
  const int status = ::pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream ef(errfile);
  std::stringstream ss;
  ss << ef.rdbuf();
  res.err = ss.str();
  std::remove(errfile.c_str());
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

const std::string kSystem2 = std::string(PROBLEMS_DIR) + "/sys2.json";
const std::string kScalar3 = std::string(PROBLEMS_DIR) + "/scalar3.json";

}  // namespace

TEST_CASE("expand: golden output and determinism") {
  RunResult a = run("expand " + kSystem2);
  CHECK(a.code == 0);
  CHECK(a.last_err_line() == "status=ok command=expand exit=0");
  CHECK(a.out.find("\"factor\": \"t^2 * exp(-(1/4)t^2)\"") != std::string::npos);
  CHECK(a.out.find("\"n\": 2") != std::string::npos);

  RunResult b = run("expand " + kSystem2);
  CHECK(a.out == b.out);  // byte-identical reruns

  SUBCASE("text format") {
    RunResult t = run("expand --format text " + kSystem2);
    CHECK(t.code == 0);
    CHECK(t.out.find("eigenvalues") != std::string::npos);
  }
  SUBCASE("file output is atomic and reproducible") {
    const std::string out1 = temp_path("expand");
    RunResult r1 = run("expand -o " + out1 + " " + kSystem2);
    CHECK(r1.code == 0);
    CHECK(r1.out.empty());
    const std::string bytes = slurp(out1);
    CHECK(bytes == a.out);
    std::remove(out1.c_str());
  }
}

TEST_CASE("expand: input failures map to exit 2") {
  SUBCASE("missing file") {
    RunResult r = run("expand /tmp/asym_cli_no_such_file.json");
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("status=error command=expand exit=2 "
                                 "error=ParseError") == 0);
  }
  SUBCASE("malformed json") {
    const std::string p = temp_path("bad.json");
    spit(p, "{ this is not json");
    RunResult r = run("expand " + p);
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("error=ParseError") != std::string::npos);
    std::remove(p.c_str());
  }
  SUBCASE("wrong row length") {
    const std::string p = temp_path("row.json");
    spit(p, R"({"kind":"system","n":2,"r":0,
      "series":[{"j":0,"matrix":[[[1,0],[0,0]],[[0,0]]]},
                {"j":1,"matrix":[[[0,0],[0,0]],[[0,0],[0,0]]]}]})");
    RunResult r = run("expand " + p);
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("error=SchemaError") != std::string::npos);
    std::remove(p.c_str());
  }
  SUBCASE("truncated series needs --pad-zero") {
    const std::string p = temp_path("trunc.json");
    spit(p, R"({"kind":"system","n":1,"r":1,
      "series":[{"j":0,"matrix":[[[2,0]]]}]})");
    RunResult r = run("expand " + p);
    CHECK(r.code == 3);
    CHECK(r.last_err_line().find("error=TruncatedSeriesError") !=
          std::string::npos);
    RunResult padded = run("expand --pad-zero " + p);
    CHECK(padded.code == 0);
    std::remove(p.c_str());
  }
}

TEST_CASE("expand: math failures map to exit 3") {
  const std::string p = temp_path("defective.json");
  spit(p, R"({"kind":"system","n":2,"r":0,
    "series":[{"j":0,"matrix":[[[1,0],[1,0]],[[0,0],[1,0]]]},
              {"j":1,"matrix":[[[0,0],[0,0]],[[0,0],[0,0]]]}]})");
  RunResult r = run("expand " + p);
  CHECK(r.code == 3);
  CHECK(r.last_err_line().find("error=DegenerateSpectrumError") !=
        std::string::npos);
  std::remove(p.c_str());
}

TEST_CASE("usage errors and help") {
  SUBCASE("no arguments") {
    RunResult r = run("");
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("status=error command=cli exit=2 "
                                 "error=UsageError") == 0);
  }
  SUBCASE("unknown flag") {
    RunResult r = run("expand --frobnicate x.json");
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("error=UsageError") != std::string::npos);
  }
  SUBCASE("help exits cleanly") {
    RunResult r = run("--help");
    CHECK(r.code == 0);
    CHECK(r.last_err_line() == "status=ok command=help exit=0");
    CHECK(r.out.find("expand") != std::string::npos);
  }
}

TEST_CASE("solve: constant solution comes back exactly") {
  const std::string out = temp_path("solve.csv");
  RunResult r = run("solve " + kScalar3 +
                    " --t0 1 --t1 10 --ic 2.5,0,0 -o " + out);
  REQUIRE(r.code == 0);
  CHECK(r.last_err_line() == "status=ok command=solve exit=0");

  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 501);  // header + default sample count
  CHECK(rows[0] ==
        std::vector<std::string>{"t", "re_w1", "im_w1", "re_w2", "im_w2",
                                 "re_w3", "im_w3"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] == "2.5");  // exact fixed point, printed exactly
    CHECK(rows[i][2] == "0");
  }
  CHECK(rows[1][0] == "1");
  CHECK(rows[500][0] == "10");

  SUBCASE("every field round-trips through %.17g") {
    for (std::size_t i = 1; i < rows.size(); i += 37) {
      for (const std::string& f : rows[i]) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", std::strtod(f.c_str(), nullptr));
        CHECK(f == buf);
      }
    }
  }
  std::remove(out.c_str());
}

TEST_CASE("solve: mollified run exposes both gauges") {
  const std::string out = temp_path("moll.csv");
  RunResult r = run("solve " + kSystem2 +
                    " --mode mollified --t0 0 --t1 30 --ic 1,1 --samples 3 -o " +
                    out);
  REQUIRE(r.code == 0);
  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] ==
        std::vector<std::string>{"t", "re_w1", "im_w1", "re_w2", "im_w2",
                                 "re_u1", "im_u1", "re_u2", "im_u2"});
  // Transformed state tends to a limit; regression-pinned from a
  // tolerance-convergence study of this exact run.
  const double u1 = std::strtod(rows[3][5].c_str(), nullptr);
  CHECK(u1 == doctest::Approx(21.853968).epsilon(1e-5));
  // Reconstruction w = m u collapses to ~1e-98 by t = 30 without overflow.
  const double w1 = std::strtod(rows[3][1].c_str(), nullptr);
  CHECK(w1 > 0.0);
  CHECK(w1 < 1e-90);
  std::remove(out.c_str());
}

TEST_CASE("solve: aborts carry exit 4 and keep the partial table") {
  SUBCASE("overflow") {
    const std::string out = temp_path("ovf.csv");
    RunResult r = run("solve " + kScalar3 +
                      " --t0 1 --t1 20 --ic 1,1,1 -o " + out);
    CHECK(r.code == 4);
    const std::string line = r.last_err_line();
    CHECK(line.find("status=abort command=solve exit=4 reason=overflow "
                    "t_abort=") == 0);
    const double t_abort =
        std::strtod(line.substr(line.find("t_abort=") + 8).c_str(), nullptr);
    CHECK(t_abort > 11.0);
    CHECK(t_abort < 14.5);
    auto rows = parse_csv(slurp(out));
    CHECK(rows.size() > 2);
    const double t_last = std::strtod(rows.back()[0].c_str(), nullptr);
    CHECK(t_last <= t_abort + 1e-12);
    std::remove(out.c_str());
  }
  SUBCASE("step budget") {
    const std::string out = temp_path("steps.csv");
    RunResult r = run("solve " + kScalar3 +
                      " --t0 1 --t1 10 --ic 2.5,0,0 --max-steps 3 -o " + out);
    CHECK(r.code == 4);
    CHECK(r.last_err_line().find("reason=max_steps") != std::string::npos);
    std::remove(out.c_str());
  }
}

TEST_CASE("solve: option validation") {
  SUBCASE("wrong initial-condition arity") {
    RunResult r = run("solve " + kScalar3 + " --t0 1 --t1 2 --ic 1,0");
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("error=SchemaError") != std::string::npos);
  }
  SUBCASE("shift only applies to mollified runs") {
    RunResult r =
        run("solve " + kSystem2 + " --t0 1 --t1 2 --ic 1,1 --shift-q 5");
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("error=SchemaError") != std::string::npos);
  }
  SUBCASE("raw singular systems need t0 > 0") {
    RunResult r = run("solve " + kSystem2 + " --t0 0 --t1 2 --ic 1,1");
    CHECK(r.code == 3);
    CHECK(r.last_err_line().find("error=DomainError") != std::string::npos);
  }
  SUBCASE("scalar mollified runs only support plain power bases") {
    // auto base resolves to 1+t at t0 = 0, which scalar conjugation rejects
    RunResult r = run("solve " + kScalar3 +
                      " --mode mollified --t0 0 --t1 2 --ic 1,0,0");
    CHECK(r.code == 2);
    CHECK(r.last_err_line().find("error=SchemaError") != std::string::npos);
  }
  SUBCASE("scalar mollified runs demand a positive base point") {
    RunResult r = run("solve " + kScalar3 +
                      " --mode mollified --base t --t0 0 --t1 2 --ic 1,0,0");
    CHECK(r.code == 3);
    CHECK(r.last_err_line().find("error=DomainError") != std::string::npos);
  }
}

TEST_CASE("compare: constant column is a clean STABLE") {
  const std::string out = temp_path("cmp.csv");
  RunResult r = run("compare " + kScalar3 +
                    " --t0 1 --t1 10 --ic 2.5,0,0 --column 1 -o " + out);
  REQUIRE(r.code == 0);
  CHECK(r.out == "STABLE\n");
  CHECK(r.last_err_line() == "status=ok command=compare exit=0");

  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 501);
  CHECK(rows[0] == std::vector<std::string>{"t", "ratio_1", "ratio_2",
                                            "ratio_3"});
  for (std::size_t i = 1; i < rows.size(); i += 53) {
    const double ratio = std::strtod(rows[i][1].c_str(), nullptr);
    CHECK(ratio == doctest::Approx(2.5).epsilon(1e-6));
    CHECK(rows[i][2] == "0");  // prediction identically zero: excluded
    CHECK(rows[i][3] == "0");
  }
  std::remove(out.c_str());
}

TEST_CASE("compare: mollified window tracks the dominant prediction") {
  // Initial data sits on the dominant-mode profile (u1 = 2 u2 to leading
  // order), so the only drift left is the slowly decaying 1/t tail, well
  // inside the detection band.
  const std::string out = temp_path("cmpm.csv");
  RunResult r = run("compare " + kSystem2 +
                    " --mode mollified --t0 30 --t1 90 --ic 2,1 -o " + out);
  REQUIRE(r.code == 0);
  CHECK(r.out == "STABLE\n");

  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 501);
  // First sample is the initial profile itself.
  CHECK(std::strtod(rows[1][1].c_str(), nullptr) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Beyond t ~ 55 the prediction underflows; those rows are emitted as
  // zeros and excluded from detection rather than poisoning the verdict.
  CHECK(rows[500][1] == "0");
  CHECK(rows[500][2] == "0");
  std::remove(out.c_str());
}

TEST_CASE("compare: failure modes") {
  SUBCASE("aborted integration gives no verdict") {
    const std::string out = temp_path("cmpa.csv");
    RunResult r = run("compare " + kScalar3 +
                      " --t0 1 --t1 20 --ic 1,1,1 -o " + out);
    CHECK(r.code == 4);
    CHECK(r.out.empty());
    CHECK(r.last_err_line().find("status=abort command=compare exit=4") == 0);
    CHECK(slurp(out).size() > 0);  // partial ratio table is still written
    std::remove(out.c_str());
  }
  SUBCASE("too few samples for any component") {
    const std::string out = temp_path("cmps.csv");
    RunResult r = run("compare " + kScalar3 +
                      " --t0 1 --t1 10 --ic 2.5,0,0 --column 1 --samples 8 -o " +
                      out);
    CHECK(r.code == 3);
    CHECK(r.last_err_line().find("error=InsufficientDataError") !=
          std::string::npos);
    std::remove(out.c_str());
  }
}
