#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ulab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string spec(const std::string& name) { return std::string(ULAB_SPECS_DIR) + "/" + name; }

Run run(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = "env -u UNCERTAINTY_LAB_DIM " + env + " " + ULAB_CLI_PATH + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("check on vacuum passes every relation", "[cli]") {
  const Run r = run("check " + spec("vacuum.spec"));
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("heisenberg"));
  CHECK_THAT(r.out, ContainsSubstring("trace-class[k=1]"));
  CHECK(r.out.find("VIOLATED") == std::string::npos);
  CHECK(r.out.find("saturated") != std::string::npos);
}

TEST_CASE("check on the covariance state separates the two relations", "[cli]") {
  const Run r = run("check " + spec("covariance_r05.spec") + " --relations heisenberg,schrodinger");
  CHECK(r.code == 0);
  const auto h = r.out.find("\nheisenberg");
  const auto s = r.out.find("\nschrodinger");
  REQUIRE(h != std::string::npos);
  REQUIRE(s != std::string::npos);
  CHECK(r.out.substr(h, r.out.find('\n', h + 1) - h).find("satisfied") != std::string::npos);
  CHECK(r.out.substr(s, r.out.find('\n', s + 1) - s).find("saturated") != std::string::npos);
}

TEST_CASE("check reports CSV and characteristic observables", "[cli]") {
  const fs::path csv = scratch() / "reports.csv";
  const Run r = run("check " + spec("coherent.spec") + " --relations characteristic --observables q,p,n --out " +
                    csv.string());
  CHECK(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("name,lhs,rhs,gap,satisfied,saturated\n", 0) == 0);
  CHECK_THAT(text, ContainsSubstring("characteristic[r=3]"));
}

TEST_CASE("check on a mixed state flags it", "[cli]") {
  const Run r = run("check " + spec("thermal.spec"));
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("(mixed)"));
  CHECK_THAT(r.out, ContainsSubstring("warning [check]"));
}

TEST_CASE("check usage errors exit 1", "[cli]") {
  const Run unknown = run("check " + spec("vacuum.spec") + " --relations robertson");
  CHECK(unknown.code == 1);
  CHECK_THAT(unknown.err, ContainsSubstring("canonical-sum"));

  const Run malformed = run("check " + spec("malformed.spec"));
  CHECK(malformed.code == 1);
  CHECK_THAT(malformed.err, ContainsSubstring("'gamma'"));

  CHECK(run("check /nonexistent/file.spec").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("check " + spec("vacuum.spec") + " --dim 1").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("non-positive saturation tolerance exits 1", "[cli]") {
  CHECK(run("--tol-sat -1 check " + spec("vacuum.spec")).code == 1);
  CHECK(run("--tol-sat 0 check " + spec("vacuum.spec")).code == 1);
  CHECK(run("--tol-sat 1e-3 check " + spec("vacuum.spec")).code == 0);
}

TEST_CASE("dim precedence: flag over spec over environment", "[cli]") {
  CHECK_THAT(run("check " + spec("vacuum.spec")).out, ContainsSubstring("dim = 64\n"));
  CHECK_THAT(run("check " + spec("vacuum.spec"), "UNCERTAINTY_LAB_DIM=48").out, ContainsSubstring("dim = 48\n"));
  CHECK_THAT(run("check " + spec("vacuum_dim32.spec"), "UNCERTAINTY_LAB_DIM=48").out,
             ContainsSubstring("dim = 32\n"));
  CHECK_THAT(run("--dim 40 check " + spec("vacuum_dim32.spec"), "UNCERTAINTY_LAB_DIM=48").out,
             ContainsSubstring("dim = 40\n"));
  CHECK_THAT(run("check " + spec("vacuum.spec") + " --dim 40").out, ContainsSubstring("dim = 40\n"));
  CHECK(run("check " + spec("vacuum.spec"), "UNCERTAINTY_LAB_DIM=abc").code == 1);
}

TEST_CASE("two-state", "[cli]") {
  const Run same = run("two-state " + spec("covariance_r05.spec") + " " + spec("covariance_r05.spec"));
  CHECK(same.code == 0);
  CHECK_THAT(same.out, ContainsSubstring("two-state"));
  CHECK_THAT(same.out, ContainsSubstring("saturated"));

  const Run pair = run("two-state " + spec("vacuum.spec") + " " + spec("squeezed_r05.spec"));
  CHECK(pair.code == 0);
  CHECK_THAT(pair.out, ContainsSubstring("0.38577"));

  const Run mismatch = run("two-state " + spec("vacuum.spec") + " " + spec("vacuum_dim32.spec"));
  CHECK(mismatch.code == 1);
}

TEST_CASE("evolve writes a trajectory", "[cli]") {
  const fs::path csv = scratch() / "traj.csv";
  const Run r = run("evolve " + spec("coherent1.spec") + " --chi 0.2 --t-max 2 --steps 50 --out " + csv.string());
  CHECK(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("t,var_q,var_p,cov_qp,det_sigma,schrodinger_gap,heisenberg_gap\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 52);
  CHECK_THAT(r.out, ContainsSubstring("max_abs_cov_qp"));
  CHECK_THAT(r.out, ContainsSubstring("dim = 128\n"));

  const Run free = run("evolve " + spec("coherent1.spec") + " --chi 0 --steps 10 --out " + csv.string());
  CHECK(free.code == 0);

  CHECK(run("evolve " + spec("coherent1.spec") + " --steps 0 --out " + csv.string()).code == 1);
  CHECK(run("evolve " + spec("coherent1.spec") + " --chi -1 --out " + csv.string()).code == 1);
  CHECK(run("evolve " + spec("coherent1.spec") + " --out /nonexistent/dir/x.csv").code == 1);
  CHECK(run("evolve " + spec("thermal.spec") + " --out " + csv.string()).code == 1);
}

TEST_CASE("scan writes one row per grid point", "[cli]") {
  const fs::path csv = scratch() / "scan.csv";
  const Run r = run("scan --r 0:1:5 --theta 0:pi:5 --objective schrodinger --out " + csv.string());
  CHECK(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("alpha_re,alpha_im,r,theta,objective,label\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 26);
  CHECK_THAT(text, ContainsSubstring(",covariance\n"));

  CHECK(run("scan --r 0:1 --out " + csv.string()).code == 1);
  CHECK(run("scan --objective robertson --out " + csv.string()).code == 1);
}

TEST_CASE("scan isolates failing points", "[cli]") {
  const fs::path csv = scratch() / "scan_err.csv";
  const Run r = run("--dim 16 --strict-dim scan --alpha-re 0:3:2 --r 0 --theta 0 --out " + csv.string());
  CHECK(r.code == 0);
  CHECK_THAT(slurp(csv), ContainsSubstring("nan,error"));
  CHECK_THAT(r.out, ContainsSubstring("warning [scan]"));
}

TEST_CASE("classify prints one label", "[cli]") {
  CHECK(run("classify " + spec("coherent.spec")).out == "coherent\n");
  CHECK(run("classify " + spec("squeezed_r05.spec")).out == "squeezed\n");
  CHECK(run("classify " + spec("covariance_r05.spec")).out == "covariance\n");
  CHECK(run("classify " + spec("fock1.spec")).out == "not-minimal\n");
  CHECK(run("classify " + spec("cat_even.spec")).out == "not-minimal\n");
  CHECK(run("classify " + spec("thermal.spec")).code == 1);
}

TEST_CASE("williamson prints nus and Lambda", "[cli]") {
  const Run r = run("williamson " + spec("squeezed_sigma.csv"));
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("nu_1,0.5"));
  CHECK_THAT(r.out, ContainsSubstring("1.64872127070012"));

  const Run two = run("williamson " + spec("two_mode_sigma.csv"));
  CHECK(two.code == 0);
  CHECK_THAT(two.out, ContainsSubstring("nu_2,"));

  const fs::path bad = scratch() / "bad.csv";
  std::ofstream(bad) << "1,0,0\n0,1,0\n0,0,1\n";
  CHECK(run("williamson " + bad.string()).code == 1);
  std::ofstream(bad) << "1,0\n0,-1\n";
  CHECK(run("williamson " + bad.string()).code == 1);
}

TEST_CASE("repeated invocations are byte-identical", "[cli]") {
  const fs::path a = scratch() / "a.csv";
  const fs::path b = scratch() / "b.csv";
  const std::vector<std::string> commands{
      "check " + spec("covariance_r05.spec"),
      "two-state " + spec("vacuum.spec") + " " + spec("squeezed_r05.spec"),
      "classify " + spec("covariance_r05.spec"),
      "williamson " + spec("two_mode_sigma.csv"),
  };
  for (const auto& c : commands) {
    const Run r1 = run(c);
    const Run r2 = run(c);
    CHECK(r1.code == r2.code);
    CHECK(r1.out == r2.out);
  }
  const Run e1 = run("evolve " + spec("coherent1.spec") + " --steps 20 --out " + a.string());
  const Run e2 = run("evolve " + spec("coherent1.spec") + " --steps 20 --out " + b.string());
  CHECK(slurp(a) == slurp(b));
  const Run s1 = run("scan --r 0:1:3 --theta 0:pi:3 --out " + a.string());
  const Run s2 = run("scan --r 0:1:3 --theta 0:pi:3 --out " + b.string());
  CHECK(slurp(a) == slurp(b));
  CHECK(e1.code == e2.code);
  CHECK(s1.code == s2.code);
}
