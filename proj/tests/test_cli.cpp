#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("QFILAB_CLI");
  REQUIRE_MESSAGE(env != nullptr, "QFILAB_CLI must point at the qfilab binary");
  return env;
}

int run(const std::string& args, const fs::path& stdout_path = {}) {
  std::string cmd = cli_path() + " " + args;
  if (!stdout_path.empty()) {
    cmd += " > " + stdout_path.string() + " 2>/dev/null";
  } else {
    cmd += " > /dev/null 2>&1";
  }
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qfilab-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("scan output is byte-identical across runs with a fixed seed") {
  TempDir tmp;
  const fs::path out = tmp.path / "scan.csv";
  const std::string args =
      "scan h-exps --d 3 --n-states 25 --seed 11 --out " + out.string();
  CHECK(run(args) == 0);
  const std::string contents = slurp(out);
  CHECK(run(args) == 0);
  CHECK(contents == slurp(out));
  CHECK(!contents.empty());

  // Header comments carry version, command line, and seed.
  CHECK(contents.find("# qfi-lab") == 0);
  CHECK(contents.find("# command: qfilab scan h-exps") != std::string::npos);
  CHECK(contents.find("# seed: 11") != std::string::npos);
  CHECK(contents.find("kind,id,seed,rank,s_lin,s_vn,exp_s,h") !=
        std::string::npos);
  CHECK(contents.find("marker-pure") != std::string::npos);
  CHECK(contents.find("marker-mixed") != std::string::npos);

  // A different seed changes the scatter.
  CHECK(run("scan h-exps --d 3 --n-states 25 --seed 12 --out " + out.string()) ==
        0);
  CHECK(slurp(out) != contents);
}

TEST_CASE("ghz table satisfies the purity identity row by row") {
  TempDir tmp;
  const fs::path out = tmp.path / "ghz.csv";
  CHECK(run("ghz --n 4 --p-grid 11 --out " + out.string()) == 0);
  std::ifstream in(out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'p') continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> cols;
    while (std::getline(ss, field, ',')) cols.push_back(std::stod(field));
    REQUIRE(cols.size() == 5);
    CHECK(std::abs(cols[2] - cols[3]) <= 1e-9);  // F_Q/N^2 vs purity formula
    ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("gap report JSON") {
  TempDir tmp;
  const fs::path out = tmp.path / "gap.json";
  CHECK(run("gap --state mixed:d=2 --op sz", out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["gap"].get<double>() == doctest::Approx(1.0));
  CHECK(j["qfi"].get<double>() == doctest::Approx(0.0));
  CHECK(j["bounds"]["linear_entropy"]["bound"].get<double>() ==
        doctest::Approx(1.0));
  CHECK(j["bounds"]["linear_entropy"]["saturated"].get<bool>());

  const fs::path pure_out = tmp.path / "pure.json";
  CHECK(run("gap --state pure:random,d=4,seed=7 --op gen:d=4,m=3", pure_out) ==
        0);
  const auto jp = nlohmann::json::parse(slurp(pure_out));
  CHECK(std::abs(jp["gap"].get<double>()) < 1e-9);
}

TEST_CASE("gap command reads state and operator files") {
  TempDir tmp;
  const fs::path rho_path = tmp.path / "rho.json";
  const fs::path a_path = tmp.path / "a.json";
  {
    std::ofstream rho(rho_path);
    rho << R"({"dim": 2, "matrix": [[0.75, 0], [0, 0], [0, 0], [0.25, 0]]})";
    std::ofstream a(a_path);
    a << R"({"dim": 2, "matrix": [[0, 0], [1, 0], [1, 0], [0, 0]]})";
  }
  const fs::path out = tmp.path / "report.json";
  CHECK(run("gap --state file:" + rho_path.string() +
                " --op file:" + a_path.string(),
            out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["gap"].get<double>() == doctest::Approx(0.75));
  CHECK(j["rank2_identity"]["matches_gap"].get<bool>());
}

TEST_CASE("exit codes") {
  CHECK(run("verify nonsense") == 2);
  CHECK(run("scan not-a-figure --d 3") == 2);
  CHECK(run("gap --state mixed:d=2 --op gen:d=3,m=1") == 2);  // dim mismatch
  CHECK(run("gap --state badfamily:d=2 --op sz") == 2);
  CHECK(run("scan hessian --d 3 --out /nonexistent-dir/x.csv") == 3);
  CHECK(run("verify core --d 2..3 --samples 5000") == 0);
}

TEST_CASE("hessian scan stays positive semidefinite") {
  TempDir tmp;
  const fs::path out = tmp.path / "hessian.csv";
  CHECK(run("scan hessian --d 5,15,25 --lambda-grid 10 --out " + out.string()) ==
        0);
  std::ifstream in(out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
    const auto last_comma = line.rfind(',');
    CHECK(std::stod(line.substr(last_comma + 1)) >= -1e-8);
    ++rows;
  }
  CHECK(rows == 30);
}
