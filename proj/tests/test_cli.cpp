// Drives the berezin executable end to end.

#include "berezin/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

using namespace berezin;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("berezin_cli_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  Invocation run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + BEREZIN_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Invocation r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  [[nodiscard]] fs::path out_dir(const std::string& name = "out") const { return dir_ / name; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, VerifyDefaultPasses) {
  const auto cfg = write("cfg.json", "{}");
  const Invocation r = run("verify --config " + cfg.string() + " --out " + out_dir().string());
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto manifest = io::json::parse(slurp(out_dir() / "run_manifest.json"));
  EXPECT_EQ(manifest.at("command"), "verify");
  EXPECT_GE(manifest.at("residual_summary").size(), 10u);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, VerifyIsDeterministic) {
  const auto cfg = write("cfg.json", R"({"M": 2})");
  ASSERT_EQ(run("verify --config " + cfg.string() + " --out " + out_dir("a").string()).code, 0);
  ASSERT_EQ(run("verify --config " + cfg.string() + " --out " + out_dir("b").string()).code, 0);
  const auto a = io::json::parse(slurp(out_dir("a") / "run_manifest.json"));
  const auto b = io::json::parse(slurp(out_dir("b") / "run_manifest.json"));
  EXPECT_EQ(a.at("residual_summary"), b.at("residual_summary"));
}

TEST_F(Cli, VerifySingleMode) {
  const auto cfg = write("cfg.json", R"({"M": 1})");
  const Invocation r = run("verify --json --config " + cfg.string() + " --out " + out_dir().string());
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto doc = io::json::parse(r.out);
  bool seen = false;
  for (const auto& c : doc.at("checks")) {
    if (c.at("name") == "injectivity_sigma_min_M1") {
      EXPECT_NEAR(c.at("value").get<double>(), std::sqrt(0.5), 1e-6);
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
}

TEST_F(Cli, InvalidConfigExitsTwo) {
  const auto coarse = write("coarse.json", R"({"G": 8})");
  Invocation r = run("verify --config " + coarse.string() + " --out " + out_dir().string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("grid too coarse"), std::string::npos) << r.err;

  const auto unknown = write("unknown.json", R"({"mass": 1})");
  r = run("verify --config " + unknown.string() + " --out " + out_dir().string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown config key"), std::string::npos) << r.err;

  EXPECT_EQ(run("verify --out " + out_dir().string()).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, SymbolOfVacuumProjectorIsGaussian) {
  const auto cfg = write("cfg.json", R"({"M": 4, "G": 64})");
  const auto op = write("op.csv", "1,0,0,0,0,0,0,0\n0,0,0,0,0,0,0,0\n0,0,0,0,0,0,0,0\n0,0,0,0,0,0,0,0\n");
  const Invocation r = run("symbol --config " + cfg.string() + " --operator " + op.string() + " --out " + out_dir().string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = io::read_grid_csv(out_dir() / "symbol.csv");
  ASSERT_EQ(csv.values.size(), 64 * 64);
  for (Eigen::Index k = 0; k < csv.values.size(); ++k) {
    const double expected = std::exp(-csv.coords.row(k).squaredNorm() / 2.0);
    ASSERT_LE(std::abs(csv.values(k) - expected), 1e-8);
  }
  const auto sidecar = io::json::parse(slurp(out_dir() / "symbol.manifest.json"));
  EXPECT_EQ(sidecar.at("quantity"), "berezin_symbol");
  EXPECT_TRUE(fs::exists(out_dir() / "run_manifest.json"));
}

TEST_F(Cli, SymbolOfIdentityIsOneNearOrigin) {
  const auto cfg = write("cfg.json", R"({"M": 16, "G": 64})");
  std::ostringstream op;
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) op << (c ? "," : "") << (r == c ? "1,0" : "0,0");
    op << '\n';
  }
  const auto path = write("identity.csv", op.str());
  ASSERT_EQ(run("symbol --config " + cfg.string() + " --operator " + path.string() + " --out " + out_dir().string()).code, 0);
  const auto csv = io::read_grid_csv(out_dir() / "symbol.csv");
  for (Eigen::Index k = 0; k < csv.values.size(); ++k) {
    if (csv.coords.row(k).cwiseAbs().maxCoeff() > 1.0) continue;
    EXPECT_LE(std::abs(csv.values(k) - 1.0), 1e-8);
  }
}

TEST_F(Cli, MalformedOperatorNamesTheLine) {
  const auto cfg = write("cfg.json", R"({"M": 2})");
  const auto op = write("op.csv", "1,0,0,0\n0,0,oops,0\n");
  const Invocation r = run("symbol --config " + cfg.string() + " --operator " + op.string() + " --out " + out_dir().string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("op.csv:2:"), std::string::npos) << r.err;
}

TEST_F(Cli, WignerOfVacuum) {
  const auto cfg = write("cfg.json", R"({"M": 4})");
  const auto state = write("s.csv", "1,0\n0,0\n0,0\n0,0\n");
  const Invocation r = run("wigner --json --config " + cfg.string() + " --state " + state.string() + " --out " + out_dir().string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = io::json::parse(r.out);
  EXPECT_NEAR(doc.at("wigner_l2_norm").get<double>(), 1.0, 1e-8);
  EXPECT_LE(doc.at("max_abs_imag").get<double>(), 1e-8);
  for (const char* f : {"ambiguity.csv", "ambiguity.manifest.json", "wigner.csv", "wigner.manifest.json"}) {
    EXPECT_TRUE(fs::exists(out_dir() / f)) << f;
  }
}

TEST_F(Cli, WignerOfFirstExcitedStateAndZero) {
  const auto cfg = write("cfg.json", R"({"M": 4})");
  const auto e1 = write("e1.csv", "0,0\n1,0\n0,0\n0,0\n");
  Invocation r = run("wigner --json --config " + cfg.string() + " --state " + e1.string() + " --out " + out_dir().string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(io::json::parse(r.out).at("wigner_l2_norm").get<double>(), 1.0, 1e-8);
  const auto zero = write("zero.csv", "0,0\n0,0\n0,0\n0,0\n");
  r = run("wigner --json --config " + cfg.string() + " --state " + zero.string() + " --out " + out_dir().string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::json::parse(r.out).at("wigner_l2_norm").get<double>(), 0.0);
}

TEST_F(Cli, ReportSweep) {
  const auto cfg = write("cfg.json", R"({"M": 4})");
  const Invocation r = run("report --config " + cfg.string() + " --sweep 1..4 --out " + out_dir().string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = io::json::parse(slurp(out_dir() / "report.json"));
  ASSERT_EQ(doc.at("baselines").size(), 4u);
  EXPECT_NEAR(doc.at("baselines")[0].at("sigma_min").get<double>(), std::sqrt(0.5), 1e-6);
  EXPECT_EQ(doc.at("verdict"), "injective-at-truncation");
}

TEST_F(Cli, ReportUnderDeterminedExitsTwo) {
  const auto cfg = write("cfg.json", R"({"M": 12, "G": 8, "L": 4.0, "tol_quadrature": 0.5})");
  const Invocation r = run("report --config " + cfg.string() + " --out " + out_dir().string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("under-determined"), std::string::npos) << r.err;
  EXPECT_EQ(run("report --config " + cfg.string() + " --sweep 4..2 --out " + out_dir().string()).code, 2);
}
