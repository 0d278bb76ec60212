#include "berezin/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

using namespace berezin;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("berezin_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ConfigJson, DefaultsAndDerivedHalfWidth) {
  const ModelConfig cfg = io::config_from_json(io::json::object());
  EXPECT_EQ(cfg, ModelConfig::with_defaults());
  const ModelConfig m1 = io::config_from_json(io::json{{"M", 1}, {"lambda", 4.0}});
  EXPECT_EQ(m1.M, 1);
  EXPECT_DOUBLE_EQ(m1.L, ModelConfig::default_half_width(1, 4.0, 1e-6));
}

TEST(ConfigJson, RoundTrip) {
  const ModelConfig cfg = ModelConfig::with_defaults(2, 0.5, 3).derived(3, 32);
  EXPECT_EQ(io::config_from_json(io::to_json(cfg)), cfg);
}

TEST(ConfigJson, RejectsUnknownKeysAndBadTypes) {
  EXPECT_NE(error_of([] { io::config_from_json(io::json{{"Lambda", 1.0}}); }).find("unknown config key 'Lambda'"),
            std::string::npos);
  EXPECT_THROW(io::config_from_json(io::json{{"M", 1.5}}), InputError);
  EXPECT_THROW(io::config_from_json(io::json{{"lambda", "one"}}), InputError);
  EXPECT_THROW(io::config_from_json(io::json::array()), InputError);
  EXPECT_THROW(io::config_from_json(io::json{{"G", 8}}), InputError);
}

TEST(ConfigJson, LoadReportsParseErrors) {
  TempDir dir;
  write_text(dir.file("bad.json"), "{\"M\": ");
  EXPECT_THROW(io::load_config(dir.file("bad.json")), InputError);
  EXPECT_THROW(io::load_config(dir.file("missing.json")), InputError);
}

TEST(GridCsv, HeaderAndRoundTrip) {
  TempDir dir;
  for (int n : {1, 2}) {
    ModelConfig cfg = ModelConfig::with_defaults(n, 1.0, 2);
    cfg.G = n == 1 ? 32 : 8;
    cfg.tol_quadrature = 0.5;
    const auto grid = build_grid(cfg);
    std::mt19937_64 rng(static_cast<unsigned>(n));
    std::normal_distribution<double> normal;
    CVector v(static_cast<Eigen::Index>(grid->size()));
    for (auto& x : v) x = cplx(normal(rng), normal(rng)) * 1e-3;
    const fs::path p = dir.file("grid" + std::to_string(n) + ".csv");
    io::write_grid_csv(p, *grid, v);

    std::ifstream in(p);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, n == 1 ? "a1,b1,re,im" : "a1,a2,b1,b2,re,im");

    const auto back = io::read_grid_csv(p);
    EXPECT_EQ(back.values, v);
    EXPECT_EQ(back.coords, grid->points());
  }
}

TEST(GridCsv, Manifest) {
  const ModelConfig cfg = ModelConfig::with_defaults();
  const auto grid = build_grid(cfg);
  const auto j = io::grid_manifest(cfg, *grid, "berezin_symbol");
  EXPECT_EQ(j.at("quantity"), "berezin_symbol");
  EXPECT_EQ(j.at("grid").at("G"), 128);
  EXPECT_DOUBLE_EQ(j.at("grid").at("h").get<double>(), grid->step());
  EXPECT_EQ(io::config_from_json(j.at("config")), cfg);
}

TEST(OperatorCsv, RoundTrip) {
  TempDir dir;
  CMatrix m(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = cplx(r + 0.1 * c, -1.0 / (1 + r + c));
  io::write_operator_csv(dir.file("op.csv"), OperatorMatrix(m));
  EXPECT_EQ(io::read_operator_csv(dir.file("op.csv"), 3).entries, m);
}

TEST(OperatorCsv, MalformedEntryReportsLine) {
  TempDir dir;
  write_text(dir.file("op.csv"), "1,0,0,0\n0,0,x,0\n");
  const std::string msg = error_of([&] { io::read_operator_csv(dir.file("op.csv"), 2); });
  EXPECT_NE(msg.find(":2:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("malformed"), std::string::npos) << msg;
}

TEST(OperatorCsv, NonFiniteAndShapeErrors) {
  TempDir dir;
  write_text(dir.file("nan.csv"), "1,0,0,0\n0,0,nan,0\n");
  EXPECT_NE(error_of([&] { io::read_operator_csv(dir.file("nan.csv"), 2); }).find("non-finite"), std::string::npos);
  write_text(dir.file("short.csv"), "1,0,0,0\n0,0,1\n");
  EXPECT_NE(error_of([&] { io::read_operator_csv(dir.file("short.csv"), 2); }).find(":2:"), std::string::npos);
  write_text(dir.file("rows.csv"), "1,0,0,0\n");
  EXPECT_THROW(io::read_operator_csv(dir.file("rows.csv"), 2), InputError);
}

TEST(StateCsv, RoundTripAndErrors) {
  TempDir dir;
  CVector c(3);
  c << cplx(1, 0), cplx(0.5, -0.25), cplx(0, 1e-300);
  io::write_state_csv(dir.file("s.csv"), HermiteState(c));
  EXPECT_EQ(io::read_state_csv(dir.file("s.csv"), 3).coeffs, c);
  EXPECT_THROW(io::read_state_csv(dir.file("s.csv"), 4), InputError);
  write_text(dir.file("bad.csv"), "1,0\n\n1,0,0\n");
  EXPECT_NE(error_of([&] { io::read_state_csv(dir.file("bad.csv"), 2); }).find(":3:"), std::string::npos);
}

TEST(RunManifest, Fields) {
  io::RunManifest m{ModelConfig::with_defaults(), "verify", {"a.csv"}, {{"x", 1e-12}}, io::utc_timestamp()};
  const auto j = io::to_json(m);
  for (const char* key : {"config", "command", "outputs", "residual_summary", "timestamp"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("residual_summary").at("x"), 1e-12);
  EXPECT_EQ(j.at("timestamp").get<std::string>().back(), 'Z');
}

TEST(HeisenbergJson, Layout) {
  RVector a(2), b(2);
  a << 1, 2;
  b << 3, 4;
  EXPECT_EQ(io::to_json(HeisenbergElement(a, b, 5)), io::json({1.0, 2.0, 3.0, 4.0, 5.0}));
}
