// berezin: verification suite, symbol/Wigner export and injectivity reports.
//
// Exit codes: 0 all checks passed, 1 a numerical check failed, 2 invalid input.

#include "berezin/io.hpp"
#include "berezin/schroedinger.hpp"
#include "berezin/symbol.hpp"
#include "berezin/transforms.hpp"
#include "berezin/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <regex>

namespace fs = std::filesystem;
using namespace berezin;

namespace {

constexpr int kOk = 0;
constexpr int kNumericalFailure = 1;
constexpr int kInvalidInput = 2;

struct Options {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 0;
  bool json = false;
  std::string operator_path;
  std::string state_path;
  std::string sweep;
};

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

/// Writes name.csv and name.manifest.json; returns both paths.
std::vector<std::string> export_grid(const fs::path& dir, const std::string& name, const ModelConfig& cfg,
                                     const PhaseGrid& grid, const CVector& values, const std::string& quantity) {
  const fs::path csv = dir / (name + ".csv");
  const fs::path sidecar = dir / (name + ".manifest.json");
  io::write_grid_csv(csv, grid, values);
  io::write_json(sidecar, io::grid_manifest(cfg, grid, quantity));
  return {csv.string(), sidecar.string()};
}

void finish(const fs::path& dir, io::RunManifest manifest) {
  const fs::path path = dir / "run_manifest.json";
  manifest.outputs.push_back(path.string());
  manifest.timestamp = io::utc_timestamp();
  io::write_json(path, io::to_json(manifest));
}

int cmd_verify(const Options& opt) {
  const ModelConfig cfg = io::load_config(opt.config);
  const auto results = run_verification(cfg, opt.seed);
  const fs::path dir = prepare_out(opt.out);

  io::RunManifest manifest{cfg, "verify", {}, {}, {}};
  io::json checks = io::json::array();
  for (const auto& r : results) {
    manifest.residual_summary[r.name] = r.value;
    checks.push_back({{"criterion", r.criterion},
                      {"name", r.name},
                      {"value", r.value},
                      {"relation", symbol(r.relation)},
                      {"threshold", r.threshold},
                      {"passed", r.passed}});
  }
  finish(dir, manifest);

  if (opt.json) {
    std::cout << io::json{{"passed", all_passed(results)}, {"checks", checks}}.dump(2) << '\n';
  } else {
    std::printf("%-4s %-34s %14s %3s %10s  %s\n", "#", "check", "value", "", "threshold", "status");
    for (const auto& r : results) {
      std::printf("%-4d %-34s %14.6e %3s %10.1e  %s\n", r.criterion, r.name.c_str(), r.value, symbol(r.relation),
                  r.threshold, r.passed ? "PASS" : "FAIL");
    }
  }
  for (const auto& r : results) {
    if (!r.passed) std::cerr << "check failed: " << r.name << " (" << r.description << ")\n";
  }
  return all_passed(results) ? kOk : kNumericalFailure;
}

int cmd_symbol(const Options& opt) {
  const ModelConfig cfg = io::load_config(opt.config);
  const RepresentationContext ctx(cfg);
  const OperatorMatrix A = io::read_operator_csv(opt.operator_path, ctx.dim());
  const GridFunction s = covariant_symbol(ctx, A);
  const fs::path dir = prepare_out(opt.out);
  io::RunManifest manifest{cfg, "symbol", export_grid(dir, "symbol", cfg, *ctx.grid(), s.values, "berezin_symbol"),
                           {}, {}};
  finish(dir, manifest);
  if (!opt.json) std::cout << "wrote " << manifest.outputs.front() << " (" << s.size() << " points)\n";
  return kOk;
}

int cmd_wigner(const Options& opt) {
  const ModelConfig cfg = io::load_config(opt.config);
  const RepresentationContext ctx(cfg);
  const HermiteState f = io::read_state_csv(opt.state_path, ctx.dim());
  const HermiteState vac = gaussian_vector(cfg);
  const GridFunction amb = coefficient_map(ctx, f, vac);
  const OrbitGridFunction w = inverse_fourier_orbit(amb);
  const fs::path dir = prepare_out(opt.out);

  io::RunManifest manifest{cfg, "wigner", {}, {}, {}};
  for (auto& p : export_grid(dir, "ambiguity", cfg, *amb.grid, amb.values, "ambiguity")) manifest.outputs.push_back(p);
  for (auto& p : export_grid(dir, "wigner", cfg, *w.chart, w.values, "wigner")) manifest.outputs.push_back(p);
  finish(dir, manifest);

  const double norm = norm_orbit(w);
  const double max_im = w.values.size() ? w.values.imag().cwiseAbs().maxCoeff() : 0.0;
  if (opt.json) {
    std::cout << io::json{{"wigner_l2_norm", norm}, {"max_abs_imag", max_im}}.dump(2) << '\n';
  } else {
    std::printf("wigner L2 norm %.12f, max |Im| %.3e\n", norm, max_im);
  }
  return kOk;
}

std::pair<int, int> parse_sweep(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw InputError("--sweep expects M1..M2, got '" + text + "'");
  const int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
  if (lo < 1 || hi < lo) throw InputError("--sweep range must satisfy 1 <= M1 <= M2");
  return {lo, hi};
}

int cmd_report(const Options& opt) {
  const ModelConfig cfg = io::load_config(opt.config);
  std::vector<int> truncations{cfg.M};
  if (!opt.sweep.empty()) {
    const auto [lo, hi] = parse_sweep(opt.sweep);
    truncations.clear();
    for (int m = lo; m <= hi; ++m) truncations.push_back(m);
  }

  std::vector<InjectivityReport> reports;
  for (int m : truncations) reports.push_back(injectivity_report(RepresentationContext(cfg.derived(m))));
  const InjectivityReport& main = reports.back();

  io::json doc = io::to_json(main);
  io::json baselines = io::json::array();
  for (const auto& r : reports) {
    baselines.push_back({{"M", r.config.M}, {"sigma_min", r.sigma_min}, {"sigma_max", r.sigma_max},
                         {"cond", r.cond}, {"verdict", r.verdict}});
  }
  doc["baselines"] = baselines;

  const fs::path dir = prepare_out(opt.out);
  const fs::path report_path = dir / "report.json";
  io::write_json(report_path, doc);
  io::RunManifest manifest{cfg, "report", {report_path.string()}, {}, {}};
  for (const auto& r : reports) manifest.residual_summary["sigma_min_M" + std::to_string(r.config.M)] = r.sigma_min;
  finish(dir, manifest);

  if (opt.json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::printf("%4s %14s %14s %14s  %s\n", "M", "sigma_min", "sigma_max", "cond", "verdict");
    for (const auto& r : reports) {
      std::printf("%4d %14.6e %14.6e %14.6e  %s\n", r.config.M, r.sigma_min, r.sigma_max, r.cond, r.verdict.c_str());
    }
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.verdict == kInjectiveVerdict;
  return ok ? kOk : kNumericalFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berezin covariant symbols for the Heisenberg group"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config, "model configuration (JSON)")->required();
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "seed for random test operators")->capture_default_str();
    sub->add_flag("--json", opt.json, "print JSON instead of a table");
  };

  auto* verify = app.add_subcommand("verify", "run every identity check");
  common(verify);
  auto* symbol_cmd = app.add_subcommand("symbol", "covariant symbol of an operator");
  common(symbol_cmd);
  symbol_cmd->add_option("--operator", opt.operator_path, "operator CSV (one row per line, re,im pairs)")->required();
  auto* wigner_cmd = app.add_subcommand("wigner", "ambiguity function and Wigner distribution of a state");
  common(wigner_cmd);
  wigner_cmd->add_option("--state", opt.state_path, "state CSV (one re,im coefficient per line)")->required();
  auto* report = app.add_subcommand("report", "singular-value injectivity report");
  common(report);
  report->add_option("--sweep", opt.sweep, "truncation range M1..M2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (*verify) return cmd_verify(opt);
    if (*symbol_cmd) return cmd_symbol(opt);
    if (*wigner_cmd) return cmd_wigner(opt);
    if (*report) return cmd_report(opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInvalidInput;
}
