#pragma once

#include "berezin/heisenberg.hpp"
#include "berezin/model.hpp"
#include "berezin/symbol.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace berezin::io {

using json = nlohmann::json;

/// Accepts exactly the keys n, lambda, M, L, G, tol_identity, tol_quadrature;
/// missing keys take defaults (L from ModelConfig::default_half_width).
/// Validates the result.
ModelConfig config_from_json(const json& j);
json to_json(const ModelConfig& cfg);
ModelConfig load_config(const std::filesystem::path& path);

/// [a..., b..., c]
json to_json(const HeisenbergElement& g);

json to_json(const InjectivityReport& report);

/// Header a1..an,b1..bn,re,im; one row per grid point.
void write_grid_csv(const std::filesystem::path& path, const PhaseGrid& grid, const CVector& values);

struct GridCsv {
  std::vector<std::string> header;
  Eigen::MatrixXd coords;
  CVector values;
};
GridCsv read_grid_csv(const std::filesystem::path& path);

/// Sidecar {config, grid: {L, G, h, density}, quantity}.
json grid_manifest(const ModelConfig& cfg, const PhaseGrid& grid, const std::string& quantity);

/// One matrix row per line: re0,im0,re1,im1,...
OperatorMatrix read_operator_csv(const std::filesystem::path& path, int dim);
void write_operator_csv(const std::filesystem::path& path, const OperatorMatrix& A);

/// One coefficient per line: re,im
HermiteState read_state_csv(const std::filesystem::path& path, int dim);
void write_state_csv(const std::filesystem::path& path, const HermiteState& f);

struct RunManifest {
  ModelConfig config;
  std::string command;
  std::vector<std::string> outputs;
  std::map<std::string, double> residual_summary;
  std::string timestamp;
};
json to_json(const RunManifest& m);

/// UTC, ISO 8601.
std::string utc_timestamp();

void write_json(const std::filesystem::path& path, const json& j);

}  // namespace berezin::io
