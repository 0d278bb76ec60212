#include "berezin/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace berezin::io {

namespace {

const std::set<std::string> kConfigKeys = {"n", "lambda", "M", "L", "G", "tol_identity", "tol_quadrature"};

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("config key '") + key + "' must be an integer");
  return v.get<int>();
}

double get_real(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw InputError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_row(const std::string& line, const std::filesystem::path& path, std::size_t line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    std::string field = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    field = first == std::string::npos ? std::string() : field.substr(first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      std::ostringstream os;
      os << path.string() << ":" << line_no << ": malformed number '" << field << "'";
      throw InputError(os.str());
    }
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << path.string() << ":" << line_no << ": non-finite entry";
      throw InputError(os.str());
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(line_no, line);
  }
  return lines;
}

}  // namespace

ModelConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kConfigKeys.contains(key)) throw InputError("unknown config key '" + key + "'");
  }
  ModelConfig cfg;
  cfg.n = get_int(j, "n", cfg.n);
  cfg.lambda = get_real(j, "lambda", cfg.lambda);
  cfg.M = get_int(j, "M", cfg.M);
  cfg.G = get_int(j, "G", cfg.G);
  cfg.tol_identity = get_real(j, "tol_identity", cfg.tol_identity);
  cfg.tol_quadrature = get_real(j, "tol_quadrature", cfg.tol_quadrature);
  if (j.contains("L")) {
    cfg.L = get_real(j, "L", 0.0);
  } else if (cfg.lambda > 0.0 && cfg.M >= 1 && cfg.tol_quadrature > 0.0) {
    cfg.L = ModelConfig::default_half_width(cfg.M, cfg.lambda, cfg.tol_quadrature);
  }
  cfg.validate();
  return cfg;
}

json to_json(const ModelConfig& cfg) {
  return json{{"n", cfg.n},
              {"lambda", cfg.lambda},
              {"M", cfg.M},
              {"L", cfg.L},
              {"G", cfg.G},
              {"tol_identity", cfg.tol_identity},
              {"tol_quadrature", cfg.tol_quadrature}};
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json to_json(const HeisenbergElement& g) {
  json arr = json::array();
  for (double v : g.a) arr.push_back(v);
  for (double v : g.b) arr.push_back(v);
  arr.push_back(g.c);
  return arr;
}

json to_json(const InjectivityReport& report) {
  return json{{"config", to_json(report.config)},
              {"sigma_min", report.sigma_min},
              {"sigma_max", report.sigma_max},
              {"cond", report.cond},
              {"threshold", report.threshold},
              {"verdict", report.verdict}};
}

void write_grid_csv(const std::filesystem::path& path, const PhaseGrid& grid, const CVector& values) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) throw InputError("write_grid_csv: size mismatch");
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (int i = 1; i <= grid.n(); ++i) out << 'a' << i << ',';
  for (int i = 1; i <= grid.n(); ++i) out << 'b' << i << ',';
  out << "re,im\n";
  const auto& pts = grid.points();
  for (Eigen::Index k = 0; k < pts.rows(); ++k) {
    for (Eigen::Index c = 0; c < pts.cols(); ++c) out << format_real(pts(k, c)) << ',';
    out << format_real(values(k).real()) << ',' << format_real(values(k).imag()) << '\n';
  }
}

GridCsv read_grid_csv(const std::filesystem::path& path) {
  auto lines = read_lines(path);
  if (lines.empty()) throw InputError(path.string() + ": empty file");
  GridCsv out;
  {
    std::stringstream ss(lines.front().second);
    std::string field;
    while (std::getline(ss, field, ',')) out.header.push_back(field);
  }
  const auto width = out.header.size();
  if (width < 4 || out.header[width - 2] != "re" || out.header[width - 1] != "im") {
    throw InputError(path.string() + ":1: bad header");
  }
  const auto rows = static_cast<Eigen::Index>(lines.size() - 1);
  out.coords.resize(rows, static_cast<Eigen::Index>(width - 2));
  out.values.resize(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& [line_no, line] = lines[static_cast<std::size_t>(r) + 1];
    const auto fields = parse_row(line, path, line_no);
    if (fields.size() != width) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) +
                       " fields");
    }
    for (std::size_t c = 0; c + 2 < width; ++c) out.coords(r, static_cast<Eigen::Index>(c)) = fields[c];
    out.values(r) = cplx(fields[width - 2], fields[width - 1]);
  }
  return out;
}

json grid_manifest(const ModelConfig& cfg, const PhaseGrid& grid, const std::string& quantity) {
  return json{{"config", to_json(cfg)},
              {"grid",
               {{"L", grid.half_width()}, {"G", grid.per_axis()}, {"h", grid.step()}, {"density", grid.density()}}},
              {"quantity", quantity}};
}

OperatorMatrix read_operator_csv(const std::filesystem::path& path, int dim) {
  const auto lines = read_lines(path);
  if (static_cast<int>(lines.size()) != dim) {
    throw InputError(path.string() + ": expected " + std::to_string(dim) + " rows, found " +
                     std::to_string(lines.size()));
  }
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& [line_no, line] = lines[static_cast<std::size_t>(r)];
    const auto fields = parse_row(line, path, line_no);
    if (static_cast<int>(fields.size()) != 2 * dim) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(2 * dim) +
                       " fields (re,im pairs), found " + std::to_string(fields.size()));
    }
    for (int c = 0; c < dim; ++c) m(r, c) = cplx(fields[2 * c], fields[2 * c + 1]);
  }
  return OperatorMatrix(std::move(m));
}

void write_operator_csv(const std::filesystem::path& path, const OperatorMatrix& A) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (Eigen::Index r = 0; r < A.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.entries.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_real(A.entries(r, c).real()) << ',' << format_real(A.entries(r, c).imag());
    }
    out << '\n';
  }
}

HermiteState read_state_csv(const std::filesystem::path& path, int dim) {
  const auto lines = read_lines(path);
  if (static_cast<int>(lines.size()) != dim) {
    throw InputError(path.string() + ": expected " + std::to_string(dim) + " coefficients, found " +
                     std::to_string(lines.size()));
  }
  CVector c(dim);
  for (int r = 0; r < dim; ++r) {
    const auto& [line_no, line] = lines[static_cast<std::size_t>(r)];
    const auto fields = parse_row(line, path, line_no);
    if (fields.size() != 2) throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected re,im");
    c(r) = cplx(fields[0], fields[1]);
  }
  return HermiteState(std::move(c));
}

void write_state_csv(const std::filesystem::path& path, const HermiteState& f) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (Eigen::Index r = 0; r < f.coeffs.size(); ++r) {
    out << format_real(f.coeffs(r).real()) << ',' << format_real(f.coeffs(r).imag()) << '\n';
  }
}

json to_json(const RunManifest& m) {
  json summary = json::object();
  for (const auto& [k, v] : m.residual_summary) summary[k] = v;
  return json{{"config", to_json(m.config)},
              {"command", m.command},
              {"outputs", m.outputs},
              {"residual_summary", summary},
              {"timestamp", m.timestamp}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace berezin::io
