#include "berezin/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace berezin::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> unflatten(int index, int M, int n) {
  std::vector<int> out(n);
  for (int axis = n - 1; axis >= 0; --axis) {
    out[axis] = index % M;
    index /= M;
  }
  return out;
}

double max_step(const ModelConfig& cfg) {
  return std::min(1.0 / (4.0 * std::sqrt(cfg.lambda * (2.0 * cfg.M + 1.0))), kPi / (4.0 * cfg.lambda * cfg.L));
}

double min_reach(const ModelConfig& cfg) { return cfg.L + 6.0 / std::sqrt(cfg.lambda); }

}  // namespace

std::size_t PositionGrid::size() const {
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= axis.size();
  return total;
}

PositionGrid make_position_grid(const ModelConfig& cfg) {
  PositionGrid grid;
  grid.n = cfg.n;
  grid.R = min_reach(cfg);
  // Even interval count keeps x = 0 on the grid.
  auto intervals = static_cast<std::size_t>(std::ceil(2.0 * grid.R / max_step(cfg)));
  intervals += intervals % 2;
  grid.s = 2.0 * grid.R / static_cast<double>(intervals);
  grid.axis.resize(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) grid.axis[i] = -grid.R + static_cast<double>(i) * grid.s;
  return grid;
}

void check_position_grid(const PositionGrid& grid, const ModelConfig& cfg) {
  if (grid.n != cfg.n) throw InputError("position grid: dimension mismatch");
  if (grid.R < min_reach(cfg) * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "position grid too short: R = " << grid.R << " < L + 6/sqrt(lambda) = " << min_reach(cfg);
    throw InputError(os.str());
  }
  if (grid.s > max_step(cfg) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "position grid too coarse: s = " << grid.s << " > " << max_step(cfg);
    throw InputError(os.str());
  }
}

std::vector<double> hermite_functions(int count, double lambda, double x) {
  std::vector<double> out(count);
  const double xi = std::sqrt(lambda) * x;
  out[0] = std::pow(lambda / kPi, 0.25) * std::exp(-0.5 * xi * xi);
  if (count > 1) out[1] = std::sqrt(2.0) * xi * out[0];
  for (int m = 1; m + 1 < count; ++m) {
    out[m + 1] = std::sqrt(2.0 / (m + 1.0)) * xi * out[m] - std::sqrt(m / (m + 1.0)) * out[m - 1];
  }
  return out;
}

CVector synthesize(const HermiteState& f, const PositionGrid& grid, const ModelConfig& cfg) {
  check_position_grid(grid, cfg);
  if (f.dim() != cfg.dim()) throw InputError("synthesize: state dimension mismatch");
  const std::size_t per_axis = grid.axis.size();
  std::vector<std::vector<double>> table(per_axis);
  for (std::size_t i = 0; i < per_axis; ++i) table[i] = hermite_functions(cfg.M, cfg.lambda, grid.axis[i]);

  CVector out = CVector::Zero(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index p = 0; p < out.size(); ++p) {
    std::vector<std::size_t> pos(cfg.n);
    std::size_t rest = static_cast<std::size_t>(p);
    for (int axis = cfg.n - 1; axis >= 0; --axis) {
      pos[axis] = rest % per_axis;
      rest /= per_axis;
    }
    cplx acc = 0.0;
    for (int j = 0; j < f.dim(); ++j) {
      const auto idx = unflatten(j, cfg.M, cfg.n);
      double basis = 1.0;
      for (int axis = 0; axis < cfg.n; ++axis) basis *= table[pos[axis]][idx[axis]];
      acc += f.coeffs(j) * basis;
    }
    out(p) = acc;
  }
  return out;
}

cplx matrix_element(const ModelConfig& cfg, const PositionGrid& grid, const HeisenbergElement& g, int j, int k) {
  check_position_grid(grid, cfg);
  if (g.n() != cfg.n) throw InputError("matrix_element: dimension mismatch");
  const auto jj = unflatten(j, cfg.M, cfg.n);
  const auto kk = unflatten(k, cfg.M, cfg.n);
  cplx result = std::polar(1.0, cfg.lambda * (g.c + 0.5 * g.a.dot(g.b)));
  for (int axis = 0; axis < cfg.n; ++axis) {
    const double a = g.a(axis);
    const double b = g.b(axis);
    cplx acc = 0.0;
    for (double x : grid.axis) {
      const double left = hermite_functions(jj[axis] + 1, cfg.lambda, x)[jj[axis]];
      const double right = hermite_functions(kk[axis] + 1, cfg.lambda, x - a)[kk[axis]];
      acc += left * right * std::polar(1.0, -cfg.lambda * b * x);
    }
    result *= acc * grid.s;
  }
  return result;
}

GaussHermiteRule gauss_hermite_rule(int count) {
  if (count < 1) throw InputError("gauss_hermite_rule: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int i = 0; i + 1 < count; ++i) {
    jacobi(i, i + 1) = jacobi(i + 1, i) = std::sqrt((i + 1.0) / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = std::sqrt(kPi) * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

// With x = u/sqrt(lambda) + a/2 the Gaussian product becomes
// exp(-u^2) exp(-lambda a^2/4) and the phase exp(-i sqrt(lambda) b u); the
// polynomial parts are the normalized Hermite polynomials at u +- sqrt(lambda) a/2.
cplx matrix_element_gauss_hermite(double lambda, const HeisenbergElement& g, int j, int k, int nodes) {
  if (g.n() != 1) throw InputError("matrix_element_gauss_hermite: n = 1 only");
  const double a = g.a(0);
  const double b = g.b(0);
  const double shift = 0.5 * std::sqrt(lambda) * a;
  auto poly = [](int m, double xi) {
    double prev = 0.0, cur = 1.0;
    for (int q = 0; q < m; ++q) {
      const double next = std::sqrt(2.0 / (q + 1.0)) * xi * cur - std::sqrt(q / (q + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
    return cur;
  };
  const GaussHermiteRule rule = gauss_hermite_rule(nodes);
  cplx acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = rule.nodes(i);
    acc += rule.weights(i) * poly(j, u + shift) * poly(k, u - shift) * std::polar(1.0, -std::sqrt(lambda) * b * u);
  }
  return acc * std::exp(-lambda * a * a / 4.0) / std::sqrt(kPi) * std::polar(1.0, lambda * g.c);
}

GridFunction double_sum_ft(const OrbitGridFunction& a) {
  const PhaseGrid& chart = *a.chart;
  const PhaseGrid& target = *a.dual;
  if (chart.per_axis() > 32) throw InputError("double_sum_ft: cost guard, more than 32 points per axis");
  const auto& xi = chart.points();
  const auto& x = target.points();
  CVector out(static_cast<Eigen::Index>(target.size()));
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    cplx acc = 0.0;
    for (Eigen::Index m = 0; m < xi.rows(); ++m) acc += std::polar(1.0, -xi.row(m).dot(x.row(k))) * a.values(m);
    out(k) = a.orbit_density * chart.cell_weight() * acc;
  }
  return GridFunction(a.dual, std::move(out));
}

}  // namespace berezin::oracle
