#include "berezin/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace berezin {

namespace {

int int_pow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

int ModelConfig::dim() const { return int_pow(M, n); }

double ModelConfig::default_half_width(int M, double lambda, double tol_quadrature) {
  const double hermite_reach = 4.0 * std::sqrt((2.0 * M + 1.0) / lambda);
  const double tail_reach = std::sqrt(4.0 * std::log(100.0 / tol_quadrature) / lambda);
  return std::max(hermite_reach, tail_reach);
}

ModelConfig ModelConfig::with_defaults(int n, double lambda, int M) {
  ModelConfig cfg;
  cfg.n = n;
  cfg.lambda = lambda;
  cfg.M = M;
  cfg.L = default_half_width(M, lambda, cfg.tol_quadrature);
  return cfg;
}

ModelConfig ModelConfig::derived(int new_M, std::optional<int> new_G) const {
  ModelConfig cfg = *this;
  cfg.M = new_M;
  if (new_G) cfg.G = *new_G;
  return cfg;
}

void ModelConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InputError("invalid config: " + msg); };
  if (n < 1) fail("n must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("lambda must be a positive finite number");
  if (M < 1) fail("M must be >= 1");
  if (G < 2 || G % 2 != 0) fail("G must be even and >= 2");
  if (!(L > 0.0) || !std::isfinite(L)) fail("L must be a positive finite number");
  if (!(tol_identity > 0.0)) fail("tol_identity must be positive");
  if (!(tol_quadrature > 0.0)) fail("tol_quadrature must be positive");

  const double boundary_overlap = std::exp(-lambda * L * L / 4.0);
  if (!(boundary_overlap < tol_quadrature)) {
    std::ostringstream os;
    os << "grid too narrow: exp(-lambda*L^2/4) = " << boundary_overlap
       << " is not < tol_quadrature = " << tol_quadrature;
    fail(os.str());
  }
  const double h = step();
  const double riemann_error = 2.0 * std::exp(-2.0 * std::numbers::pi * std::numbers::pi / (lambda * h * h));
  if (!(riemann_error < tol_quadrature)) {
    std::ostringstream os;
    os << "grid too coarse: 2*exp(-2*pi^2/(lambda*h^2)) = " << riemann_error
       << " is not < tol_quadrature = " << tol_quadrature << " (h = " << h << ")";
    fail(os.str());
  }
}

PhaseGrid::PhaseGrid(int n, int per_axis, double half_width, double density)
    : n_(n),
      per_axis_(per_axis),
      half_width_(half_width),
      step_(2.0 * half_width / per_axis),
      cell_weight_(std::pow(step_, 2 * n)),
      density_(density) {
  if (n < 1 || per_axis < 2 || per_axis % 2 != 0 || !(half_width > 0.0) || !(density > 0.0)) {
    throw InputError("PhaseGrid: need n >= 1, even per_axis >= 2, positive half-width and density");
  }
  const int d = 2 * n;
  size_ = 1;
  for (int i = 0; i < d; ++i) size_ *= static_cast<std::size_t>(per_axis);

  points_.resize(static_cast<Eigen::Index>(size_), d);
  for (std::size_t k = 0; k < size_; ++k) {
    std::size_t rest = k;
    for (int axis = d - 1; axis >= 0; --axis) {
      const int idx = static_cast<int>(rest % per_axis);
      rest /= per_axis;
      points_(static_cast<Eigen::Index>(k), axis) = coordinate(idx);
    }
  }
}

double PhaseGrid::total_measure() const { return density_ * std::pow(2.0 * half_width_, 2 * n_); }

std::optional<std::size_t> PhaseGrid::index_of(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != axes()) return std::nullopt;
  std::size_t k = 0;
  for (double coord : p) {
    const double t = (coord + half_width_) / step_;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-9 || r < 0 || r >= per_axis_) return std::nullopt;
    k = k * per_axis_ + static_cast<std::size_t>(r);
  }
  return k;
}

bool PhaseGrid::same_geometry(const PhaseGrid& other) const {
  return n_ == other.n_ && per_axis_ == other.per_axis_ && half_width_ == other.half_width_ &&
         density_ == other.density_;
}

std::shared_ptr<const PhaseGrid> build_grid(const ModelConfig& cfg) {
  cfg.validate();
  const double density = std::pow(cfg.lambda / (2.0 * std::numbers::pi), cfg.n);
  return std::make_shared<const PhaseGrid>(cfg.n, cfg.G, cfg.L, density);
}

HermiteState::HermiteState(CVector c) : coeffs(std::move(c)) {}

HermiteState HermiteState::basis(int dim, int j) {
  if (j < 0 || j >= dim) throw InputError("basis index out of range");
  CVector c = CVector::Zero(dim);
  c(j) = 1.0;
  return HermiteState(std::move(c));
}

HermiteState HermiteState::zero(int dim) { return HermiteState(CVector::Zero(dim)); }

bool HermiteState::finite() const { return coeffs.allFinite(); }

cplx inner(const HermiteState& f, const HermiteState& g) {
  if (f.dim() != g.dim()) throw InputError("inner: dimension mismatch");
  // Eigen's dot conjugates its first operand.
  return g.coeffs.dot(f.coeffs);
}

OperatorMatrix::OperatorMatrix(CMatrix m, bool is_hermitian) : entries(std::move(m)), hermitian(is_hermitian) {
  if (entries.rows() != entries.cols()) throw InputError("OperatorMatrix must be square");
  if (hermitian && (entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("OperatorMatrix flagged Hermitian is not Hermitian within 1e-12");
  }
}

OperatorMatrix OperatorMatrix::identity(int dim) { return OperatorMatrix(CMatrix::Identity(dim, dim), true); }

OperatorMatrix OperatorMatrix::zero(int dim) { return OperatorMatrix(CMatrix::Zero(dim, dim), true); }

OperatorMatrix OperatorMatrix::rank_one(const HermiteState& u, const HermiteState& v) {
  if (u.dim() != v.dim()) throw InputError("rank_one: dimension mismatch");
  return OperatorMatrix(u.coeffs * v.coeffs.adjoint());
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(entries.adjoint(), hermitian); }

HermiteState OperatorMatrix::apply(const HermiteState& f) const {
  if (f.dim() != dim()) throw InputError("operator/state dimension mismatch");
  return HermiteState(entries * f.coeffs);
}

double OperatorMatrix::trace_norm() const {
  Eigen::JacobiSVD<CMatrix> svd(entries);
  return svd.singularValues().sum();
}

double OperatorMatrix::operator_norm() const {
  if (entries.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(entries);
  return svd.singularValues()(0);
}

cplx hs_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols()) {
    throw InputError("hs_inner: dimension mismatch");
  }
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j < a.entries.cols(); ++j)
    for (Eigen::Index i = 0; i < a.entries.rows(); ++i) acc += a.entries(i, j) * std::conj(b.entries(i, j));
  return acc;
}

GridFunction::GridFunction(std::shared_ptr<const PhaseGrid> g, CVector v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw InputError("GridFunction without grid");
  if (static_cast<std::size_t>(values.size()) != grid->size()) {
    throw InputError("GridFunction: value count does not match grid size");
  }
}

cplx inner_l2(const GridFunction& u, const GridFunction& v) {
  if (!u.grid || !v.grid || !(u.grid == v.grid || u.grid->same_geometry(*v.grid))) {
    throw InputError("inner_l2: grid mismatch");
  }
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < u.values.size(); ++k) acc += u.values(k) * std::conj(v.values(k));
  return u.grid->weight() * acc;
}

double norm_l2(const GridFunction& u) { return std::sqrt(std::max(0.0, inner_l2(u, u).real())); }

}  // namespace berezin
