#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace berezin {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Raised for anything a caller can fix: bad config, bad file, mismatched
/// shapes. The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a displacement leaves the region where the truncated
/// representation is meaningful.
class TruncationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physical and numerical parameters of a run.
///
/// `L` is optional at construction time; `with_defaults` fills it from
/// `default_half_width`.
struct ModelConfig {
  int n = 1;
  double lambda = 1.0;
  int M = 16;
  double L = 0.0;
  int G = 128;
  double tol_identity = 1e-8;
  double tol_quadrature = 1e-6;

  /// Dimension of the truncated Hilbert space, M^n.
  [[nodiscard]] int dim() const;
  [[nodiscard]] double step() const { return 2.0 * L / G; }

  /// Throws InputError naming the first violated inequality.
  void validate() const;

  /// max(4 sqrt((2M+1)/lambda), sqrt(4 ln(100/tol_quadrature)/lambda)).
  static double default_half_width(int M, double lambda, double tol_quadrature);

  static ModelConfig with_defaults(int n = 1, double lambda = 1.0, int M = 16);

  /// Copy with a different truncation (and optionally grid size); L is kept.
  [[nodiscard]] ModelConfig derived(int new_M, std::optional<int> new_G = std::nullopt) const;

  bool operator==(const ModelConfig&) const = default;
};

/// Uniform tensor grid on [-L, L)^{2n}, point k on axis i at -L + k*h.
///
/// Points are ordered row-major over the axes (a_1..a_n, b_1..b_n): the last
/// axis varies fastest. The measure attached to each point is
/// density * cell_weight.
class PhaseGrid {
 public:
  PhaseGrid(int n, int per_axis, double half_width, double density);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int axes() const { return 2 * n_; }
  [[nodiscard]] int per_axis() const { return per_axis_; }
  [[nodiscard]] double half_width() const { return half_width_; }
  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] double cell_weight() const { return cell_weight_; }
  [[nodiscard]] double density() const { return density_; }
  [[nodiscard]] std::size_t size() const { return size_; }

  [[nodiscard]] double coordinate(int axis_index) const { return -half_width_ + axis_index * step_; }
  [[nodiscard]] const Eigen::MatrixXd& points() const { return points_; }
  [[nodiscard]] RVector point(std::size_t k) const { return points_.row(static_cast<Eigen::Index>(k)).transpose(); }

  /// Measure of one cell, density * cell_weight.
  [[nodiscard]] double weight() const { return density_ * cell_weight_; }
  /// Closed form density * (2L)^{2n}.
  [[nodiscard]] double total_measure() const;

  /// Index of the grid point at `p`, if `p` lies on the grid (within 1e-9 steps).
  [[nodiscard]] std::optional<std::size_t> index_of(std::span<const double> p) const;

  [[nodiscard]] bool same_geometry(const PhaseGrid& other) const;

 private:
  int n_;
  int per_axis_;
  double half_width_;
  double step_;
  double cell_weight_;
  double density_;
  std::size_t size_;
  Eigen::MatrixXd points_;
};

/// Grid on the phase space with density (lambda/2pi)^n. Validates `cfg`.
std::shared_ptr<const PhaseGrid> build_grid(const ModelConfig& cfg);

/// A vector of the truncated Schrödinger space in the lambda-scaled Hermite
/// basis. Multi-indices (j_1..j_n) are flattened row-major.
struct HermiteState {
  CVector coeffs;

  HermiteState() = default;
  explicit HermiteState(CVector c);

  static HermiteState basis(int dim, int j);
  static HermiteState zero(int dim);

  [[nodiscard]] int dim() const { return static_cast<int>(coeffs.size()); }
  [[nodiscard]] double norm() const { return coeffs.norm(); }
  [[nodiscard]] bool finite() const;
};

/// (f | g), linear in f and conjugate-linear in g.
cplx inner(const HermiteState& f, const HermiteState& g);

/// A truncated operator in the Hermite basis.
struct OperatorMatrix {
  CMatrix entries;
  bool hermitian = false;

  OperatorMatrix() = default;
  explicit OperatorMatrix(CMatrix m, bool is_hermitian = false);

  static OperatorMatrix identity(int dim);
  static OperatorMatrix zero(int dim);
  /// u ⊗ v*, the map w ↦ (w | v) u.
  static OperatorMatrix rank_one(const HermiteState& u, const HermiteState& v);

  [[nodiscard]] int dim() const { return static_cast<int>(entries.rows()); }
  [[nodiscard]] OperatorMatrix adjoint() const;
  [[nodiscard]] HermiteState apply(const HermiteState& f) const;
  [[nodiscard]] double trace_norm() const;
  [[nodiscard]] double operator_norm() const;
};

/// trace(B* A).
cplx hs_inner(const OperatorMatrix& a, const OperatorMatrix& b);

/// Samples of a function on a PhaseGrid.
struct GridFunction {
  std::shared_ptr<const PhaseGrid> grid;
  CVector values;

  GridFunction() = default;
  GridFunction(std::shared_ptr<const PhaseGrid> g, CVector v);

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// density * cell_weight * sum_k u_k conj(v_k).
cplx inner_l2(const GridFunction& u, const GridFunction& v);
double norm_l2(const GridFunction& u);

}  // namespace berezin
