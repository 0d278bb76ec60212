#pragma once

#include "berezin/heisenberg.hpp"
#include "berezin/model.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace berezin {

/// The Schrödinger representation
///
///   pi([a,b,c]) f(x) = exp(i lambda (c - b.x + a.b/2)) f(x - a)
///
/// compressed to span{e_0, ..., e_{M-1}} per axis of the lambda-scaled Hermite
/// basis. On one axis pi([a,b,0]) is the displacement operator
/// exp(z a^+ - conj(z) a) with z = sqrt(lambda/2) (a - i b), whose matrix
/// elements are closed-form generalized Laguerre expressions.
///
/// Compressions are not unitary: column j of rep_matrix loses the weight that
/// pi(g) e_j carries above index M-1. That loss is negligible for low indices
/// and small displacements, and it never affects quantities where one side is
/// already supported in the truncation (symbols of truncated operators,
/// coefficient maps of truncated states).
///
/// After construction the context is read-only except for the rep_matrix
/// cache, which is guarded and write-once per key.
class RepresentationContext {
 public:
  explicit RepresentationContext(ModelConfig cfg);

  [[nodiscard]] const ModelConfig& config() const { return cfg_; }
  [[nodiscard]] const std::shared_ptr<const PhaseGrid>& grid() const { return grid_; }
  [[nodiscard]] int dim() const { return dim_; }

  /// Column j is apply_group(g, e_j). Throws TruncationError beyond L.
  [[nodiscard]] OperatorMatrix rep_matrix(const HeisenbergElement& g) const;
  [[nodiscard]] HermiteState apply_group(const HeisenbergElement& g, const HermiteState& f) const;
  /// P pi([a,b,0]) phi: the exact first M coefficients per axis of the
  /// coherent state.
  [[nodiscard]] HermiteState coherent_state(const PhasePoint& x) const;

  /// dim x grid-size matrix; column k is coherent_state at grid point k.
  [[nodiscard]] const CMatrix& coherent_table() const { return coherent_table_; }

  [[nodiscard]] std::size_t cache_size() const;

 private:
  [[nodiscard]] CMatrix displacement(const RVector& a, const RVector& b) const;
  void check_validity(double displacement) const;

  ModelConfig cfg_;
  std::shared_ptr<const PhaseGrid> grid_;
  int dim_;
  CMatrix coherent_table_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::vector<long long>, CMatrix> rep_cache_;
};

/// The normalized Gaussian (lambda/pi)^{n/4} exp(-lambda |x|^2 / 2), which is
/// e_0 of the Hermite basis.
HermiteState gaussian_vector(const ModelConfig& cfg);

/// Coefficients of e_0..e_{M-1} in the one-axis coherent state D(z) e_0.
CVector coherent_coefficients_1d(int M, cplx z);

/// Matrix of the one-axis displacement operator D(z) compressed to M x M.
CMatrix displacement_matrix_1d(int M, cplx z);

/// z = sqrt(lambda/2) (a - i b).
cplx displacement_parameter(double lambda, double a, double b);

/// Kronecker product in row-major multi-index order (first factor slowest).
CMatrix kron(const CMatrix& lhs, const CMatrix& rhs);

}  // namespace berezin
