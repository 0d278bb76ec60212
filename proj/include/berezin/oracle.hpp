#pragma once

// Brute-force reference computations. Nothing here calls into the fast
// paths of schroedinger/transforms/symbol: matrix elements come from
// position-space quadrature of the explicit representation formula, and
// Fourier transforms from literal double sums.

#include "berezin/heisenberg.hpp"
#include "berezin/model.hpp"
#include "berezin/transforms.hpp"

#include <vector>

namespace berezin::oracle {

/// Uniform grid on [-R, R]^n with step s (endpoints and 0 included).
struct PositionGrid {
  int n = 1;
  double R = 0.0;
  double s = 0.0;
  std::vector<double> axis;

  [[nodiscard]] std::size_t size() const;
};

/// Smallest grid meeting R >= L + 6/sqrt(lambda) and
/// s <= min(1/(4 sqrt(lambda (2M+1))), pi/(4 lambda L)).
PositionGrid make_position_grid(const ModelConfig& cfg);

/// Throws InputError if the grid is too short or too coarse for cfg.
void check_position_grid(const PositionGrid& grid, const ModelConfig& cfg);

/// Normalized Hermite functions e_0..e_{count-1} at x (three-term recurrence).
std::vector<double> hermite_functions(int count, double lambda, double x);

/// sum_j f_j e_j(x) at every grid point (row-major over the n axes).
CVector synthesize(const HermiteState& f, const PositionGrid& grid, const ModelConfig& cfg);

/// Coefficient of e_j in pi(g) e_k by Riemann sum of
/// e_j(x) exp(i lambda (c - b.x + a.b/2)) e_k(x - a). Multi-indices flattened
/// row-major.
cplx matrix_element(const ModelConfig& cfg, const PositionGrid& grid, const HeisenbergElement& g, int j, int k);

struct GaussHermiteRule {
  RVector nodes;
  RVector weights;
};

/// Golub–Welsch rule for ∫ exp(-u^2) p(u) du.
GaussHermiteRule gauss_hermite_rule(int count);

/// Same matrix element as matrix_element for n = 1, by Gauss–Hermite
/// quadrature after centering the Gaussian product.
cplx matrix_element_gauss_hermite(double lambda, const HeisenbergElement& g, int j, int k, int nodes = 128);

/// F(x) = orbit_density * sum_m exp(-i <xi_m, x>) a(xi_m) dxi, one
/// exponential per term. Refuses grids with more than 32 points per axis.
GridFunction double_sum_ft(const OrbitGridFunction& a);

}  // namespace berezin::oracle
