#include "berezin/transforms.hpp"

#include "fft.hpp"

#include <cmath>
#include <numbers>

namespace berezin {

namespace {

void require_finite(const CVector& v, const char* what) {
  if (!v.allFinite()) throw InputError(std::string(what) + ": non-finite input");
}

std::vector<int> shape_of(const PhaseGrid& g) { return std::vector<int>(g.axes(), g.per_axis()); }

/// (-1)^{sum of multi-index} for every point in row-major order.
void apply_checkerboard(CVector& v, const PhaseGrid& g) {
  const int G = g.per_axis();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    std::size_t rest = static_cast<std::size_t>(k);
    int parity = 0;
    for (int axis = 0; axis < g.axes(); ++axis) {
      parity += static_cast<int>(rest % G);
      rest /= G;
    }
    if (parity % 2 != 0) v(k) = -v(k);
  }
}

bool is_vacuum(const HermiteState& phi) {
  if (phi.coeffs.size() == 0 || phi.coeffs(0) != cplx(1.0, 0.0)) return false;
  return phi.coeffs.tail(phi.coeffs.size() - 1).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

OrbitGridFunction::OrbitGridFunction(std::shared_ptr<const PhaseGrid> dual_grid, CVector v)
    : chart(orbit_chart(*dual_grid)), dual(std::move(dual_grid)), values(std::move(v)), orbit_density(chart->density()) {
  if (static_cast<std::size_t>(values.size()) != chart->size()) {
    throw InputError("OrbitGridFunction: value count does not match grid size");
  }
}

std::shared_ptr<const PhaseGrid> orbit_chart(const PhaseGrid& phase) {
  const double half_width = std::numbers::pi / phase.step();
  const double density = 1.0 / (std::pow(2.0 * std::numbers::pi, phase.axes()) * phase.density());
  return std::make_shared<const PhaseGrid>(phase.n(), phase.per_axis(), half_width, density);
}

cplx inner_orbit(const OrbitGridFunction& u, const OrbitGridFunction& v) {
  if (!u.chart || !v.chart || !u.chart->same_geometry(*v.chart)) throw InputError("inner_orbit: chart mismatch");
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < u.values.size(); ++k) acc += u.values(k) * std::conj(v.values(k));
  return u.chart->weight() * acc;
}

double norm_orbit(const OrbitGridFunction& u) { return std::sqrt(std::max(0.0, inner_orbit(u, u).real())); }

GridFunction coefficient_map(const RepresentationContext& ctx, const HermiteState& f, const HermiteState& phi) {
  const int dim = ctx.dim();
  if (f.dim() != dim || phi.dim() != dim) throw InputError("coefficient_map: state dimension mismatch");
  if (!f.finite() || !phi.finite()) throw InputError("coefficient_map: non-finite state");
  const auto& grid = ctx.grid();
  const auto npts = static_cast<Eigen::Index>(grid->size());
  CVector values(npts);

  if (is_vacuum(phi)) {
    // (f | phi_x) = sum_j f_j conj(c_j(x))
    values = ctx.coherent_table().adjoint() * f.coeffs;
    return GridFunction(grid, std::move(values));
  }

  const auto& cfg = ctx.config();
  const auto& pts = grid->points();
  for (Eigen::Index k = 0; k < npts; ++k) {
    CMatrix d = displacement_matrix_1d(cfg.M, displacement_parameter(cfg.lambda, pts(k, 0), pts(k, cfg.n)));
    for (int axis = 1; axis < cfg.n; ++axis) {
      d = kron(d, displacement_matrix_1d(cfg.M, displacement_parameter(cfg.lambda, pts(k, axis), pts(k, cfg.n + axis))));
    }
    const CVector moved = d * phi.coeffs;
    values(k) = moved.dot(f.coeffs);
  }
  return GridFunction(grid, std::move(values));
}

// With x_k = -L + k h and xi_m = -pi/h + m (2 pi / (G h)) on each axis,
//   xi_m x_k = pi G / 2 - pi k - pi m + 2 pi m k / G,
// so exp(-i xi.x) = (-1)^{G n} (-1)^{|k|} (-1)^{|m|} exp(-2 pi i m.k / G) over
// 2n axes; (-1)^{G n} = 1 because G is even. The offset phases are the two
// checkerboards around an unshifted DFT.
GridFunction fourier_orbit(const OrbitGridFunction& a) {
  require_finite(a.values, "fourier_orbit");
  const PhaseGrid& chart = *a.chart;
  CVector work = a.values;
  apply_checkerboard(work, chart);
  detail::dft_inplace(work, shape_of(chart), -1);
  apply_checkerboard(work, *a.dual);
  work *= a.orbit_density * chart.cell_weight();
  return GridFunction(a.dual, std::move(work));
}

OrbitGridFunction inverse_fourier_orbit(const GridFunction& F) {
  require_finite(F.values, "inverse_fourier_orbit");
  OrbitGridFunction out(F.grid, F.values);
  const PhaseGrid& chart = *out.chart;
  apply_checkerboard(out.values, *F.grid);
  detail::dft_inplace(out.values, shape_of(chart), +1);
  apply_checkerboard(out.values, chart);
  out.values /= out.orbit_density * chart.cell_weight() * static_cast<double>(chart.size());
  return out;
}

OrbitGridFunction wigner(const RepresentationContext& ctx, const HermiteState& f, const HermiteState& phi) {
  return inverse_fourier_orbit(coefficient_map(ctx, f, phi));
}

std::pair<double, double> moyal_residual(const RepresentationContext& ctx, const HermiteState& f1,
                                         const HermiteState& phi1, const HermiteState& f2,
                                         const HermiteState& phi2) {
  const cplx target = inner(f1, f2) * std::conj(inner(phi1, phi2));
  const GridFunction a1 = coefficient_map(ctx, f1, phi1);
  const GridFunction a2 = coefficient_map(ctx, f2, phi2);
  const double coeff_residual = std::abs(inner_l2(a1, a2) - target);
  const double wigner_residual = std::abs(inner_orbit(inverse_fourier_orbit(a1), inverse_fourier_orbit(a2)) - target);
  return {coeff_residual, wigner_residual};
}

}  // namespace berezin
