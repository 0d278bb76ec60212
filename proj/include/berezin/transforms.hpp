#pragma once

#include "berezin/model.hpp"
#include "berezin/schroedinger.hpp"

#include <memory>
#include <utility>

namespace berezin {

/// Samples of a function on the coadjoint orbit of lambda Z*, charted by
/// (alpha, beta) with gamma = lambda.
///
/// The chart is the reciprocal grid of `dual`: same point count per axis,
/// step 2 pi / (G h), half-width pi / h. Its density is the orbit measure
/// constant (2 pi lambda)^{-n}, which is the unique constant making the
/// Fourier transform unitary onto L^2 with density (lambda / 2 pi)^n.
struct OrbitGridFunction {
  std::shared_ptr<const PhaseGrid> chart;
  std::shared_ptr<const PhaseGrid> dual;
  CVector values;
  double orbit_density = 0.0;

  OrbitGridFunction() = default;
  OrbitGridFunction(std::shared_ptr<const PhaseGrid> dual_grid, CVector v);

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// Reciprocal chart of a phase grid.
std::shared_ptr<const PhaseGrid> orbit_chart(const PhaseGrid& phase);

/// orbit_density * dalpha dbeta pairing.
cplx inner_orbit(const OrbitGridFunction& u, const OrbitGridFunction& v);
double norm_orbit(const OrbitGridFunction& u);

/// x ↦ (f | pi([x, 0]) phi) on every grid point.
GridFunction coefficient_map(const RepresentationContext& ctx, const HermiteState& f, const HermiteState& phi);

/// x ↦ ∫ exp(-i <xi, x>) a(xi) dxi, <xi, x> = alpha.a + beta.b, by FFT.
GridFunction fourier_orbit(const OrbitGridFunction& a);

/// Inverse of fourier_orbit on the reciprocal chart of F's grid.
OrbitGridFunction inverse_fourier_orbit(const GridFunction& F);

/// Cross-Wigner distribution: the orbit function whose Fourier transform is
/// coefficient_map(f, phi).
OrbitGridFunction wigner(const RepresentationContext& ctx, const HermiteState& f, const HermiteState& phi);

/// Residuals of both Moyal orthogonality relations against
/// (f1 | f2) conj(phi1 | phi2): first the coefficient maps, then the Wigner
/// distributions.
std::pair<double, double> moyal_residual(const RepresentationContext& ctx, const HermiteState& f1,
                                         const HermiteState& phi1, const HermiteState& f2,
                                         const HermiteState& phi2);

}  // namespace berezin
