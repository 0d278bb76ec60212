#pragma once

#include "berezin/heisenberg.hpp"
#include "berezin/model.hpp"
#include "berezin/schroedinger.hpp"

#include <string>

namespace berezin {

// The reproducing-kernel space is the range of the isometry
// V f = (f | phi_x); since V is unitary onto it, operators T on that space
// are handled as A = V* T V on the Schrödinger side. With scalar values the
// evaluation K_x pairs against phi_x, so
//   K^A(x, y) = (A phi_y | phi_x),   S(A)(x) = (A phi_x | phi_x).

/// K(x, y) = K_x K_y* = (phi_y | phi_x). Hermitian, and K(., y) is the
/// reproducing element for evaluation at y.
cplx kernel(const RepresentationContext& ctx, const PhasePoint& x, const PhasePoint& y);

/// x ↦ K(x, y) on the grid; this is V phi_y, so inner_l2(V f, K(., y)) = (V f)(y).
GridFunction kernel_column(const RepresentationContext& ctx, const PhasePoint& y);

/// V f sampled on the grid.
GridFunction analysis(const RepresentationContext& ctx, const HermiteState& f);

/// K^A(x, y) = K_x A K_y* = (A phi_y | phi_x); K^I = K.
cplx full_symbol(const RepresentationContext& ctx, const OperatorMatrix& A, const PhasePoint& x, const PhasePoint& y);

/// |K^A(x,y) - sum_j (V e_j)(x) conj((V A* e_j)(y))|. Exact in the truncation.
double onb_expansion_check(const RepresentationContext& ctx, const OperatorMatrix& A, const PhasePoint& x,
                           const PhasePoint& y);

/// Grid quadrature of ∫ K^A(x, y) (V f)(y) dmu(y).
cplx reconstruct(const RepresentationContext& ctx, const OperatorMatrix& A, const HermiteState& f, const PhasePoint& x);

/// Berezin covariant symbol on the grid.
GridFunction covariant_symbol(const RepresentationContext& ctx, const OperatorMatrix& A);

/// |trace(A) - ∫ S(A) dmu|.
double trace_identity_residual(const RepresentationContext& ctx, const OperatorMatrix& A);

/// |‖A‖_HS^2 - ∬ |K^A(x, y)|^2 dmu(x) dmu(y)|.
double hs_identity_residual(const RepresentationContext& ctx, const OperatorMatrix& A);

/// Max over grid z (with z and g.z inside the half-width L/2 box) of
/// |S(pi(g)* A pi(g))(z) - S(A)(g.z)|. g must move grid points onto grid
/// points; otherwise InputError.
double covariance_residual(const RepresentationContext& ctx, const OperatorMatrix& A, const HeisenbergElement& g);

/// Symbol map on the matrix units e_i ⊗ e_j*, weighted so that column norms
/// are L^2(mu) norms. Column index is i * dim + j.
struct SymbolMapMatrix {
  CMatrix entries;
  RVector singular_values;  // descending
};

SymbolMapMatrix build_symbol_map(const RepresentationContext& ctx);

struct InjectivityReport {
  ModelConfig config;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond = 0.0;
  double threshold = 0.0;
  std::string verdict;
};

inline constexpr const char* kInjectiveVerdict = "injective-at-truncation";
inline constexpr const char* kNotInjectiveVerdict = "not-certified";

/// verdict is kInjectiveVerdict iff sigma_min > 100 tol_quadrature.
InjectivityReport injectivity_report(const RepresentationContext& ctx);

}  // namespace berezin
