#include "berezin/symbol.hpp"

#include "berezin/transforms.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace berezin {

namespace {

void require_operator(const RepresentationContext& ctx, const OperatorMatrix& A) {
  if (A.entries.rows() != ctx.dim() || A.entries.cols() != ctx.dim()) {
    std::ostringstream os;
    os << "operator is " << A.entries.rows() << "x" << A.entries.cols() << ", expected " << ctx.dim() << "x"
       << ctx.dim();
    throw InputError(os.str());
  }
  if (!A.entries.allFinite()) throw InputError("operator has non-finite entries");
}

}  // namespace

cplx kernel(const RepresentationContext& ctx, const PhasePoint& x, const PhasePoint& y) {
  return inner(ctx.coherent_state(y), ctx.coherent_state(x));
}

GridFunction kernel_column(const RepresentationContext& ctx, const PhasePoint& y) {
  const CVector cy = ctx.coherent_state(y).coeffs;
  return GridFunction(ctx.grid(), ctx.coherent_table().adjoint() * cy);
}

GridFunction analysis(const RepresentationContext& ctx, const HermiteState& f) {
  return coefficient_map(ctx, f, gaussian_vector(ctx.config()));
}

cplx full_symbol(const RepresentationContext& ctx, const OperatorMatrix& A, const PhasePoint& x, const PhasePoint& y) {
  require_operator(ctx, A);
  const CVector cx = ctx.coherent_state(x).coeffs;
  const CVector cy = ctx.coherent_state(y).coeffs;
  return cx.dot(A.entries * cy);
}

double onb_expansion_check(const RepresentationContext& ctx, const OperatorMatrix& A, const PhasePoint& x,
                           const PhasePoint& y) {
  const cplx lhs = full_symbol(ctx, A, x, y);
  const HermiteState phi_x = ctx.coherent_state(x);
  const HermiteState phi_y = ctx.coherent_state(y);
  const OperatorMatrix adj = A.adjoint();
  cplx rhs = 0.0;
  for (int j = 0; j < ctx.dim(); ++j) {
    const HermiteState ej = HermiteState::basis(ctx.dim(), j);
    const cplx ej_at_x = inner(ej, phi_x);
    const cplx adj_ej_at_y = inner(adj.apply(ej), phi_y);
    rhs += ej_at_x * std::conj(adj_ej_at_y);
  }
  return std::abs(lhs - rhs);
}

cplx reconstruct(const RepresentationContext& ctx, const OperatorMatrix& A, const HermiteState& f,
                 const PhasePoint& x) {
  require_operator(ctx, A);
  if (f.dim() != ctx.dim()) throw InputError("reconstruct: state dimension mismatch");
  const CVector cx = ctx.coherent_state(x).coeffs;
  const CMatrix& table = ctx.coherent_table();
  // Row x of the full symbol over every grid y.
  const CVector row = (cx.adjoint() * A.entries * table).transpose();
  const GridFunction vf = analysis(ctx, f);
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < row.size(); ++k) acc += row(k) * vf.values(k);
  return ctx.grid()->weight() * acc;
}

GridFunction covariant_symbol(const RepresentationContext& ctx, const OperatorMatrix& A) {
  require_operator(ctx, A);
  const CMatrix& table = ctx.coherent_table();
  const CMatrix moved = A.entries * table;
  CVector values(table.cols());
  for (Eigen::Index k = 0; k < table.cols(); ++k) values(k) = table.col(k).dot(moved.col(k));
  return GridFunction(ctx.grid(), std::move(values));
}

double trace_identity_residual(const RepresentationContext& ctx, const OperatorMatrix& A) {
  const GridFunction s = covariant_symbol(ctx, A);
  const GridFunction one(ctx.grid(), CVector::Ones(static_cast<Eigen::Index>(ctx.grid()->size())));
  return std::abs(A.entries.trace() - inner_l2(s, one));
}

double hs_identity_residual(const RepresentationContext& ctx, const OperatorMatrix& A) {
  require_operator(ctx, A);
  const CMatrix& table = ctx.coherent_table();
  const CMatrix moved = A.entries * table;  // column y: A phi_y
  const Eigen::Index npts = table.cols();
  constexpr Eigen::Index kBlock = 256;
  double acc = 0.0;
  for (Eigen::Index start = 0; start < npts; start += kBlock) {
    const Eigen::Index rows = std::min(kBlock, npts - start);
    // Entry (x, y) = (A phi_y | phi_x).
    const CMatrix block = table.middleCols(start, rows).adjoint() * moved;
    acc += block.squaredNorm();
  }
  const double w = ctx.grid()->weight();
  return std::abs(hs_inner(A, A).real() - w * w * acc);
}

double covariance_residual(const RepresentationContext& ctx, const OperatorMatrix& A, const HeisenbergElement& g) {
  require_operator(ctx, A);
  const auto& grid = *ctx.grid();
  const double half_box = 0.5 * ctx.config().L;
  if (g.n() != ctx.config().n) throw InputError("covariance_residual: dimension mismatch");
  if (!(g.displacement() <= half_box)) throw InputError("covariance_residual: displacement exceeds L/2");
  for (const RVector* v : {&g.a, &g.b}) {
    for (double x : *v) {
      const double t = x / grid.step();
      if (std::abs(t - std::round(t)) > 1e-9) {
        throw InputError("covariance_residual: displacement is not commensurate with the grid step");
      }
    }
  }

  const OperatorMatrix rep = ctx.rep_matrix(g);
  const OperatorMatrix conjugated(rep.entries.adjoint() * A.entries * rep.entries);
  const GridFunction moved_symbol = covariant_symbol(ctx, conjugated);
  const GridFunction symbol = covariant_symbol(ctx, A);

  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const PhasePoint z = PhasePoint::from_coords(grid.point(k));
    if (z.displacement() > half_box) continue;
    const PhasePoint target = project_to_phase(multiply(g, embed(z)));
    if (target.displacement() > half_box) continue;
    const RVector coords = target.coords();
    const auto idx = grid.index_of(std::span<const double>(coords.data(), static_cast<std::size_t>(coords.size())));
    if (!idx) throw InputError("covariance_residual: translated point is off the grid");
    worst = std::max(worst, std::abs(moved_symbol.values(static_cast<Eigen::Index>(k)) -
                                     symbol.values(static_cast<Eigen::Index>(*idx))));
  }
  return worst;
}

SymbolMapMatrix build_symbol_map(const RepresentationContext& ctx) {
  const int dim = ctx.dim();
  const auto npts = static_cast<Eigen::Index>(ctx.grid()->size());
  const Eigen::Index ncols = static_cast<Eigen::Index>(dim) * dim;
  if (ncols > npts) {
    std::ostringstream os;
    os << "under-determined symbol map: (M^n)^2 = " << ncols << " exceeds the " << npts << " grid points";
    throw InputError(os.str());
  }
  const CMatrix& table = ctx.coherent_table();
  const double scale = std::sqrt(ctx.grid()->weight());
  SymbolMapMatrix out;
  out.entries.resize(npts, ncols);
  // S(e_i ⊗ e_j*)(x) = (phi_x | e_j)(e_i | phi_x) = c_j(x) conj(c_i(x))
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      out.entries.col(static_cast<Eigen::Index>(i) * dim + j) =
          scale * table.row(j).transpose().cwiseProduct(table.row(i).transpose().conjugate());
    }
  }
  Eigen::BDCSVD<CMatrix> svd(out.entries);
  out.singular_values = svd.singularValues();
  return out;
}

InjectivityReport injectivity_report(const RepresentationContext& ctx) {
  const SymbolMapMatrix map = build_symbol_map(ctx);
  InjectivityReport report;
  report.config = ctx.config();
  report.sigma_max = map.singular_values(0);
  report.sigma_min = map.singular_values(map.singular_values.size() - 1);
  report.cond = report.sigma_min > 0.0 ? report.sigma_max / report.sigma_min : std::numeric_limits<double>::infinity();
  report.threshold = 100.0 * ctx.config().tol_quadrature;
  report.verdict = report.sigma_min > report.threshold ? kInjectiveVerdict : kNotInjectiveVerdict;
  return report;
}

}  // namespace berezin
