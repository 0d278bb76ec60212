#include "berezin/schroedinger.hpp"

#include <cmath>
#include <sstream>

namespace berezin {

namespace {

/// Generalized Laguerre L_deg^{(alpha)}(x) by the three-term recurrence.
double laguerre(int deg, int alpha, double x) {
  if (deg == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < deg; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

CVector kron_vector(const CVector& lhs, const CVector& rhs) {
  CVector out(lhs.size() * rhs.size());
  for (Eigen::Index i = 0; i < lhs.size(); ++i) out.segment(i * rhs.size(), rhs.size()) = lhs(i) * rhs;
  return out;
}

}  // namespace

cplx displacement_parameter(double lambda, double a, double b) {
  return std::sqrt(lambda / 2.0) * cplx(a, -b);
}

CVector coherent_coefficients_1d(int M, cplx z) {
  CVector c(M);
  c(0) = std::exp(-0.5 * std::norm(z));
  for (int m = 1; m < M; ++m) c(m) = c(m - 1) * z / std::sqrt(static_cast<double>(m));
  return c;
}

CMatrix displacement_matrix_1d(int M, cplx z) {
  const double r2 = std::norm(z);
  if (r2 == 0.0) return CMatrix::Identity(M, M);
  const double log_r = 0.5 * std::log(r2);
  const cplx up = z / std::sqrt(r2);               // phase for m >= k
  const cplx down = -std::conj(z) / std::sqrt(r2);  // phase for m < k

  CMatrix d(M, M);
  for (int k = 0; k < M; ++k) {
    for (int m = 0; m < M; ++m) {
      const int lo = std::min(m, k);
      const int hi = std::max(m, k);
      const int p = hi - lo;
      const double mag =
          std::exp(0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) + p * log_r - 0.5 * r2);
      const cplx phase = std::pow(m >= k ? up : down, p);
      d(m, k) = mag * laguerre(lo, p, r2) * phase;
    }
  }
  return d;
}

CMatrix kron(const CMatrix& lhs, const CMatrix& rhs) {
  CMatrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
  return out;
}

RepresentationContext::RepresentationContext(ModelConfig cfg)
    : cfg_(cfg), grid_(build_grid(cfg_)), dim_(cfg_.dim()) {
  const auto npts = static_cast<Eigen::Index>(grid_->size());
  coherent_table_.resize(dim_, npts);
  const auto& pts = grid_->points();
  const int n = cfg_.n;
  for (Eigen::Index k = 0; k < npts; ++k) {
    CVector col = coherent_coefficients_1d(cfg_.M, displacement_parameter(cfg_.lambda, pts(k, 0), pts(k, n)));
    for (int axis = 1; axis < n; ++axis) {
      col = kron_vector(col, coherent_coefficients_1d(
                                 cfg_.M, displacement_parameter(cfg_.lambda, pts(k, axis), pts(k, n + axis))));
    }
    coherent_table_.col(k) = col;
  }
}

void RepresentationContext::check_validity(double displacement) const {
  if (!(displacement <= cfg_.L)) {
    std::ostringstream os;
    os << "displacement exceeds truncation validity: max|(a,b)| = " << displacement << " > L = " << cfg_.L;
    throw TruncationError(os.str());
  }
}

CMatrix RepresentationContext::displacement(const RVector& a, const RVector& b) const {
  CMatrix d = displacement_matrix_1d(cfg_.M, displacement_parameter(cfg_.lambda, a(0), b(0)));
  for (int axis = 1; axis < cfg_.n; ++axis) {
    d = kron(d, displacement_matrix_1d(cfg_.M, displacement_parameter(cfg_.lambda, a(axis), b(axis))));
  }
  return d;
}

OperatorMatrix RepresentationContext::rep_matrix(const HeisenbergElement& g) const {
  if (g.n() != cfg_.n) throw InputError("rep_matrix: group element dimension mismatch");
  if (!g.a.allFinite() || !g.b.allFinite() || !std::isfinite(g.c)) throw InputError("rep_matrix: non-finite element");
  check_validity(g.displacement());
  const cplx character = std::polar(1.0, cfg_.lambda * g.c);

  // Only grid-commensurate displacements are cached.
  std::vector<long long> key;
  const double h = grid_->step();
  bool commensurate = true;
  for (const RVector* v : {&g.a, &g.b}) {
    for (double x : *v) {
      const double t = x / h;
      const double r = std::round(t);
      if (std::abs(t - r) > 1e-9) commensurate = false;
      key.push_back(static_cast<long long>(r));
    }
  }
  if (!commensurate) return OperatorMatrix(character * displacement(g.a, g.b));

  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = rep_cache_.find(key); it != rep_cache_.end()) return OperatorMatrix(character * it->second);
  }
  RVector qa(cfg_.n), qb(cfg_.n);
  for (int i = 0; i < cfg_.n; ++i) {
    qa(i) = static_cast<double>(key[i]) * h;
    qb(i) = static_cast<double>(key[cfg_.n + i]) * h;
  }
  CMatrix d = displacement(qa, qb);
  {
    std::lock_guard lock(cache_mutex_);
    rep_cache_.emplace(key, d);
  }
  return OperatorMatrix(character * d);
}

HermiteState RepresentationContext::apply_group(const HeisenbergElement& g, const HermiteState& f) const {
  if (f.dim() != dim_) throw InputError("apply_group: state dimension mismatch");
  if (!f.finite()) throw InputError("apply_group: non-finite state");
  return rep_matrix(g).apply(f);
}

HermiteState RepresentationContext::coherent_state(const PhasePoint& x) const {
  if (x.n() != cfg_.n) throw InputError("coherent_state: dimension mismatch");
  check_validity(x.displacement());
  CVector c = coherent_coefficients_1d(cfg_.M, displacement_parameter(cfg_.lambda, x.a(0), x.b(0)));
  for (int axis = 1; axis < cfg_.n; ++axis) {
    c = kron_vector(c, coherent_coefficients_1d(cfg_.M, displacement_parameter(cfg_.lambda, x.a(axis), x.b(axis))));
  }
  return HermiteState(std::move(c));
}

std::size_t RepresentationContext::cache_size() const {
  std::lock_guard lock(cache_mutex_);
  return rep_cache_.size();
}

HermiteState gaussian_vector(const ModelConfig& cfg) { return HermiteState::basis(cfg.dim(), 0); }

}  // namespace berezin
