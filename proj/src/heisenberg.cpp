#include "berezin/heisenberg.hpp"

#include <cmath>

namespace berezin {

namespace {

void require_same_n(int n1, int n2, const char* what) {
  if (n1 != n2) throw InputError(std::string(what) + ": dimension mismatch");
}

double max_abs(const RVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

HeisenbergElement::HeisenbergElement(RVector a_, RVector b_, double c_) : a(std::move(a_)), b(std::move(b_)), c(c_) {
  require_same_n(static_cast<int>(a.size()), static_cast<int>(b.size()), "HeisenbergElement");
}

HeisenbergElement HeisenbergElement::identity(int n) { return {RVector::Zero(n), RVector::Zero(n), 0.0}; }

HeisenbergElement HeisenbergElement::central(int n, double c) { return {RVector::Zero(n), RVector::Zero(n), c}; }

double HeisenbergElement::displacement() const { return std::max(max_abs(a), max_abs(b)); }

OrbitPoint::OrbitPoint(RVector alpha_, RVector beta_, double gamma_)
    : alpha(std::move(alpha_)), beta(std::move(beta_)), gamma(gamma_) {
  require_same_n(static_cast<int>(alpha.size()), static_cast<int>(beta.size()), "OrbitPoint");
}

OrbitPoint OrbitPoint::base(int n, double lambda) { return {RVector::Zero(n), RVector::Zero(n), lambda}; }

PhasePoint::PhasePoint(RVector a_, RVector b_) : a(std::move(a_)), b(std::move(b_)) {
  require_same_n(static_cast<int>(a.size()), static_cast<int>(b.size()), "PhasePoint");
}

PhasePoint PhasePoint::origin(int n) { return {RVector::Zero(n), RVector::Zero(n)}; }

PhasePoint PhasePoint::from_coords(const RVector& coords) {
  if (coords.size() % 2 != 0) throw InputError("PhasePoint: odd coordinate count");
  const auto n = coords.size() / 2;
  return {coords.head(n), coords.tail(n)};
}

RVector PhasePoint::coords() const {
  RVector out(2 * a.size());
  out << a, b;
  return out;
}

double PhasePoint::displacement() const { return std::max(max_abs(a), max_abs(b)); }

HeisenbergElement multiply(const HeisenbergElement& g, const HeisenbergElement& h) {
  require_same_n(g.n(), h.n(), "multiply");
  const double twist = 0.5 * (g.a.dot(h.b) - h.a.dot(g.b));
  return {g.a + h.a, g.b + h.b, g.c + h.c + twist};
}

HeisenbergElement inverse(const HeisenbergElement& g) { return {-g.a, -g.b, -g.c}; }

OrbitPoint coadjoint(const HeisenbergElement& g, const OrbitPoint& xi) {
  require_same_n(g.n(), xi.n(), "coadjoint");
  return {xi.alpha + xi.gamma * g.b, xi.beta - xi.gamma * g.a, xi.gamma};
}

PhasePoint project_to_phase(const HeisenbergElement& g) { return {g.a, g.b}; }

HeisenbergElement embed(const PhasePoint& x, double c) { return {x.a, x.b, c}; }

HeisenbergElement orbit_preimage(const OrbitPoint& xi, double lambda) {
  if (xi.gamma != lambda || !(lambda > 0.0)) throw InputError("orbit_preimage: point is not on the orbit of lambda Z*");
  return {-xi.beta / lambda, xi.alpha / lambda, 0.0};
}

}  // namespace berezin
