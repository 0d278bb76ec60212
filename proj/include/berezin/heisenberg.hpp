#pragma once

#include "berezin/model.hpp"

namespace berezin {

/// The group element [a, b, c] = exp(sum a_k X_k + sum b_k Y_k + c Z) of the
/// (2n+1)-dimensional Heisenberg group, [X_k, Y_k] = Z.
struct HeisenbergElement {
  RVector a;
  RVector b;
  double c = 0.0;

  HeisenbergElement() = default;
  HeisenbergElement(RVector a_, RVector b_, double c_);

  static HeisenbergElement identity(int n);
  static HeisenbergElement central(int n, double c);

  [[nodiscard]] int n() const { return static_cast<int>(a.size()); }
  /// max_k max(|a_k|, |b_k|)
  [[nodiscard]] double displacement() const;
};

/// The functional sum alpha_k X_k* + sum beta_k Y_k* + gamma Z*.
struct OrbitPoint {
  RVector alpha;
  RVector beta;
  double gamma = 0.0;

  OrbitPoint() = default;
  OrbitPoint(RVector alpha_, RVector beta_, double gamma_);

  /// lambda Z*, the base point of the orbit.
  static OrbitPoint base(int n, double lambda);
  [[nodiscard]] int n() const { return static_cast<int>(alpha.size()); }
};

/// A point (a, b) of the phase space spanned by the X and Y directions.
struct PhasePoint {
  RVector a;
  RVector b;

  PhasePoint() = default;
  PhasePoint(RVector a_, RVector b_);

  static PhasePoint origin(int n);
  /// Splits a 2n-vector (a_1..a_n, b_1..b_n).
  static PhasePoint from_coords(const RVector& coords);

  [[nodiscard]] int n() const { return static_cast<int>(a.size()); }
  [[nodiscard]] RVector coords() const;
  [[nodiscard]] double displacement() const;
};

HeisenbergElement multiply(const HeisenbergElement& g, const HeisenbergElement& h);
HeisenbergElement inverse(const HeisenbergElement& g);
OrbitPoint coadjoint(const HeisenbergElement& g, const OrbitPoint& xi);
PhasePoint project_to_phase(const HeisenbergElement& g);
/// [a, b, c] for the phase point (a, b).
HeisenbergElement embed(const PhasePoint& x, double c = 0.0);

/// The element [a, b, 0] moving lambda Z* to xi; requires xi.gamma == lambda.
HeisenbergElement orbit_preimage(const OrbitPoint& xi, double lambda);

}  // namespace berezin
