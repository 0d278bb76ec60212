#include "berezin/heisenberg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace berezin;

namespace {

HeisenbergElement element(std::initializer_list<double> a, std::initializer_list<double> b, double c) {
  RVector va(static_cast<Eigen::Index>(a.size())), vb(static_cast<Eigen::Index>(b.size()));
  Eigen::Index i = 0;
  for (double x : a) va(i++) = x;
  i = 0;
  for (double x : b) vb(i++) = x;
  return {va, vb, c};
}

double distance(const HeisenbergElement& g, const HeisenbergElement& h) {
  return std::max({(g.a - h.a).cwiseAbs().maxCoeff(), (g.b - h.b).cwiseAbs().maxCoeff(), std::abs(g.c - h.c)});
}

double distance(const OrbitPoint& x, const OrbitPoint& y) {
  return std::max(
      {(x.alpha - y.alpha).cwiseAbs().maxCoeff(), (x.beta - y.beta).cwiseAbs().maxCoeff(), std::abs(x.gamma - y.gamma)});
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}
  HeisenbergElement element(int n, double scale = 3.0) {
    return {vec(n, scale), vec(n, scale), scale * normal_(rng_)};
  }
  OrbitPoint orbit_point(int n) { return {vec(n, 2.0), vec(n, 2.0), normal_(rng_)}; }
  /// Multiples of 1/8 keep every product exactly representable.
  HeisenbergElement dyadic(int n) {
    std::uniform_int_distribution<int> k(-40, 40);
    RVector a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a(i) = k(rng_) / 8.0;
      b(i) = k(rng_) / 8.0;
    }
    return {a, b, k(rng_) / 8.0};
  }

 private:
  RVector vec(int n, double scale) {
    RVector v(n);
    for (auto& x : v) x = scale * normal_(rng_);
    return v;
  }
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace

TEST(Multiply, IdentityIsNeutral) {
  const auto e = HeisenbergElement::identity(1);
  const auto g = element({1}, {0}, 0);
  EXPECT_EQ(distance(multiply(e, g), g), 0.0);
  EXPECT_EQ(distance(multiply(g, e), g), 0.0);
}

TEST(Multiply, CommutatorOfGenerators) {
  const auto x = element({1}, {0}, 0), y = element({0}, {1}, 0);
  EXPECT_EQ(distance(multiply(x, y), element({1}, {1}, 0.5)), 0.0);
  EXPECT_EQ(distance(multiply(y, x), element({1}, {1}, -0.5)), 0.0);
}

TEST(Multiply, InverseExamples) {
  EXPECT_EQ(distance(inverse(element({1}, {1}, 0.5)), element({-1}, {-1}, -0.5)), 0.0);
  EXPECT_EQ(distance(inverse(HeisenbergElement::identity(2)), HeisenbergElement::identity(2)), 0.0);
}

TEST(Multiply, InverseRandom) {
  Random rnd(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = rnd.element(2);
    EXPECT_LE(distance(multiply(g, inverse(g)), HeisenbergElement::identity(2)), 1e-14);
    EXPECT_LE(distance(multiply(inverse(g), g), HeisenbergElement::identity(2)), 1e-14);
  }
}

TEST(Multiply, AssociativeExactlyOnDyadics) {
  Random rnd(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = rnd.dyadic(2), h = rnd.dyadic(2), k = rnd.dyadic(2);
    EXPECT_EQ(distance(multiply(multiply(g, h), k), multiply(g, multiply(h, k))), 0.0);
  }
}

TEST(Multiply, AssociativeRandom) {
  Random rnd(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = rnd.element(2), h = rnd.element(2), k = rnd.element(2);
    EXPECT_LE(distance(multiply(multiply(g, h), k), multiply(g, multiply(h, k))), 1e-12);
  }
}

TEST(Multiply, CentralElementsCommute) {
  Random rnd(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = rnd.element(3);
    const auto z = HeisenbergElement::central(3, rnd.element(1).c);
    EXPECT_EQ(distance(multiply(g, z), multiply(z, g)), 0.0);
  }
}

TEST(Multiply, DimensionMismatch) {
  EXPECT_THROW(multiply(HeisenbergElement::identity(1), HeisenbergElement::identity(2)), InputError);
}

TEST(Coadjoint, CentralPartUnchangedWhenGammaZero) {
  const OrbitPoint xi(RVector::Constant(1, 0.3), RVector::Constant(1, -1.2), 0.0);
  const auto moved = coadjoint(element({2}, {5}, 1), xi);
  EXPECT_EQ(distance(moved, xi), 0.0);
}

TEST(Coadjoint, MovesBasePointAlongTheOrbit) {
  for (double lambda : {0.5, 1.0, 4.0}) {
    const auto moved = coadjoint(element({1}, {0}, 0), OrbitPoint::base(1, lambda));
    EXPECT_EQ(distance(moved, OrbitPoint(RVector::Zero(1), RVector::Constant(1, -lambda), lambda)), 0.0);
  }
}

TEST(Coadjoint, OrbitIsAFlatHyperplane) {
  const double lambda = 1.5;
  Random rnd(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = rnd.element(2);
    const auto moved = coadjoint(g, OrbitPoint::base(2, lambda));
    EXPECT_EQ(moved.gamma, lambda);
    EXPECT_LE((moved.alpha - lambda * g.b).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((moved.beta + lambda * g.a).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Coadjoint, IsAnAction) {
  Random rnd(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = rnd.element(2), h = rnd.element(2);
    const auto xi = rnd.orbit_point(2);
    const auto lhs = coadjoint(multiply(g, h), xi);
    const auto rhs = coadjoint(g, coadjoint(h, xi));
    EXPECT_LE(distance(lhs, rhs), 1e-12 * (1.0 + std::abs(xi.gamma)) * 100.0);
  }
}

TEST(Coadjoint, CentralElementsActTrivially) {
  Random rnd(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto xi = rnd.orbit_point(2);
    EXPECT_EQ(distance(coadjoint(HeisenbergElement::central(2, 3.7), xi), xi), 0.0);
  }
}

TEST(Coadjoint, PreimageReachesEveryOrbitPoint) {
  const double lambda = 0.5;
  Random rnd(8);
  for (int trial = 0; trial < 200; ++trial) {
    OrbitPoint xi = rnd.orbit_point(2);
    xi.gamma = lambda;
    const auto g = orbit_preimage(xi, lambda);
    EXPECT_EQ(g.c, 0.0);
    EXPECT_LE(distance(coadjoint(g, OrbitPoint::base(2, lambda)), xi), 1e-14);
  }
  EXPECT_THROW(orbit_preimage(OrbitPoint::base(1, 2.0), 1.0), InputError);
}

TEST(Projection, DropsCentralCoordinate) {
  const auto p = project_to_phase(element({1}, {1}, 0.5));
  EXPECT_EQ(p.a(0), 1.0);
  EXPECT_EQ(p.b(0), 1.0);
  const auto o = project_to_phase(HeisenbergElement::identity(2));
  EXPECT_EQ(o.coords(), RVector::Zero(4));
}

TEST(Projection, IsAGroupHomomorphismOntoTranslations) {
  Random rnd(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = rnd.element(2), h = rnd.element(2);
    const RVector lhs = project_to_phase(multiply(g, h)).coords();
    const RVector rhs = project_to_phase(g).coords() + project_to_phase(h).coords();
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(PhasePoint, CoordinatesRoundTrip) {
  RVector c(4);
  c << 1, 2, 3, 4;
  const auto p = PhasePoint::from_coords(c);
  EXPECT_EQ(p.a(1), 2.0);
  EXPECT_EQ(p.b(0), 3.0);
  EXPECT_EQ(p.coords(), c);
  EXPECT_EQ(p.displacement(), 4.0);
  EXPECT_THROW(PhasePoint::from_coords(RVector::Zero(3)), InputError);
  EXPECT_EQ(distance(embed(p, 0.25), HeisenbergElement(p.a, p.b, 0.25)), 0.0);
}
