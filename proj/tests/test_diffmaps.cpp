#include "doctest.h"
#include "dansurf/diffmaps.hpp"
#include "dansurf/isotropy.hpp"
#include "generators.hpp"

using namespace dansurf;

namespace {
const MultiPoly X = MultiPoly::variable("x");
const MultiPoly Y = MultiPoly::variable("y");
const MultiPoly Z = MultiPoly::variable("z");
const std::vector<std::string> kVars = {"x", "y", "z"};

SurfacePtr xy_z2() { return SurfaceSpec::relation(X, Z.pow(2)); }

Derivation canonical_xy(const SurfacePtr& s) { return Derivation(s, {{"x", 0}, {"y", MultiPoly(2) * Z}, {"z", X}}); }

SurfaceElement el(const SurfacePtr& s, const MultiPoly& p) { return SurfaceElement(s, p); }
}  // namespace

TEST_CASE("derivation well-definedness") {
  const SurfacePtr s = xy_z2();
  CHECK(check_derivation_well_defined({{"x", 0}, {"y", MultiPoly(2) * Z}, {"z", X}}, s));
  const MultiPoly residue = derivation_residue({{"x", 0}, {"y", 1}, {"z", 1}}, s);
  CHECK(residue == X - MultiPoly(2) * Z);
  CHECK_THROWS_AS(Derivation(s, {{"x", 0}, {"y", 1}, {"z", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Derivation(s, {{"x", 0}, {"y", 1}}), std::invalid_argument);

  // x^n y = phi(z) with D = (0, phi' g, g x^n).
  for (unsigned n = 1; n <= 4; ++n) {
    const MultiPoly phi = Z.pow(3) + Z + 1;
    const MultiPoly g = X + 2;
    const SurfacePtr sn = SurfaceSpec::relation(X.pow(n), phi);
    CHECK(check_derivation_well_defined({{"x", 0}, {"y", phi.partial_derivative("z") * g}, {"z", g * X.pow(n)}}, sn));
  }
  // General f: D = (0, phi', f).
  const SurfacePtr fx = SurfaceSpec::relation(X.pow(3) - X + 2, Z.pow(4) + Z);
  CHECK(check_derivation_well_defined({{"x", 0}, {"y", MultiPoly(4) * Z.pow(3) + 1}, {"z", fx->f()}}, fx));
}

TEST_CASE("map well-definedness") {
  const SurfacePtr s = xy_z2();
  CHECK(check_map_well_defined({{"x", X}, {"y", Y}, {"z", Z}}, s));
  for (const CycScalar& lam : {CycScalar(2), CycScalar(Rational(-1, 3)), CycScalar::zeta(7)})
    CHECK(check_map_well_defined({{"x", X.scaled(lam)}, {"y", Y.scaled(lam.inverse())}, {"z", Z}}, s));
  CHECK(map_residue({{"x", Y}, {"y", Y}, {"z", Z}}, s) == Y.pow(2) - Z.pow(2));
  CHECK_FALSE(check_map_well_defined({{"x", Y}, {"y", Y}, {"z", Z}}, s));
  CHECK_THROWS_AS(RingMap(s, {{"x", Y}, {"y", Y}, {"z", Z}}), std::invalid_argument);
}

TEST_CASE("applying derivations and maps") {
  const SurfacePtr s = xy_z2();
  const Derivation d = canonical_xy(s);
  CHECK(apply_derivation(d, el(s, Z)).rep() == X);
  CHECK(apply_derivation(d, el(s, MultiPoly(7))).is_zero());
  CHECK(apply_derivation(d, el(s, Y * Z)).rep() == MultiPoly(3) * Z.pow(2));

  const RingMap id = RingMap::identity(s);
  CHECK(apply_map(id, el(s, Y.pow(2) * Z + X)).rep() == (Y.pow(2) * Z + X));
  CHECK(id.is_identity());
  const RingMap t(s, {{"x", X}, {"y", Y + MultiPoly(2) * Z + X}, {"z", Z + X}});
  CHECK(apply_map(t, el(s, Z)).rep() == Z + X);
  CHECK(compose_maps(t, id).images().at("y").rep() == t.images().at("y").rep());
  CHECK(d.str() == "D: x -> 0; y -> 2*z; z -> x");
}

TEST_CASE("commutation") {
  const SurfacePtr s = xy_z2();
  const Derivation d = canonical_xy(s);
  const RingMap inv(s, {{"x", Y}, {"y", X}, {"z", Z}});
  const CommutationResult r = commutes(inv, d);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->generator == "x");
  CHECK_FALSE(r.witness->difference.is_zero());

  for (unsigned k = 0; k <= 4; ++k) {
    const RingMap t = make_generator(Triangular{X.pow(k) + 1}, s);
    CHECK(commutes(t, d).holds);
  }

  const SurfacePtr x2 = SurfaceSpec::relation(X.pow(2), Z.pow(3));
  const Derivation d2(x2, {{"x", 0}, {"y", MultiPoly(3) * Z.pow(2)}, {"z", X.pow(2)}});
  const RingMap h(x2, {{"x", -X}, {"y", Y}, {"z", Z}});
  CHECK(commutes(h, d2).holds);
}

TEST_CASE("nilpotency") {
  const SurfacePtr s = xy_z2();
  const NilpotencyReport r = is_locally_nilpotent(canonical_xy(s), 10);
  CHECK(r.index.at("x") == 1u);
  CHECK(r.index.at("z") == 2u);
  CHECK(r.index.at("y") == 3u);
  CHECK(r.locally_nilpotent());

  const SurfacePtr plane = SurfaceSpec::free({"X", "Y"});
  const MultiPoly PX = MultiPoly::variable("X");
  const Derivation e(plane, {{"X", PX}, {"Y", 0}});
  const NilpotencyReport re = is_locally_nilpotent(e, 10);
  CHECK_FALSE(re.index.at("X").has_value());
  CHECK(re.index.at("Y") == 1u);
  CHECK_FALSE(re.locally_nilpotent());
  CHECK_THROWS_AS(exp_derivation(e, 10), std::runtime_error);

  const NilpotencyReport rz = is_locally_nilpotent(Derivation::zero(s), 5);
  for (const auto& [g, k] : rz.index) CHECK(k == 1u);
}

TEST_CASE("kernel membership") {
  const SurfacePtr s = xy_z2();
  const Derivation d = canonical_xy(s);
  CHECK(kernel_contains(d, el(s, X)));
  CHECK_FALSE(kernel_contains(d, el(s, Z)));
  CHECK(kernel_contains(d, el(s, X.pow(2) + 3)));
  CHECK_THROWS_AS(scale_by_kernel(d, el(s, Z)), std::invalid_argument);
}

TEST_CASE("exponentials") {
  const SurfacePtr plane = SurfaceSpec::free({"X", "Y"});
  const MultiPoly PX = MultiPoly::variable("X"), PY = MultiPoly::variable("Y");
  const RingMap shift = exp_derivation(Derivation(plane, {{"X", 0}, {"Y", 1}}));
  CHECK(shift.image("X").rep() == PX);
  CHECK(shift.image("Y").rep() == PY + 1);

  const SurfacePtr s = xy_z2();
  const Derivation xd = scale_by_kernel(canonical_xy(s), el(s, X));
  const RingMap e = exp_derivation(xd);
  CHECK(e.image("x").rep() == X);
  CHECK(e.image("z").rep() == Z + X.pow(2));
  CHECK(e.image("y").rep() == Y + MultiPoly(2) * X * Z + X.pow(3));
  // x (y + 2xz + x^3) = (z + x^2)^2 holds in K[x,y,z] after using xy = z^2.
  CHECK(s->reduce(X * e.image("y").rep() - (Z + X.pow(2)).pow(2)).is_zero());
  CHECK(exp_derivation(Derivation::zero(s)).is_identity());
}

TEST_CASE("property: element-level Leibniz and representative independence") {
  testgen::Gen gen(401);
  for (int trial = 0; trial < 100; ++trial) {
    const MultiPoly f = gen.univariate("x", 3, true);
    const MultiPoly phi = gen.univariate("z", 4, true);
    const MultiPoly g = gen.univariate("x", 2);
    const SurfacePtr s = SurfaceSpec::relation(f, phi);
    const Derivation d(s, {{"x", 0}, {"y", g * phi.partial_derivative("z")}, {"z", g * f}});
    const SurfaceElement p = el(s, gen.poly(kVars, 4, 4));
    const SurfaceElement q = el(s, gen.poly(kVars, 4, 4));
    CHECK(elements_equal(apply_derivation(d, p * q), p * apply_derivation(d, q) + q * apply_derivation(d, p)));
    const MultiPoly shifted = p.rep() + s->relation_poly() * gen.poly(kVars, 2, 3);
    CHECK(elements_equal(apply_derivation(d, el(s, shifted)), apply_derivation(d, p)));
  }
}

TEST_CASE("property: commuting maps commute on arbitrary elements") {
  testgen::Gen gen(402);
  const SurfacePtr s = SurfaceSpec::relation(X.pow(2), Z.pow(3) + 1);
  const Derivation d(s, {{"x", 0}, {"y", MultiPoly(3) * Z.pow(2)}, {"z", X.pow(2)}});
  const RingMap rho = make_generator(Triangular{X + 2}, s);
  REQUIRE(commutes(rho, d).holds);
  const RingMap h = make_generator(Hyperbolic{CycScalar(-1)}, s);
  REQUIRE(commutes(h, d).holds);
  for (int trial = 0; trial < 100; ++trial) {
    const SurfaceElement p = el(s, gen.poly(kVars, 4, 5));
    CHECK(elements_equal(apply_map(rho, apply_derivation(d, p)), apply_derivation(d, apply_map(rho, p))));
    CHECK(elements_equal(apply_map(h, apply_derivation(d, p)), apply_derivation(d, apply_map(h, p))));
  }
}

TEST_CASE("property: exp(wD) is an automorphism in the isotropy group") {
  testgen::Gen gen(403);
  for (int trial = 0; trial < 30; ++trial) {
    const SurfacePtr s = SurfaceSpec::relation(gen.univariate("x", 2, true), gen.univariate("z", 3, true));
    const Derivation d = canonical_lnd(s, gen.univariate("x", 1)).derivation;
    const SurfaceElement w = el(s, gen.univariate("x", 3));
    REQUIRE(kernel_contains(d, w));
    const Derivation wd = scale_by_kernel(d, w);
    const RingMap fwd = exp_derivation(wd), back = exp_derivation(wd.negated());
    CHECK(is_inverse_pair(fwd, back));
    CHECK(compose_maps(fwd, back).is_identity());
    CHECK(commutes(fwd, d).holds);
  }
}

TEST_CASE("canonical nilpotency indices on x^n y = phi(z) with constant g") {
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned deg = 2; deg <= 5; ++deg) {
      const MultiPoly phi = Z.pow(deg) + Z;
      const SurfacePtr s = SurfaceSpec::relation(X.pow(n), phi);
      const Derivation d = canonical_lnd(s, MultiPoly(3)).derivation;
      const NilpotencyReport r = is_locally_nilpotent(d, default_nilpotency_cap(d));
      CHECK(r.index.at("y") == deg + 1);
      CHECK(r.index.at("z") == 2u);
    }
}
