#include <numeric>

#include "doctest.h"
#include "dansurf/isotropy.hpp"
#include "generators.hpp"

using namespace dansurf;

namespace {
const MultiPoly X = MultiPoly::variable("x");
const MultiPoly Y = MultiPoly::variable("y");
const MultiPoly Z = MultiPoly::variable("z");

// Every zeta_k^j with k <= kmax, deduplicated by value.
std::vector<CycScalar> unit_sweep(unsigned kmax) {
  std::vector<CycScalar> out;
  for (unsigned k = 1; k <= kmax; ++k)
    for (unsigned j = 0; j < k; ++j) {
      CycScalar c = CycScalar::zeta(k, j);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  return out;
}

// Brute-force bound: the largest order among commuting hyperbolic rotations.
unsigned brute_bound(const SurfacePtr& s, const MultiPoly& g, unsigned kmax) {
  const Derivation d = canonical_lnd(s, g).derivation;
  unsigned best = 1;
  for (const auto& lam : unit_sweep(kmax)) {
    if (!check_map_well_defined(hyperbolic_images(*s, lam), s)) continue;
    if (commutes(RingMap(s, hyperbolic_images(*s, lam)), d).holds) best = std::lcm(best, *root_of_unity_order(lam));
  }
  return best;
}
}  // namespace

TEST_CASE("surface and f classification") {
  CHECK(classify_surface(*SurfaceSpec::relation(X, Z.pow(2))) == SurfaceClass::xy);
  CHECK(classify_surface(*SurfaceSpec::relation(MultiPoly(3) * X.pow(2), Z.pow(2))) == SurfaceClass::xn);
  CHECK(classify_surface(*SurfaceSpec::relation(X.pow(2) + X, Z.pow(2))) == SurfaceClass::fx);
  const FShape a = classify_f(X.pow(3) + 1);
  CHECK(a.j == 0);
  CHECK(a.s == 3);
  const FShape b = classify_f(X.pow(2) + X);
  CHECK(b.j == 1);
  CHECK(b.s == 1);
  const FShape c = classify_f(X.pow(7) + X.pow(3));
  CHECK(c.j == 3);
  CHECK(c.s == 4);
  CHECK(classify_f(X.pow(5)).s == 0);
}

TEST_CASE("phi classification examples") {
  const PhiShape z4 = classify_phi(Z.pow(4));
  CHECK(z4.d == 4);
  REQUIRE(z4.power.has_value());
  CHECK(z4.power->c == CycScalar(1));
  CHECK(z4.power->a.is_zero());
  CHECK(z4.periodic.i == 4);
  CHECK(z4.periodic.m == 0);

  const PhiShape p82 = classify_phi(Z.pow(8) + Z.pow(2));
  const MultiPoly t = MultiPoly::variable("t");
  CHECK(p82.periodic.i == 2);
  CHECK(p82.periodic.m == 6);
  CHECK(p82.periodic.phi0 == t + 1);
  CHECK_FALSE(p82.power.has_value());

  const PhiShape p21 = classify_phi(Z.pow(2) + Z);
  CHECK(p21.periodic.i == 1);
  CHECK(p21.periodic.m == 1);
  // About its center -1/2, z^2 + z = (z + 1/2)^2 - 1/4 is even.
  CHECK(p21.centered.center == CycScalar(Rational(-1, 2)));
  CHECK(p21.centered.i == 0);
  CHECK(p21.centered.m == 2);

  const PhiShape shifted = classify_phi((Z - 3).pow(3).scaled(CycScalar(5)));
  REQUIRE(shifted.power.has_value());
  CHECK(shifted.power->a == CycScalar(3));
  CHECK(shifted.power->c == CycScalar(5));
}

TEST_CASE("property: classify_phi reconstructs phi exactly") {
  testgen::Gen gen(501);
  for (int trial = 0; trial < 200; ++trial) {
    MultiPoly phi = gen.univariate("z", 7, true);
    if (trial % 3 == 0) phi = phi.substitute({{"z", Z + MultiPoly(CycScalar(gen.rational()))}});
    if (trial % 5 == 0) phi = (Z - MultiPoly(CycScalar(gen.rational()))).pow(static_cast<unsigned>(gen.integer(1, 6)));
    const PhiShape shape = classify_phi(phi);
    CHECK(shape.periodic.reconstruct() == phi);
    CHECK(shape.centered.reconstruct() == phi);
    if (shape.power) CHECK((Z - shape.power->a).pow(shape.d).scaled(shape.power->c) == phi);
  }
}

TEST_CASE("generator factories") {
  const SurfacePtr s = SurfaceSpec::relation(X, Z.pow(2));
  const RingMap t0 = make_generator(Triangular{MultiPoly()}, s);
  CHECK(t0.is_identity());
  const RingMap t1 = make_generator(Triangular{MultiPoly(1)}, s);
  CHECK(t1.image("x").rep() == X);
  CHECK(t1.image("y").rep() == Y + MultiPoly(2) * Z + X);
  CHECK(t1.image("z").rep() == Z + X);

  const CycScalar lam = CycScalar::zeta(5);
  const RingMap h = make_generator(Hyperbolic{lam}, s);
  CHECK(h.image("x").rep() == X.scaled(lam));
  CHECK(h.image("y").rep() == Y.scaled(lam.inverse()));
  CHECK(h.image("z").rep() == Z);

  const RingMap inv = make_generator(Involution{}, s);
  CHECK(inv.image("x").rep() == Y);

  const SurfacePtr fx = SurfaceSpec::relation(X.pow(3) + 1, Z.pow(2));
  CHECK_THROWS_AS(make_generator(Involution{}, fx), ShapeMismatch);
  CHECK_THROWS_AS(make_generator(Hyperbolic{CycScalar(-1)}, fx), ShapeMismatch);
  CHECK_NOTHROW(make_generator(Hyperbolic{CycScalar::zeta(3)}, fx));
  CHECK_THROWS_AS(make_generator(Rescaling{CycScalar(2)}, SurfaceSpec::relation(X, Z.pow(2) + 1)), ShapeMismatch);
  CHECK_THROWS_AS(make_generator(Symmetry{CycScalar(-1)}, SurfaceSpec::relation(X, Z.pow(3) + Z.pow(2))),
                  ShapeMismatch);

  // Rescaling and symmetry about a shifted center.
  const SurfacePtr shifted = SurfaceSpec::relation(X, (Z - 1).pow(3));
  const RingMap r = make_generator(Rescaling{CycScalar(2)}, shifted);
  CHECK(r.image("z").rep() == MultiPoly(2) * Z - 1);
  CHECK(r.image("y").rep() == MultiPoly(8) * Y);
  const SurfacePtr even = SurfaceSpec::relation(X, Z.pow(2) + Z);
  const RingMap sym = make_generator(Symmetry{CycScalar(-1)}, even);
  CHECK(sym.image("z").rep() == -Z - 1);
  CHECK(sym.image("y").rep() == Y);
}

TEST_CASE("property: factory outputs are well defined and triangulars compose") {
  testgen::Gen gen(502);
  for (int trial = 0; trial < 40; ++trial) {
    const SurfacePtr s = SurfaceSpec::relation(gen.univariate("x", 3, true), gen.univariate("z", 4, true));
    const Derivation d = canonical_lnd(s, gen.univariate("x", 2)).derivation;
    const RingMap t1 = make_generator(Triangular{gen.univariate("x", 3)}, s);
    const RingMap t2 = make_generator(Triangular{gen.univariate("x", 3)}, s);
    const RingMap both = compose_maps(t1, t2);
    CHECK(check_map_well_defined({{"x", both.image("x").rep()}, {"y", both.image("y").rep()},
                                  {"z", both.image("z").rep()}},
                                 s));
    CHECK(commutes(t1, d).holds);
    CHECK(commutes(both, d).holds);
  }
}

TEST_CASE("hyperbolic order bound") {
  CHECK(hyperbolic_order_bound(MultiPoly(1), 2) == 2);
  CHECK(hyperbolic_order_bound(X + 1, 2) == 1);
  CHECK(hyperbolic_order_bound(X.pow(3), 1) == 4);
  CHECK(hyperbolic_order_bound(X.pow(2) + 1, 4) == 2);
  CHECK_THROWS_AS(hyperbolic_order_bound(MultiPoly(), 2), std::invalid_argument);

  const SurfacePtr fx = SurfaceSpec::relation(X.pow(3) + 1, Z.pow(2));
  CHECK(hyperbolic_admissible_bound(*fx, MultiPoly(1)) == 3);
  CHECK(hyperbolic_admissible_bound(*fx, X) == 1);
  CHECK(hyperbolic_admissible_bound(*SurfaceSpec::relation(X.pow(2) + X, Z.pow(2)), MultiPoly(1)) == 1);
}

TEST_CASE("bound agrees with a brute-force sweep over roots of unity") {
  CHECK(brute_bound(SurfaceSpec::relation(X, Z.pow(2)), X.pow(3), 8) == 4);
  CHECK(brute_bound(SurfaceSpec::relation(X, Z.pow(3)), MultiPoly(1), 6) == 1);
  CHECK(brute_bound(SurfaceSpec::relation(X.pow(2), Z.pow(3)), X + 1, 6) == 1);
  CHECK(brute_bound(SurfaceSpec::relation(X.pow(3), Z.pow(2)), MultiPoly(1), 12) == 3);
  CHECK(brute_bound(SurfaceSpec::relation(X.pow(2), Z.pow(2)), X.pow(2), 8) == 4);
  CHECK(brute_bound(SurfaceSpec::relation(X.pow(3) + 1, Z.pow(2)), MultiPoly(1), 9) == 3);
  CHECK(brute_bound(SurfaceSpec::relation(X.pow(3) + 1, Z.pow(2)), X, 9) == 1);
}

TEST_CASE("canonical derivations") {
  const CanonicalLND a = canonical_lnd(SurfaceSpec::relation(X, Z.pow(2)), MultiPoly(1));
  CHECK(a.derivation.image("x").is_zero());
  CHECK(a.derivation.image("y").rep() == MultiPoly(2) * Z);
  CHECK(a.derivation.image("z").rep() == X);

  const CanonicalLND b = canonical_lnd(SurfaceSpec::relation(X.pow(2), Z.pow(3)), MultiPoly(1));
  CHECK(b.derivation.image("y").rep() == MultiPoly(3) * Z.pow(2));
  CHECK(b.derivation.image("z").rep() == X.pow(2));

  const CanonicalLND c = canonical_lnd(SurfaceSpec::relation(X.pow(2) + X, Z.pow(2)), X);
  CHECK(c.derivation.image("y").rep() == MultiPoly(2) * X * Z);
  CHECK(c.derivation.image("z").rep() == X.pow(3) + X.pow(2));

  CHECK_THROWS_AS(canonical_lnd(SurfaceSpec::relation(X, Z.pow(2)), Y), std::invalid_argument);
  CHECK(canonical_lnd(SurfaceSpec::relation(X, Z.pow(2)), MultiPoly()).derivation.is_zero());
  CHECK_THROWS_AS(verify_isotropy_theorem(SurfaceSpec::relation(X, Z.pow(2)), MultiPoly(), Sampling{}),
                  std::invalid_argument);
}

TEST_CASE("verification suites pass on representative surfaces") {
  Sampling sampling;
  const auto run = [&](const MultiPoly& f, const MultiPoly& phi, const MultiPoly& g) {
    const VerifyReport r = verify_isotropy_theorem(SurfaceSpec::relation(f, phi), g, sampling);
    for (const auto& c : r.checks)
      CHECK_MESSAGE(c.matches(), c.family << " " << c.params << " " << c.witness.value_or(""));
    return r;
  };
  const VerifyReport xy = run(X, Z.pow(3), MultiPoly(1));
  CHECK(xy.pass);
  CHECK(xy.suite == "xy");
  const auto count = [](const VerifyReport& r, const std::string& fam) {
    return std::count_if(r.checks.begin(), r.checks.end(), [&](const CheckRecord& c) { return c.family == fam; });
  };
  CHECK(count(xy, "involution") == 1);
  CHECK(count(xy, "triangular") >= 5);
  CHECK(count(xy, "exp-kernel") >= 1);
  CHECK(run(X.pow(2), Z.pow(3), MultiPoly(1)).pass);
  CHECK(run(X.pow(2) + X, Z.pow(3), X).pass);
  CHECK(run(MultiPoly(2) * X.pow(3), Z.pow(4) + Z.pow(2) + 1, X + 1).pass);

  // Same seed, same report.
  const auto again = verify_isotropy_theorem(SurfaceSpec::relation(X, Z.pow(3)), MultiPoly(1), sampling);
  REQUIRE(again.checks.size() == xy.checks.size());
  for (std::size_t k = 0; k < again.checks.size(); ++k) CHECK(again.checks[k].params == xy.checks[k].params);
}

TEST_CASE("plane suites") {
  Sampling sampling;
  for (unsigned s = 2; s <= 4; ++s) CHECK(plane_example_suite(s, CycScalar(1), sampling).pass);
  CHECK(plane_translation_suite(sampling).pass);
  const MultiPoly PX = MultiPoly::variable("X");
  CHECK(plane_partial_suite(PX.pow(2) + 1, sampling).pass);
  CHECK(plane_partial_suite(PX.pow(3), sampling).pass);
}
