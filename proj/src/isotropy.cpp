#include "dansurf/isotropy.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dansurf {

namespace {

const MultiPoly kX = MultiPoly::variable("x");
const MultiPoly kY = MultiPoly::variable("y");
const MultiPoly kZ = MultiPoly::variable("z");

PeriodicForm periodic_about(const MultiPoly& shifted, const CycScalar& center) {
  const auto coeffs = shifted.univariate_coeffs("z");
  std::vector<unsigned> support;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) support.push_back(static_cast<unsigned>(k));
  PeriodicForm form;
  form.center = center;
  form.i = support.front();
  unsigned m = 0;
  for (unsigned e : support) m = std::gcd(m, e - form.i);
  form.m = m;
  std::vector<CycScalar> inner;
  if (m == 0) {
    inner.push_back(coeffs[form.i]);
  } else {
    inner.resize((support.back() - form.i) / m + 1);
    for (unsigned e : support) inner[(e - form.i) / m] = coeffs[e];
  }
  form.phi0 = MultiPoly::univariate("t", inner);
  return form;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  CycScalar rational() {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    return CycScalar(Rational(num(rng_), den(rng_)));
  }

  CycScalar nonzero_rational() {
    for (;;) {
      CycScalar c = rational();
      if (!c.is_zero()) return c;
    }
  }

  MultiPoly poly(const std::string& var, unsigned max_degree) {
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    const unsigned d = deg(rng_);
    std::vector<CycScalar> coeffs;
    for (unsigned k = 0; k <= d; ++k) coeffs.push_back(rational());
    coeffs.back() = nonzero_rational();
    return MultiPoly::univariate(var, coeffs);
  }

 private:
  std::mt19937_64 rng_;
};

void push_unique(std::vector<CycScalar>& out, const CycScalar& c) {
  if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
}

std::string order_str(const CycScalar& c) {
  auto o = root_of_unity_order(c);
  return o ? std::to_string(*o) : std::string("none");
}

CheckRecord commutation_record(const std::string& family, const std::string& params, bool expected,
                               const RingMap& rho, const Derivation& d) {
  CheckRecord r{family, params, expected, false, std::nullopt};
  const CommutationResult c = commutes(rho, d);
  r.observed = c.holds;
  if (c.witness) r.witness = "at " + c.witness->generator + ": " + c.witness->difference.str();
  return r;
}

template <typename Fn>
CheckRecord guarded(const std::string& family, const std::string& params, bool expected, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return CheckRecord{family, params, expected, false, std::string(e.what())};
  }
}

// Orders k >= 2 not dividing `bound`, smallest first.
std::vector<unsigned> non_divisor_orders(unsigned bound, std::size_t count) {
  std::vector<unsigned> out;
  for (unsigned k = 2; out.size() < count; ++k)
    if (bound == 0 || bound % k != 0) out.push_back(k);
  return out;
}

}  // namespace

SurfaceClass classify_surface(const SurfaceSpec& s) {
  if (!s.is_relation()) throw std::invalid_argument("surface class is defined only for relation surfaces");
  if (s.f().term_count() == 1) return s.m() == 1 ? SurfaceClass::xy : SurfaceClass::xn;
  return SurfaceClass::fx;
}

std::string to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::xy: return "xy";
    case SurfaceClass::xn: return "xn";
    case SurfaceClass::fx: return "fx";
  }
  return "?";
}

FShape classify_f(const MultiPoly& f) {
  const auto support = exponent_support(f, "x");
  FShape shape;
  shape.j = *support.begin();
  for (unsigned e : support) shape.s = std::gcd(shape.s, e - shape.j);
  return shape;
}

MultiPoly PeriodicForm::reconstruct() const {
  const MultiPoly u = kZ - MultiPoly(center);
  const auto inner = phi0.univariate_coeffs("t");
  MultiPoly out;
  for (std::size_t k = 0; k < inner.size(); ++k)
    out += u.pow(i + m * static_cast<unsigned>(k)).scaled(inner[k]);
  return out;
}

PhiShape classify_phi(const MultiPoly& phi) {
  const int deg = phi.degree("z");
  if (deg < 1 || !phi.depends_only_on({"z"})) throw std::invalid_argument("phi must be a polynomial in z of degree >= 1");
  PhiShape shape;
  shape.d = static_cast<unsigned>(deg);
  const auto coeffs = phi.univariate_coeffs("z");
  const CycScalar lead = coeffs.back();
  const CycScalar center = -(coeffs[shape.d - 1] / (lead * CycScalar(static_cast<long>(shape.d))));
  const MultiPoly shifted = phi.substitute({{"z", kZ + MultiPoly(center)}});
  shape.periodic = periodic_about(phi, CycScalar(0));
  shape.centered = periodic_about(shifted, center);
  if (shifted.term_count() == 1) shape.power = PowerForm{lead, center};
  return shape;
}

std::string family_name(const GeneratorRequest& req) {
  static const char* names[] = {"hyperbolic", "involution", "triangular", "rescaling", "symmetry"};
  return names[req.index()];
}

std::string describe_params(const GeneratorRequest& req) {
  struct Visitor {
    std::string operator()(const Hyperbolic& h) const { return "lambda=" + h.lambda.str(); }
    std::string operator()(const Involution&) const { return ""; }
    std::string operator()(const Triangular& t) const { return "h=" + t.h.str(); }
    std::string operator()(const Rescaling& r) const { return "lambda=" + r.lambda.str(); }
    std::string operator()(const Symmetry& s) const { return "mu=" + s.mu.str(); }
  };
  return std::visit(Visitor{}, req);
}

Images hyperbolic_images(const SurfaceSpec& s, const CycScalar& lambda) {
  if (!s.is_relation()) throw std::invalid_argument("hyperbolic rotations need a relation surface");
  if (lambda.is_zero()) throw std::invalid_argument("hyperbolic parameter must be a unit");
  const FShape shape = classify_f(s.f());
  return {{"x", kX.scaled(lambda)},
          {"y", kY.scaled(lambda.pow(-static_cast<long>(shape.j)))},
          {"z", kZ}};
}

RingMap make_generator(const GeneratorRequest& req, const SurfacePtr& surface) {
  const SurfaceSpec& s = *surface;
  if (!s.is_relation()) throw ShapeMismatch("generator families are defined for relation surfaces");
  Images images;
  if (const auto* h = std::get_if<Hyperbolic>(&req)) {
    const FShape shape = classify_f(s.f());
    if (h->lambda.is_zero()) throw ShapeMismatch("hyperbolic parameter must be nonzero");
    if (shape.s > 0 && !h->lambda.pow(shape.s).is_one())
      throw ShapeMismatch("hyperbolic rotation needs lambda^" + std::to_string(shape.s) + " = 1 for f = " +
                          s.f().str());
    images = hyperbolic_images(s, h->lambda);
  } else if (std::holds_alternative<Involution>(req)) {
    if (classify_surface(s) != SurfaceClass::xy) throw ShapeMismatch("the involution exists only when f = c*x");
    images = {{"x", kY}, {"y", kX}, {"z", kZ}};
  } else if (const auto* t = std::get_if<Triangular>(&req)) {
    if (!t->h.depends_only_on({"x"})) throw ShapeMismatch("triangular h must be a polynomial in x");
    const MultiPoly w = MultiPoly::variable("w");
    const MultiPoly shift = t->h * s.f();
    // phi(z + w) - phi(z) = w * quotient(z, w)
    const MultiPoly quotient =
        (s.phi().substitute({{"z", kZ + w}}) - s.phi()).divide_by_variable_power("w", 1);
    images = {{"x", kX}, {"y", kY + t->h * quotient.substitute({{"w", shift}})}, {"z", kZ + shift}};
  } else if (const auto* r = std::get_if<Rescaling>(&req)) {
    const PhiShape shape = classify_phi(s.phi());
    if (!shape.power) throw ShapeMismatch("rescalings need phi = c*(z - a)^d, got " + s.phi().str());
    if (r->lambda.is_zero()) throw ShapeMismatch("rescaling parameter must be nonzero");
    const CycScalar& a = shape.power->a;
    images = {{"x", kX},
              {"y", kY.scaled(r->lambda.pow(shape.d))},
              {"z", (kZ - MultiPoly(a)).scaled(r->lambda) + MultiPoly(a)}};
  } else if (const auto* sym = std::get_if<Symmetry>(&req)) {
    const PhiShape shape = classify_phi(s.phi());
    const PeriodicForm& form = shape.centered;
    if (form.m == 0) throw ShapeMismatch("phi is a power of (z - a); use the rescaling family");
    if (!sym->mu.pow(form.m).is_one())
      throw ShapeMismatch("symmetry needs mu^" + std::to_string(form.m) + " = 1");
    const CycScalar& a = form.center;
    images = {{"x", kX},
              {"y", kY.scaled(sym->mu.pow(form.i))},
              {"z", (kZ - MultiPoly(a)).scaled(sym->mu) + MultiPoly(a)}};
  }
  try {
    return RingMap(surface, images);
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(family_name(req) + " factory produced an ill-defined map: " + e.what());
  }
}

unsigned hyperbolic_order_bound(const MultiPoly& g, unsigned n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  unsigned bound = 0;
  for (unsigned e : exponent_support(g, "x")) bound = std::gcd(bound, n + e);
  return bound;
}

unsigned hyperbolic_admissible_bound(const SurfaceSpec& s, const MultiPoly& g) {
  const FShape shape = classify_f(s.f());
  unsigned bound = shape.s;
  for (unsigned e : exponent_support(g, "x")) bound = std::gcd(bound, shape.j + e);
  return bound;
}

CanonicalLND canonical_lnd(const SurfacePtr& surface, const MultiPoly& g) {
  if (!surface->is_relation()) throw std::invalid_argument("canonical derivations need a relation surface");
  if (!g.depends_only_on({"x"})) throw std::invalid_argument("g must be a polynomial in x, got " + g.str());
  const Images images{{"x", MultiPoly()},
                      {"y", g * surface->phi().partial_derivative("z")},
                      {"z", g * surface->f()}};
  try {
    return CanonicalLND{surface, g, Derivation(surface, images)};
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("canonical derivation is ill-defined: ") + e.what());
  }
}

void VerifyReport::finalize() {
  pass = !checks.empty() && failures() == 0;
}

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckRecord& r) { return !r.matches(); }));
}

VerifyReport verify_isotropy_theorem(const SurfacePtr& surface, const MultiPoly& g, const Sampling& sampling) {
  if (!surface->is_relation()) throw std::invalid_argument("isotropy suites need a relation surface");
  if (surface->d() < 2) throw std::invalid_argument("isotropy suites need deg phi >= 2");
  if (g.is_zero()) throw std::invalid_argument("g must be nonzero");
  const SurfaceClass cls = classify_surface(*surface);
  const CanonicalLND lnd = canonical_lnd(surface, g);
  const Derivation& d = lnd.derivation;
  Sampler sampler(sampling.seed);

  VerifyReport report;
  report.suite = to_string(cls);
  report.surface = surface->str();
  report.g = g.str();

  // Triangular family.
  std::vector<MultiPoly> hs{MultiPoly()};
  for (unsigned k = 0; k <= sampling.max_h_degree; ++k) hs.push_back(kX.pow(k));
  for (unsigned k = 0; k < sampling.h_samples; ++k) hs.push_back(sampler.poly("x", sampling.max_h_degree));
  hs.insert(hs.end(), sampling.extra_h.begin(), sampling.extra_h.end());
  std::vector<std::pair<MultiPoly, RingMap>> triangulars;
  for (const auto& h : hs) {
    const GeneratorRequest req = Triangular{h};
    report.checks.push_back(guarded("triangular", describe_params(req), true, [&] {
      RingMap t = make_generator(req, surface);
      triangulars.emplace_back(h, t);
      return commutation_record("triangular", describe_params(req), true, t, d);
    }));
  }
  for (std::size_t k = 1; k + 1 < triangulars.size(); k += 2) {
    const auto& [h1, t1] = triangulars[k];
    const auto& [h2, t2] = triangulars[k + 1];
    const std::string params = "T(" + h1.str() + ") o T(" + h2.str() + ")";
    report.checks.push_back(guarded("triangular-composite", params, true, [&] {
      return commutation_record("triangular-composite", params, true, compose_maps(t1, t2), d);
    }));
  }

  if (cls == SurfaceClass::xy) {
    report.checks.push_back(guarded("involution", "", false, [&] {
      return commutation_record("involution", "", false, make_generator(Involution{}, surface), d);
    }));
  }

  // Hyperbolic rotations: membership iff order(lambda) | bound.
  const FShape fshape = classify_f(surface->f());
  const unsigned bound = hyperbolic_admissible_bound(*surface, g);
  std::vector<CycScalar> lambdas;
  for (const auto& c : roots_of_unity(bound)) push_unique(lambdas, c);
  for (unsigned k : non_divisor_orders(bound, 2)) push_unique(lambdas, CycScalar::zeta(k));
  if (fshape.s > 0)
    for (const auto& c : roots_of_unity(fshape.s)) push_unique(lambdas, c);
  push_unique(lambdas, CycScalar(2));
  for (const auto& c : sampling.lambda_candidates)
    if (!c.is_zero()) push_unique(lambdas, c);
  for (const auto& lambda : lambdas) {
    const auto order = root_of_unity_order(lambda);
    const bool expected = order && bound % *order == 0;
    const std::string params =
        "lambda=" + lambda.str() + ", order=" + order_str(lambda) + ", bound=" + std::to_string(bound);
    report.checks.push_back(guarded("hyperbolic", params, expected, [&] {
      const Images images = hyperbolic_images(*surface, lambda);
      const MultiPoly residue = map_residue(images, surface);
      if (!residue.is_zero())
        return CheckRecord{"hyperbolic", params, expected, false, "not well-defined: residue " + residue.str()};
      return commutation_record("hyperbolic", params, expected, RingMap(surface, images), d);
    }));
  }

  const PhiShape shape = classify_phi(surface->phi());
  if (shape.power) {
    std::vector<CycScalar> params{CycScalar(1), CycScalar(-1), CycScalar::zeta(3), CycScalar::zeta(4),
                                  CycScalar(2), CycScalar(Rational(1, 2))};
    for (const auto& c : sampling.lambda_candidates)
      if (!c.is_zero()) push_unique(params, c);
    for (const auto& lambda : params) {
      const GeneratorRequest req = Rescaling{lambda};
      const std::string desc = describe_params(req) + ", a=" + shape.power->a.str();
      report.checks.push_back(guarded("rescaling", desc, lambda.is_one(), [&] {
        return commutation_record("rescaling", desc, lambda.is_one(), make_generator(req, surface), d);
      }));
    }
  }
  if (shape.centered.m >= 1) {
    for (const auto& mu : roots_of_unity(shape.centered.m)) {
      const GeneratorRequest req = Symmetry{mu};
      const std::string desc = describe_params(req) + ", a=" + shape.centered.center.str() +
                               ", i=" + std::to_string(shape.centered.i) +
                               ", m=" + std::to_string(shape.centered.m);
      report.checks.push_back(guarded("symmetry", desc, mu.is_one(), [&] {
        return commutation_record("symmetry", desc, mu.is_one(), make_generator(req, surface), d);
      }));
    }
  }

  // exp(w D) for w in K[x] = part of ker D.
  for (unsigned k = 0; k < sampling.kernel_samples; ++k) {
    const MultiPoly w = sampler.poly("x", sampling.max_kernel_degree);
    const std::string params = "w=" + w.str();
    report.checks.push_back(guarded("exp-kernel", params, true, [&] {
      const Derivation wd = scale_by_kernel(d, SurfaceElement(surface, w));
      const RingMap forward = exp_derivation(wd);
      const RingMap backward = exp_derivation(wd.negated());
      if (!is_inverse_pair(forward, backward))
        return CheckRecord{"exp-kernel", params, true, false, std::string("exp(-wD) is not inverse to exp(wD)")};
      return commutation_record("exp-kernel", params, true, forward, d);
    }));
  }

  report.finalize();
  return report;
}

VerifyReport plane_example_suite(unsigned s, const CycScalar& p, const Sampling& sampling) {
  if (s < 2) throw std::invalid_argument("plane example needs s >= 2");
  if (p.is_zero()) throw std::invalid_argument("plane example needs p != 0");
  const SurfacePtr plane = SurfaceSpec::free({"X", "Y"});
  const MultiPoly X = MultiPoly::variable("X"), Y = MultiPoly::variable("Y");
  const Derivation d(plane, {{"X", X}, {"Y", Y.pow(s) + X.scaled(p)}});
  Sampler sampler(sampling.seed);

  VerifyReport report;
  report.suite = "plane-example";
  report.surface = plane->str();
  report.g = d.str("d");

  std::vector<CycScalar> cs;
  const unsigned top = std::max(2 * (s - 1), s + 1);
  for (unsigned k = 1; k <= top; ++k)
    for (const auto& c : roots_of_unity(k)) push_unique(cs, c);
  push_unique(cs, CycScalar(2));
  push_unique(cs, CycScalar(Rational(-1, 3)));
  for (const auto& c : sampling.lambda_candidates)
    if (!c.is_zero()) push_unique(cs, c);

  unsigned members = 0;
  bool exact_membership = true;
  for (const auto& c : cs) {
    const bool expected = c.pow(s - 1).is_one();
    const std::string params = "c=" + c.str() + ", order=" + order_str(c);
    CheckRecord r = guarded("scaling", params, expected, [&] {
      return commutation_record("scaling", params, expected, RingMap(plane, {{"X", X.scaled(c)}, {"Y", Y.scaled(c)}}), d);
    });
    if (r.observed) ++members;
    exact_membership = exact_membership && r.matches();
    report.checks.push_back(std::move(r));
  }
  report.checks.push_back(CheckRecord{"group-order", "s-1=" + std::to_string(s - 1), true,
                                      exact_membership && members == s - 1,
                                      members == s - 1 ? std::nullopt
                                                       : std::optional<std::string>(
                                                             "found " + std::to_string(members) + " members")});

  report.checks.push_back(guarded("translation", "X -> X + 1", false, [&] {
    return commutation_record("translation", "X -> X + 1", false, RingMap(plane, {{"X", X + 1}, {"Y", Y}}), d);
  }));
  report.checks.push_back(guarded("translation", "Y -> Y + 1", false, [&] {
    return commutation_record("translation", "Y -> Y + 1", false, RingMap(plane, {{"X", X}, {"Y", Y + 1}}), d);
  }));
  for (unsigned k = 0; k < std::max(1u, sampling.h_samples / 2); ++k) {
    const MultiPoly q = sampler.poly("X", 3);
    const std::string params = "Y -> Y + (" + q.str() + ")";
    report.checks.push_back(guarded("shear", params, false, [&] {
      return commutation_record("shear", params, false, RingMap(plane, {{"X", X}, {"Y", Y + q}}), d);
    }));
  }
  report.finalize();
  return report;
}

VerifyReport plane_partial_suite(const MultiPoly& f, const Sampling& sampling) {
  if (f.is_zero() || !f.depends_only_on({"X"})) throw std::invalid_argument("f must be a nonzero polynomial in X");
  const SurfacePtr plane = SurfaceSpec::free({"X", "Y"});
  const MultiPoly X = MultiPoly::variable("X"), Y = MultiPoly::variable("Y");
  const Derivation d(plane, {{"X", MultiPoly()}, {"Y", f}});
  Sampler sampler(sampling.seed);

  VerifyReport report;
  report.suite = "plane-partial";
  report.surface = plane->str();
  report.g = d.str("D");

  struct Affine {
    CycScalar a, b, c;
  };
  std::vector<Affine> shapes{{0, 1, 1}, {0, -1, 1}, {0, 2, 1}, {1, 1, 1}, {0, 1, 2}};
  // f(bX) = b^deg f(X) for monomial f, so (bX, q + b^deg Y) is a member.
  if (f.term_count() == 1) shapes.push_back({0, 2, CycScalar(2).pow(f.degree("X"))});
  for (unsigned k = 0; k < sampling.h_samples; ++k)
    shapes.push_back({sampler.rational(), sampler.nonzero_rational(), sampler.nonzero_rational()});
  for (const auto& [a, b, c] : shapes) {
    const MultiPoly q = sampler.poly("X", 3);
    const MultiPoly rx = MultiPoly(a) + X.scaled(b);
    const bool expected = f.substitute({{"X", rx}}) == f.scaled(c);
    const std::string params = "X -> " + rx.str() + ", Y -> " + (q + Y.scaled(c)).str();
    report.checks.push_back(guarded("affine-triangular", params, expected, [&] {
      return commutation_record("affine-triangular", params, expected,
                                RingMap(plane, {{"X", rx}, {"Y", q + Y.scaled(c)}}), d);
    }));
  }
  report.checks.push_back(guarded("swap", "X <-> Y", false, [&] {
    return commutation_record("swap", "X <-> Y", false, RingMap(plane, {{"X", Y}, {"Y", X}}), d);
  }));
  report.checks.push_back(guarded("mixing", "X -> X + Y", false, [&] {
    return commutation_record("mixing", "X -> X + Y", false, RingMap(plane, {{"X", X + Y}, {"Y", Y}}), d);
  }));
  report.finalize();
  return report;
}

VerifyReport plane_translation_suite(const Sampling& sampling) {
  const SurfacePtr plane = SurfaceSpec::free({"X", "Y"});
  const MultiPoly X = MultiPoly::variable("X"), Y = MultiPoly::variable("Y");
  const Derivation d(plane, {{"X", MultiPoly(1)}, {"Y", MultiPoly()}});
  Sampler sampler(sampling.seed);

  VerifyReport report;
  report.suite = "plane-translation";
  report.surface = plane->str();
  report.g = d.str("D");
  for (unsigned k = 0; k < std::max(2u, sampling.h_samples); ++k) {
    const MultiPoly q = sampler.poly("Y", 3);
    const MultiPoly ry = MultiPoly(sampler.rational()) + Y.scaled(sampler.nonzero_rational());
    const std::string params = "X -> " + (X + q).str() + ", Y -> " + ry.str();
    report.checks.push_back(guarded("translation-family", params, true, [&] {
      return commutation_record("translation-family", params, true, RingMap(plane, {{"X", X + q}, {"Y", ry}}), d);
    }));
  }
  report.checks.push_back(guarded("scaling", "X -> 2*X", false, [&] {
    return commutation_record("scaling", "X -> 2*X", false, RingMap(plane, {{"X", X.scaled(2)}, {"Y", Y}}), d);
  }));
  report.checks.push_back(guarded("mixing", "Y -> Y + X", false, [&] {
    return commutation_record("mixing", "Y -> Y + X", false, RingMap(plane, {{"X", X}, {"Y", Y + X}}), d);
  }));
  report.finalize();
  return report;
}

}  // namespace dansurf
