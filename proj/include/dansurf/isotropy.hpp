#ifndef DANSURF_ISOTROPY_HPP
#define DANSURF_ISOTROPY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dansurf/diffmaps.hpp"

namespace dansurf {

// ---------------------------------------------------------------------------
// Shape detection

/// xy: f = c*x; xn: f = c*x^n with n > 1; fx: anything else.
enum class SurfaceClass { xy, xn, fx };

SurfaceClass classify_surface(const SurfaceSpec& s);
std::string to_string(SurfaceClass c);

/// f(x) = x^j * h(x^s) with s maximal; s = 0 when f is a monomial
/// (then every s works).
struct FShape {
  unsigned j = 0;
  unsigned s = 0;
};

FShape classify_f(const MultiPoly& f);

/// phi(z) = (z - center)^i * phi0((z - center)^m) with m maximal;
/// m = 0 marks a monomial in (z - center).
struct PeriodicForm {
  CycScalar center;
  unsigned i = 0;
  unsigned m = 0;
  MultiPoly phi0;  // in t

  MultiPoly reconstruct() const;
};

struct PowerForm {
  CycScalar c;
  CycScalar a;  // phi = c (z - a)^d
};

struct PhiShape {
  unsigned d = 0;
  std::optional<PowerForm> power;
  /// Periodic structure about z = 0.
  PeriodicForm periodic;
  /// Periodic structure about the barycenter of the roots, -a_{d-1}/(d a_d).
  /// When any shifted form with m >= 2 exists, it is this one.
  PeriodicForm centered;
};

PhiShape classify_phi(const MultiPoly& phi);

// ---------------------------------------------------------------------------
// Generator families

struct Hyperbolic {
  CycScalar lambda;
};
struct Involution {};
struct Triangular {
  MultiPoly h;  // in x
};
struct Rescaling {
  CycScalar lambda;
};
struct Symmetry {
  CycScalar mu;
};

using GeneratorRequest = std::variant<Hyperbolic, Involution, Triangular, Rescaling, Symmetry>;

std::string family_name(const GeneratorRequest& req);
std::string describe_params(const GeneratorRequest& req);

/// Thrown when the requested family is not available for the surface shape.
struct ShapeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/*
 * Builds the automorphism for one family member:
 *   hyperbolic  x -> lambda x, y -> lambda^-j y, z -> z  (needs lambda^s = 1 for
 *               f = x^j h(x^s); any unit lambda when f is a monomial)
 *   involution  x <-> y, z -> z                           (xy class)
 *   triangular  x -> x, z -> z + h f, y -> y + (phi(z + h f) - phi(z)) / f
 *   rescaling   x -> x, y -> lambda^d y, z -> lambda (z - a) + a  (phi = c (z-a)^d)
 *   symmetry    x -> x, y -> mu^i y, z -> mu (z - a) + a
 *               (phi = (z-a)^i phi0((z-a)^m), mu^m = 1, m >= 1)
 * Every output is checked for well-definedness; a failure there is a
 * std::logic_error.
 */
RingMap make_generator(const GeneratorRequest& req, const SurfacePtr& surface);

/// Images of x -> lambda x, y -> lambda^-j y, z -> z without shape checks.
Images hyperbolic_images(const SurfaceSpec& s, const CycScalar& lambda);

/// gcd of {n + n_l} over the exponent support of g. The hyperbolic rotation
/// with parameter lambda commutes with g-scaled canonical derivations on
/// x^n y = phi(z) exactly when the order of lambda divides this number.
unsigned hyperbolic_order_bound(const MultiPoly& g, unsigned n);

/// Same criterion for an arbitrary surface: gcd(s, j + n_l) with
/// f = x^j h(x^s). Reduces to hyperbolic_order_bound(g, n) for f = c x^n.
unsigned hyperbolic_admissible_bound(const SurfaceSpec& s, const MultiPoly& g);

struct CanonicalLND {
  SurfacePtr surface;
  MultiPoly g;
  Derivation derivation;
};

/// D(x) = 0, D(y) = g(x) phi'(z), D(z) = g(x) f(x).
CanonicalLND canonical_lnd(const SurfacePtr& surface, const MultiPoly& g);

// ---------------------------------------------------------------------------
// Verification suites

struct CheckRecord {
  std::string family;
  std::string params;
  bool expected = false;
  bool observed = false;
  std::optional<std::string> witness;

  bool matches() const { return expected == observed; }
};

struct VerifyReport {
  std::string suite;
  std::string surface;
  std::string g;
  std::vector<CheckRecord> checks;
  bool pass = false;

  void finalize();
  std::size_t failures() const;
};

struct Sampling {
  unsigned max_h_degree = 4;
  unsigned h_samples = 6;
  unsigned kernel_samples = 4;
  unsigned max_kernel_degree = 3;
  /// Extra hyperbolic / rescaling parameters on top of the defaults.
  std::vector<CycScalar> lambda_candidates;
  /// Extra triangular parameters h(x) tested on top of the sampled ones.
  std::vector<MultiPoly> extra_h;
  std::uint64_t seed = 20240229;
};

/*
 * Checks each generator family against its predicted isotropy membership
 * for the canonical derivation g(x) * D on the given surface:
 *   triangular always commutes (sampled h, plus pairwise compositions),
 *   involution never (xy class),
 *   hyperbolic iff order(lambda) divides hyperbolic_admissible_bound,
 *   rescaling / symmetry only at the identity parameter,
 *   exp(w D) for sampled w in K[x] always commutes.
 */
VerifyReport verify_isotropy_theorem(const SurfacePtr& surface, const MultiPoly& g, const Sampling& sampling);

/// d = X dX + (Y^s + p X) dY on K[X,Y]: (cX, cY) commutes iff c^(s-1) = 1.
VerifyReport plane_example_suite(unsigned s, const CycScalar& p, const Sampling& sampling);

/// D = f(X) dY on K[X,Y]: (a + bX, q(X) + cY) commutes iff f(a + bX) = c f(X);
/// maps moving Y into X fail.
VerifyReport plane_partial_suite(const MultiPoly& f, const Sampling& sampling);

/// D = dX on K[X,Y]: (X + q(Y), a + bY) commutes; scalings of X fail.
VerifyReport plane_translation_suite(const Sampling& sampling);

}  // namespace dansurf

#endif
