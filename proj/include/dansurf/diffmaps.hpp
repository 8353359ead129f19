#ifndef DANSURF_DIFFMAPS_HPP
#define DANSURF_DIFFMAPS_HPP

#include <map>
#include <optional>
#include <string>

#include "dansurf/surface.hpp"

namespace dansurf {

/// Generator name -> image polynomial, as written by a user.
using Images = std::map<std::string, MultiPoly>;

/// Normal form of f'(x) Dx y + f(x) Dy - phi'(z) Dz; zero iff the images
/// extend to a derivation of B. Always zero on a free ring.
MultiPoly derivation_residue(const Images& images, const SurfacePtr& surface);
bool check_derivation_well_defined(const Images& images, const SurfacePtr& surface);

/// Normal form of f(rho x) rho y - phi(rho z).
MultiPoly map_residue(const Images& images, const SurfacePtr& surface);
bool check_map_well_defined(const Images& images, const SurfacePtr& surface);

class Derivation {
 public:
  /// Every generator needs an image; throws std::invalid_argument when the
  /// images do not respect the defining relation.
  Derivation(SurfacePtr surface, const Images& images);
  static Derivation zero(const SurfacePtr& surface);

  const SurfacePtr& surface() const { return surface_; }
  const SurfaceElement& image(const std::string& generator) const;
  const std::map<std::string, SurfaceElement>& images() const { return images_; }

  Derivation negated() const;
  bool is_zero() const;

  /// `D: x -> <poly>; y -> <poly>; z -> <poly>`
  std::string str(const std::string& name = "D") const;

 private:
  SurfacePtr surface_;
  std::map<std::string, SurfaceElement> images_;
};

/// A K-algebra endomorphism of B given by generator images. Invertibility is
/// not implied; see is_inverse_pair.
class RingMap {
 public:
  RingMap(SurfacePtr surface, const Images& images);
  static RingMap identity(const SurfacePtr& surface);

  const SurfacePtr& surface() const { return surface_; }
  const SurfaceElement& image(const std::string& generator) const;
  const std::map<std::string, SurfaceElement>& images() const { return images_; }
  bool is_identity() const;

  /// `M: x -> <poly>; y -> <poly>; z -> <poly>`
  std::string str(const std::string& name = "M") const;

 private:
  SurfacePtr surface_;
  std::map<std::string, SurfaceElement> images_;
};

SurfaceElement apply_derivation(const Derivation& d, const SurfaceElement& p);
SurfaceElement apply_map(const RingMap& rho, const SurfaceElement& p);

/// The map p -> outer(inner(p)).
RingMap compose_maps(const RingMap& outer, const RingMap& inner);

/// True when both compositions are the identity on generators.
bool is_inverse_pair(const RingMap& a, const RingMap& b);

struct CommutationWitness {
  std::string generator;
  SurfaceElement difference;  // rho(D(v)) - D(rho(v))
};

struct CommutationResult {
  bool holds = false;
  std::optional<CommutationWitness> witness;
  explicit operator bool() const { return holds; }
};

/*
 * Tests rho o D = D o rho on the generators only. That suffices: the
 * difference E = rho D - D rho satisfies E(ab) = rho(a) E(b) + rho(b) E(a),
 * so E vanishes on all of B once it vanishes on x, y, z. The first failing
 * generator (in generator order) is returned as witness.
 */
CommutationResult commutes(const RingMap& rho, const Derivation& d);

struct NilpotencyReport {
  /// Least k with D^k(v) = 0, or nullopt when the cap was exceeded.
  std::map<std::string, std::optional<unsigned>> index;
  unsigned cap = 0;

  /// True when every generator reached zero within the cap. False means
  /// inconclusive, not a disproof.
  bool locally_nilpotent() const;
};

/// 2 + deg(phi) * (1 + max deg_x of the images) on surfaces;
/// 2 + #generators * (1 + max total degree of the images) on free rings.
unsigned default_nilpotency_cap(const Derivation& d);
NilpotencyReport is_locally_nilpotent(const Derivation& d, unsigned cap);

bool kernel_contains(const Derivation& d, const SurfaceElement& p);

/// w * D for w in ker D; throws std::invalid_argument otherwise.
Derivation scale_by_kernel(const Derivation& d, const SurfaceElement& w);

/// v -> sum_k D^k(v) / k!. Throws std::runtime_error when some generator is
/// not annihilated within `cap` iterations (cap 0 selects the default).
RingMap exp_derivation(const Derivation& d, unsigned cap = 0);

}  // namespace dansurf

#endif
