#ifndef DANSURF_SURFACE_HPP
#define DANSURF_SURFACE_HPP

#include <memory>
#include <string>
#include <vector>

#include "dansurf/multipoly.hpp"

namespace dansurf {

class SurfaceSpec;
using SurfacePtr = std::shared_ptr<const SurfaceSpec>;

/*
 * Presentation of B = K[x,y,z]/(f(x) y - phi(z)), or a free polynomial ring
 * in declared variables.
 *
 * Normal forms come from the single rewrite rule
 *   lc * x^m * y  ->  phi(z) - (f(x) - lc * x^m) * y,
 * which strictly lowers (deg_y, deg_x) lexicographically. Reduced
 * polynomials have no monomial with deg_x >= m and deg_y >= 1.
 */
class SurfaceSpec {
 public:
  enum class Kind { relation, free };

  static SurfacePtr relation(const MultiPoly& f, const MultiPoly& phi);
  static SurfacePtr free(std::vector<std::string> variables);

  Kind kind() const { return kind_; }
  bool is_relation() const { return kind_ == Kind::relation; }

  const MultiPoly& f() const { return f_; }
  const MultiPoly& phi() const { return phi_; }
  unsigned m() const { return m_; }
  unsigned d() const { return d_; }
  const CycScalar& lc() const { return lc_; }

  /// f(x) y - phi(z); zero for the free kind.
  MultiPoly relation_poly() const;

  /// x, y, z for the relation kind, otherwise the declared variables in order.
  const std::vector<std::string>& generators() const { return generators_; }

  /// Throws when p uses a variable outside generators().
  void check_variables(const MultiPoly& p) const;
  MultiPoly reduce(const MultiPoly& p) const;

  /// `f=<poly>; phi=<poly>` or `free: X,Y`.
  std::string str() const;

  friend bool operator==(const SurfaceSpec& a, const SurfaceSpec& b);

 private:
  SurfaceSpec() = default;

  Kind kind_ = Kind::free;
  MultiPoly f_, phi_, f_tail_;
  unsigned m_ = 0, d_ = 0;
  CycScalar lc_;
  std::vector<std::string> generators_;
};

bool same_surface(const SurfacePtr& a, const SurfacePtr& b);

/// A residue class of B, always held in normal form.
class SurfaceElement {
 public:
  SurfaceElement(SurfacePtr surface, const MultiPoly& p);

  const SurfacePtr& surface() const { return surface_; }
  const MultiPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  SurfaceElement operator-() const;
  friend SurfaceElement operator+(const SurfaceElement& a, const SurfaceElement& b);
  friend SurfaceElement operator-(const SurfaceElement& a, const SurfaceElement& b);
  friend SurfaceElement operator*(const SurfaceElement& a, const SurfaceElement& b);
  SurfaceElement pow(unsigned k) const;

  std::string str() const { return rep_.str(); }

 private:
  struct Reduced {};
  SurfaceElement(SurfacePtr surface, MultiPoly p, Reduced);

  SurfacePtr surface_;
  MultiPoly rep_;
};

SurfaceElement normal_form(const MultiPoly& p, const SurfacePtr& surface);

/// Equality in B; throws std::invalid_argument when the surfaces differ.
bool elements_equal(const SurfaceElement& p, const SurfaceElement& q);

}  // namespace dansurf

#endif
