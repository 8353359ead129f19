#ifndef DANSURF_PARSE_HPP
#define DANSURF_PARSE_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dansurf/diffmaps.hpp"

namespace dansurf {

/// Parse failure with a 0-based offset into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/*
 * Expression grammar:
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary)*
 *   unary  := ('+' | '-') unary | factor
 *   factor := base ('^' '-'? int)?
 *   base   := int | 'zeta(' int ')' | var | '(' expr ')'
 * Division and negative powers are accepted only for nonzero scalar operands.
 */
MultiPoly parse_poly(std::string_view text, const std::set<std::string>& variables);
CycScalar parse_scalar(std::string_view text);

/// `f=<poly in x>; phi=<poly in z>` or `free: X,Y`.
SurfacePtr parse_surface(std::string_view text);

struct NamedImages {
  std::string name;  // empty when no `NAME:` prefix was given
  Images images;
};

/// `[NAME:] g1 -> <poly>; g2 -> <poly>; ...` over the surface generators.
/// Entries may also be separated by newlines.
NamedImages parse_images(std::string_view text, const SurfaceSpec& surface);

}  // namespace dansurf

#endif
