#include "dansurf/parse.hpp"

#include <cctype>
#include <vector>

namespace dansurf {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::set<std::string>& vars, std::size_t offset)
      : text_(text), vars_(vars), offset_(offset) {}

  MultiPoly parse_all() {
    skip_ws();
    if (at_end()) fail("empty expression");
    MultiPoly p = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(offset_ + pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const { throw ParseError(offset_ + pos, msg); }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Integer integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  unsigned small_integer(const char* what) {
    const std::size_t start = pos_;
    Integer v = integer();
    if (!v.fits_uint_p() || v.get_ui() > 1000000) fail_at(start, std::string(what) + " is too large");
    return static_cast<unsigned>(v.get_ui());
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        const MultiPoly divisor = unary();
        if (!divisor.is_constant()) fail_at(at, "division by a non-scalar expression");
        if (divisor.is_zero()) fail_at(at, "division by zero");
        acc = acc.scaled(divisor.constant_value().inverse());
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return factor();
  }

  MultiPoly factor() {
    skip_ws();
    const std::size_t at = pos_;
    MultiPoly b = base();
    if (!accept('^')) return b;
    const bool negative = accept('-');
    const unsigned k = small_integer("exponent");
    if (!negative) return b.pow(k);
    if (!b.is_constant()) fail_at(at, "non-scalar inversion");
    if (b.is_zero()) fail_at(at, "inversion of zero");
    return MultiPoly(b.constant_value().pow(-static_cast<long>(k)));
  }

  MultiPoly base() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly(CycScalar(Rational(integer())));
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "zeta") {
        expect('(');
        skip_ws();
        const std::size_t nat = pos_;
        const unsigned n = small_integer("zeta order");
        if (n == 0) fail_at(nat, "zeta(0) is undefined");
        expect(')');
        return MultiPoly(CycScalar::zeta(n));
      }
      if (!vars_.count(name)) fail_at(start, "unknown variable '" + name + "'");
      return MultiPoly::variable(name);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const std::set<std::string>& vars_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

struct Piece {
  std::string_view text;
  std::size_t offset;
};

std::vector<Piece> split_entries(std::string_view text, std::size_t offset) {
  std::vector<Piece> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';' || text[i] == '\n') {
      std::string_view piece = text.substr(start, i - start);
      std::size_t lead = 0;
      while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
      if (lead < piece.size()) out.push_back({piece, offset + start});
      start = i + 1;
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

MultiPoly parse_at(std::string_view text, const std::set<std::string>& vars, std::size_t offset) {
  return ExprParser(text, vars, offset).parse_all();
}

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::set<std::string>& variables) {
  return parse_at(text, variables, 0);
}

CycScalar parse_scalar(std::string_view text) {
  const MultiPoly p = parse_at(text, {}, 0);
  return p.constant_value();
}

SurfacePtr parse_surface(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon != std::string_view::npos && trim(text.substr(0, colon)) == "free") {
    std::vector<std::string> vars;
    std::size_t start = colon + 1;
    for (std::size_t i = start; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ',') {
        std::string v = trim(text.substr(start, i - start));
        if (v.empty()) throw ParseError(start, "empty variable name");
        for (char c : v)
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw ParseError(start, "invalid variable name '" + v + "'");
        vars.push_back(std::move(v));
        start = i + 1;
      }
    }
    try {
      return SurfaceSpec::free(std::move(vars));
    } catch (const std::invalid_argument& e) {
      throw ParseError(colon, e.what());
    }
  }
  std::optional<MultiPoly> f, phi;
  for (const auto& [piece, off] : split_entries(text, 0)) {
    const std::size_t eq = piece.find('=');
    if (eq == std::string_view::npos) throw ParseError(off, "expected 'f=<poly>' or 'phi=<poly>'");
    const std::string key = trim(piece.substr(0, eq));
    const std::string_view value = piece.substr(eq + 1);
    if (key == "f") {
      f = parse_at(value, {"x"}, off + eq + 1);
    } else if (key == "phi") {
      phi = parse_at(value, {"z"}, off + eq + 1);
    } else {
      throw ParseError(off, "unknown surface key '" + key + "'");
    }
  }
  if (!f) throw ParseError(text.size(), "surface is missing f=<poly in x>");
  if (!phi) throw ParseError(text.size(), "surface is missing phi=<poly in z>");
  try {
    return SurfaceSpec::relation(*f, *phi);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

NamedImages parse_images(std::string_view text, const SurfaceSpec& surface) {
  NamedImages out;
  std::size_t body = 0;
  const std::size_t colon = text.find(':');
  const std::size_t arrow = text.find("->");
  if (colon != std::string_view::npos && (arrow == std::string_view::npos || colon < arrow)) {
    out.name = trim(text.substr(0, colon));
    if (out.name.empty()) throw ParseError(0, "empty name before ':'");
    for (char c : out.name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw ParseError(0, "invalid name '" + out.name + "'");
    body = colon + 1;
  }
  const std::set<std::string> vars(surface.generators().begin(), surface.generators().end());
  for (const auto& [piece, off] : split_entries(text.substr(body), body)) {
    const std::size_t a = piece.find("->");
    if (a == std::string_view::npos) throw ParseError(off, "expected '<generator> -> <poly>'");
    const std::string gen = trim(piece.substr(0, a));
    if (!vars.count(gen)) throw ParseError(off, "'" + gen + "' is not a generator of " + surface.str());
    if (out.images.count(gen)) throw ParseError(off, "duplicate image for " + gen);
    out.images.emplace(gen, parse_at(piece.substr(a + 2), vars, off + a + 2));
  }
  for (const auto& g : surface.generators())
    if (!out.images.count(g)) throw ParseError(text.size(), "missing image for generator " + g);
  return out;
}

}  // namespace dansurf
