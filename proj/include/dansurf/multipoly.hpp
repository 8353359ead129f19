#ifndef DANSURF_MULTIPOLY_HPP
#define DANSURF_MULTIPOLY_HPP

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "dansurf/exactnum.hpp"

namespace dansurf {

using Exponents = std::vector<unsigned>;

/*
 * Sparse multivariate polynomial over CycScalar.
 *
 * The variable list is kept sorted and duplicate-free; binary operations
 * first lift both operands to the union of their variable lists. Variables
 * may stay listed with all-zero exponents, so equality compares the
 * polynomials after lifting rather than the raw variable lists.
 */
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, CycScalar>;

  MultiPoly() = default;
  MultiPoly(const CycScalar& c);  // NOLINT
  MultiPoly(long c) : MultiPoly(CycScalar(c)) {}  // NOLINT

  static MultiPoly variable(const std::string& name);
  static MultiPoly monomial(const CycScalar& c, const std::map<std::string, unsigned>& powers);
  /// Takes ownership of a term map over a sorted variable list; zero
  /// coefficients are dropped.
  static MultiPoly from_terms(std::vector<std::string> vars, TermMap terms);
  /// Univariate polynomial from coefficients, constant term first.
  static MultiPoly univariate(const std::string& var, const std::vector<CycScalar>& coeffs);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws otherwise.
  CycScalar constant_value() const;
  /// Coefficient of the monomial given by variable powers (zero when absent).
  CycScalar coefficient(const std::map<std::string, unsigned>& powers) const;

  /// Degree in one variable; -1 for the zero polynomial.
  int degree(const std::string& var) const;
  int total_degree() const;
  /// Variables that occur with a positive exponent in some term.
  std::set<std::string> used_variables() const;
  bool depends_only_on(const std::set<std::string>& allowed) const;

  MultiPoly with_variables(const std::vector<std::string>& vars) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const CycScalar& c) const;
  MultiPoly pow(unsigned k) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  /// Ring-homomorphism evaluation; variables without an image map to themselves.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& images) const;
  MultiPoly partial_derivative(const std::string& var) const;
  /// Exact division by var^k; throws when some term has a smaller exponent.
  MultiPoly divide_by_variable_power(const std::string& var, unsigned k) const;

  /// Coefficient list in `var` (constant term first); the polynomial must
  /// depend on nothing else.
  std::vector<CycScalar> univariate_coeffs(const std::string& var) const;

  /// Terms in descending graded-lex order, e.g. `x^2*y - 1/2*z + 3`.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

  /// Terms sorted by descending graded-lex order of their exponent vectors.
  std::vector<std::pair<Exponents, CycScalar>> sorted_terms() const;

 private:
  int var_index(const std::string& var) const;
  void add_term(const Exponents& e, const CycScalar& c);

  std::vector<std::string> vars_;
  TermMap terms_;
};

enum class PolyOp { add, sub, mul, pow };

/// Dispatch form of the ring operations; `k` is the exponent for pow.
MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op, unsigned k = 0);

/// Sorted set of exponents n with nonzero coefficient of var^n.
/// Rejects the zero polynomial and polynomials involving other variables.
std::set<unsigned> exponent_support(const MultiPoly& p, const std::string& var);

/// Phi_n as a univariate polynomial in `t`.
MultiPoly cyclotomic_polynomial(unsigned n, const std::string& var = "t");

}  // namespace dansurf

#endif
