#ifndef DANSURF_EXACTNUM_HPP
#define DANSURF_EXACTNUM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dansurf {

// mpq_class keeps numerator/denominator coprime with a positive denominator
// after every arithmetic operation, so it is used directly.
using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
/// Memoized; safe to call from several threads.
const std::vector<Integer>& cyclotomic_coeffs(unsigned n);

unsigned euler_phi(unsigned n);
std::vector<unsigned> divisors(unsigned n);

/*
 * An element of the cyclotomic field Q(zeta_N), stored as the reduced residue
 * of a polynomial in zeta_N modulo Phi_N. The conductor is always the least N
 * whose field contains the value, so equal numbers have identical
 * representations. N is never congruent to 2 mod 4.
 */
class CycScalar {
 public:
  CycScalar() : conductor_(1), coeffs_{Rational(0)} {}
  CycScalar(long v) : conductor_(1), coeffs_{Rational(v)} {}  // NOLINT
  CycScalar(Rational v) : conductor_(1), coeffs_{std::move(v)} { coeffs_[0].canonicalize(); }  // NOLINT

  /// zeta_N^k for a fixed primitive N-th root zeta_N = exp(2 pi i / N).
  static CycScalar zeta(unsigned n, long k = 1);

  /// Builds sum c_k zeta_N^k (any length) and reduces it.
  static CycScalar from_power_coeffs(unsigned n, std::vector<Rational> coeffs);

  unsigned conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return conductor_ == 1; }
  const Rational& rational_value() const;

  CycScalar operator-() const;
  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator/=(const CycScalar& o);

  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }

  CycScalar inverse() const;
  CycScalar pow(long k) const;

  friend bool operator==(const CycScalar& a, const CycScalar& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }

  /// Renders `p/q` for rationals, otherwise `c0 + c1*zeta(N) + c2*zeta(N)^2 ...`.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const CycScalar& a) {
    return os << a.str();
  }

 private:
  CycScalar(unsigned n, std::vector<Rational> reduced, bool);
  std::vector<Rational> lifted_to(unsigned n) const;
  void minimize();

  unsigned conductor_;
  std::vector<Rational> coeffs_;
};

enum class ArithOp { add, sub, mul, div, pow };

/// Dispatch form of the field operations; `k` is used only by pow.
CycScalar cyc_arith(const CycScalar& a, const CycScalar& b, ArithOp op, long k = 0);

/// Least k >= 1 with a^k = 1, or nullopt when a is not a root of unity.
std::optional<unsigned> root_of_unity_order(const CycScalar& a);

/// All N-th roots of unity zeta_N^k, k = 0..N-1 (with repetition removed).
std::vector<CycScalar> roots_of_unity(unsigned n);

}  // namespace dansurf

#endif
