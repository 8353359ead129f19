#include "dansurf/exactnum.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace dansurf {

namespace {

using Dense = std::vector<Rational>;  // constant term first

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Remainder of a modulo a monic divisor given by integer coefficients.
Dense reduce_monic(Dense a, const std::vector<Integer>& mod) {
  const std::size_t deg = mod.size() - 1;
  trim(a);
  for (std::size_t top = a.size(); top-- > deg;) {
    if (a[top] == 0) continue;
    const Rational c = a[top];
    const std::size_t shift = top - deg;
    for (std::size_t i = 0; i <= deg; ++i) a[shift + i] -= c * mod[i];
  }
  a.resize(deg, Rational(0));
  return a;
}

// Quotient and remainder over Q[t]; b must be nonzero.
std::pair<Dense, Dense> dense_divmod(Dense a, const Dense& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {{}, a};
  Dense q(a.size() - db, Rational(0));
  for (std::size_t top = a.size(); top-- > db;) {
    if (a[top] == 0) continue;
    const Rational c = a[top] / b.back();
    const std::size_t shift = top - db;
    q[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
  }
  trim(a);
  trim(q);
  return {q, a};
}

Dense dense_sub(const Dense& a, const Dense& b) {
  Dense r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Cached data to test whether a residue mod Phi_N lies in the subfield Q(zeta_M)
// and to rewrite it there: embed (phi(N) x phi(M)) and a left inverse of it.
struct Embedding {
  std::vector<std::vector<Rational>> embed;
  std::vector<std::vector<Rational>> left_inverse;
};

Embedding build_embedding(unsigned n, unsigned m) {
  const auto& phin = cyclotomic_coeffs(n);
  const std::size_t rows = phin.size() - 1;
  const std::size_t cols = euler_phi(m);
  const unsigned step = n / m;
  Embedding e;
  e.embed.assign(rows, std::vector<Rational>(cols, Rational(0)));
  for (std::size_t j = 0; j < cols; ++j) {
    Dense mono(j * step + 1, Rational(0));
    mono.back() = 1;
    Dense col = reduce_monic(std::move(mono), phin);
    for (std::size_t i = 0; i < rows; ++i) e.embed[i][j] = col[i];
  }
  // Left inverse (E^T E)^{-1} E^T by Gauss-Jordan on [E^T E | E^T].
  std::vector<std::vector<Rational>> aug(cols, std::vector<Rational>(cols + rows, Rational(0)));
  for (std::size_t a = 0; a < cols; ++a) {
    for (std::size_t b = 0; b < cols; ++b)
      for (std::size_t i = 0; i < rows; ++i) aug[a][b] += e.embed[i][a] * e.embed[i][b];
    for (std::size_t i = 0; i < rows; ++i) aug[a][cols + i] = e.embed[i][a];
  }
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = c;
    while (aug[piv][c] == 0) ++piv;
    std::swap(aug[piv], aug[c]);
    const Rational inv = 1 / aug[c][c];
    for (auto& v : aug[c]) v *= inv;
    for (std::size_t r = 0; r < cols; ++r) {
      if (r == c || aug[r][c] == 0) continue;
      const Rational f = aug[r][c];
      for (std::size_t k = 0; k < aug[r].size(); ++k) aug[r][k] -= f * aug[c][k];
    }
  }
  e.left_inverse.assign(cols, std::vector<Rational>(rows));
  for (std::size_t a = 0; a < cols; ++a)
    for (std::size_t i = 0; i < rows; ++i) e.left_inverse[a][i] = aug[a][cols + i];
  return e;
}

const Embedding& embedding(unsigned n, unsigned m) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, Embedding> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, m});
    if (it != cache.end()) return it->second;
  }
  Embedding built = build_embedding(n, m);
  std::lock_guard<std::mutex> lock(mu);
  return cache.try_emplace({n, m}, std::move(built)).first->second;
}

std::optional<Dense> restrict_to_subfield(const Dense& v, unsigned n, unsigned m) {
  const Embedding& e = embedding(n, m);
  const std::size_t cols = e.left_inverse.size();
  Dense b(cols, Rational(0));
  for (std::size_t a = 0; a < cols; ++a)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) b[a] += e.left_inverse[a][i] * v[i];
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = 0;
    for (std::size_t a = 0; a < cols; ++a) s += e.embed[i][a] * b[a];
    if (s != v[i]) return std::nullopt;
  }
  return b;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

const std::vector<Integer>& cyclotomic_coeffs(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic polynomial index must be >= 1");
  static std::mutex mu;
  static std::map<unsigned, std::vector<Integer>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d
  Dense num(n + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned d : divisors(n)) {
    if (d == n) continue;
    const auto& pd = cyclotomic_coeffs(d);
    Dense den(pd.begin(), pd.end());
    auto [q, r] = dense_divmod(num, den);
    if (!r.empty()) throw std::logic_error("cyclotomic division left a remainder");
    num = std::move(q);
  }
  std::vector<Integer> coeffs;
  coeffs.reserve(num.size());
  for (const auto& c : num) coeffs.push_back(c.get_num());
  std::lock_guard<std::mutex> lock(mu);
  return cache.try_emplace(n, std::move(coeffs)).first->second;
}

CycScalar::CycScalar(unsigned n, std::vector<Rational> reduced, bool)
    : conductor_(n), coeffs_(std::move(reduced)) {
  minimize();
}

CycScalar CycScalar::from_power_coeffs(unsigned n, std::vector<Rational> coeffs) {
  if (n == 0) throw std::invalid_argument("conductor must be >= 1");
  if (n % 4 == 2) {
    // Q(zeta_n) = Q(zeta_{n/2}); evaluate through zeta_n = -zeta_{n/2}^{(n/2+1)/2}.
    const CycScalar z = -zeta(n / 2, (n / 2 + 1) / 2);
    CycScalar acc(0);
    CycScalar power(1);
    for (const auto& c : coeffs) {
      if (c != 0) acc += CycScalar(c) * power;
      power *= z;
    }
    return acc;
  }
  if (coeffs.empty()) coeffs.push_back(0);
  return CycScalar(n, reduce_monic(std::move(coeffs), cyclotomic_coeffs(n)), true);
}

CycScalar CycScalar::zeta(unsigned n, long k) {
  if (n == 0) throw std::invalid_argument("zeta(0) is undefined");
  const long e = ((k % static_cast<long>(n)) + n) % n;
  if (n % 4 == 2) return (-zeta(n / 2, (n / 2 + 1) / 2)).pow(e);
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
  c.back() = 1;
  return from_power_coeffs(n, std::move(c));
}

bool CycScalar::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }
bool CycScalar::is_one() const { return conductor_ == 1 && coeffs_[0] == 1; }

const Rational& CycScalar::rational_value() const {
  if (conductor_ != 1) throw std::domain_error("scalar " + str() + " is not rational");
  return coeffs_[0];
}

void CycScalar::minimize() {
  bool rational = true;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) {
      rational = false;
      break;
    }
  if (rational) {
    Rational c = coeffs_.empty() ? Rational(0) : coeffs_[0];
    conductor_ = 1;
    coeffs_ = {std::move(c)};
    return;
  }
  for (unsigned m : divisors(conductor_)) {
    if (m == 1 || m == conductor_ || m % 4 == 2) continue;
    if (auto sub = restrict_to_subfield(coeffs_, conductor_, m)) {
      conductor_ = m;
      coeffs_ = std::move(*sub);
      return;
    }
  }
}

std::vector<Rational> CycScalar::lifted_to(unsigned n) const {
  if (n == conductor_) return coeffs_;
  const unsigned step = n / conductor_;
  Dense d((coeffs_.size() - 1) * step + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) d[k * step] = coeffs_[k];
  return reduce_monic(std::move(d), cyclotomic_coeffs(n));
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  if (conductor_ == 1 && o.conductor_ == 1) {
    coeffs_[0] += o.coeffs_[0];
    return *this;
  }
  const unsigned n = std::lcm(conductor_, o.conductor_);
  Dense a = lifted_to(n);
  const Dense b = o.lifted_to(n);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  *this = CycScalar(n, std::move(a), true);
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  if (conductor_ == 1 && o.conductor_ == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  if (o.conductor_ == 1 || conductor_ == 1) {
    const Rational s = conductor_ == 1 ? coeffs_[0] : o.coeffs_[0];
    if (conductor_ == 1) *this = o;
    if (s == 0) return *this = CycScalar(0);
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  const unsigned n = std::lcm(conductor_, o.conductor_);
  Dense prod = dense_mul(lifted_to(n), o.lifted_to(n));
  *this = CycScalar(n, reduce_monic(std::move(prod), cyclotomic_coeffs(n)), true);
  return *this;
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (conductor_ == 1) return CycScalar(Rational(1) / coeffs_[0]);
  // Extended Euclid: find u with u * a = 1 mod Phi_N.
  const auto& phin = cyclotomic_coeffs(conductor_);
  Dense r0(phin.begin(), phin.end());
  Dense r1 = coeffs_;
  trim(r1);
  Dense s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    auto [q, r] = dense_divmod(r0, r1);
    Dense s = dense_sub(s0, dense_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const Rational c = 1 / r1[0];
  for (auto& v : s1) v *= c;
  s1.resize(std::max<std::size_t>(s1.size(), 1), Rational(0));
  return CycScalar(conductor_, reduce_monic(std::move(s1), phin), true);
}

CycScalar& CycScalar::operator/=(const CycScalar& o) { return *this *= o.inverse(); }

CycScalar CycScalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  CycScalar result(1);
  CycScalar base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

std::string CycScalar::str() const {
  if (conductor_ == 1) return to_string(coeffs_[0]);
  std::string out;
  const std::string z = "zeta(" + std::to_string(conductor_) + ")";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono = k == 0 ? "" : (k == 1 ? z : z + "^" + std::to_string(k));
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

CycScalar cyc_arith(const CycScalar& a, const CycScalar& b, ArithOp op, long k) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    case ArithOp::pow: return a.pow(k);
  }
  throw std::logic_error("unknown arithmetic operation");
}

std::optional<unsigned> root_of_unity_order(const CycScalar& a) {
  if (a.is_zero()) return std::nullopt;
  // Roots of unity in Q(zeta_N) are +-zeta_N^j, so their orders divide lcm(2, N).
  const unsigned n = a.conductor();
  const unsigned cap = n % 2 == 0 ? n : 2 * n;
  if (!a.pow(cap).is_one()) return std::nullopt;
  for (unsigned k : divisors(cap))
    if (a.pow(k).is_one()) return k;
  return cap;
}

std::vector<CycScalar> roots_of_unity(unsigned n) {
  std::vector<CycScalar> out;
  out.reserve(n);
  for (unsigned k = 0; k < n; ++k) out.push_back(CycScalar::zeta(n, k));
  return out;
}

}  // namespace dansurf
