#include "dansurf/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dansurf {

namespace {

std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

unsigned total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool grlex_greater(const Exponents& a, const Exponents& b) {
  const unsigned ta = total(a), tb = total(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

}  // namespace

MultiPoly::MultiPoly(const CycScalar& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{1}, CycScalar(1));
  return p;
}

MultiPoly MultiPoly::monomial(const CycScalar& c, const std::map<std::string, unsigned>& powers) {
  MultiPoly p;
  if (c.is_zero()) return p;
  Exponents e;
  for (const auto& [v, k] : powers) {
    p.vars_.push_back(v);
    e.push_back(k);
  }
  p.terms_.emplace(std::move(e), c);
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> vars, TermMap terms) {
  if (!std::is_sorted(vars.begin(), vars.end()) ||
      std::adjacent_find(vars.begin(), vars.end()) != vars.end())
    throw std::invalid_argument("variable list must be sorted and duplicate-free");
  MultiPoly p;
  p.vars_ = std::move(vars);
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->first.size() != p.vars_.size())
      throw std::invalid_argument("exponent vector length does not match the variable list");
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
  }
  p.terms_ = std::move(terms);
  return p;
}

MultiPoly MultiPoly::univariate(const std::string& var, const std::vector<CycScalar>& coeffs) {
  MultiPoly p;
  p.vars_ = {var};
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term({static_cast<unsigned>(k)}, coeffs[k]);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

CycScalar MultiPoly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial " + str() + " is not a constant");
  return terms_.empty() ? CycScalar(0) : terms_.begin()->second;
}

CycScalar MultiPoly::coefficient(const std::map<std::string, unsigned>& powers) const {
  Exponents e(vars_.size(), 0);
  for (const auto& [v, k] : powers) {
    const int i = var_index(v);
    if (i < 0) {
      if (k == 0) continue;
      return CycScalar(0);
    }
    e[i] = k;
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? CycScalar(0) : it->second;
}

int MultiPoly::var_index(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return -1;
  return static_cast<int>(it - vars_.begin());
}

int MultiPoly::degree(const std::string& var) const {
  if (terms_.empty()) return -1;
  const int i = var_index(var);
  if (i < 0) return 0;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
  return d;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total(e));
  return static_cast<int>(d);
}

std::set<std::string> MultiPoly::used_variables() const {
  std::set<std::string> out;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) out.insert(vars_[i]);
  return out;
}

bool MultiPoly::depends_only_on(const std::set<std::string>& allowed) const {
  for (const auto& v : used_variables())
    if (!allowed.count(v)) return false;
  return true;
}

MultiPoly MultiPoly::with_variables(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end() || *it != vars_[i])
      throw std::invalid_argument("variable list does not contain " + vars_[i]);
    pos[i] = static_cast<int>(it - vars.begin());
  }
  MultiPoly out;
  out.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

void MultiPoly::add_term(const Exponents& e, const CycScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.vars_ != vars_) {
    const auto vars = merge_vars(vars_, o.vars_);
    *this = with_variables(vars);
    const MultiPoly lifted = o.with_variables(vars);
    for (const auto& [e, c] : lifted.terms_) add_term(e, c);
    return *this;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) {
    MultiPoly z;
    z.vars_ = merge_vars(a.vars_, b.vars_);
    return z;
  }
  const auto vars = merge_vars(a.vars_, b.vars_);
  const MultiPoly la = a.with_variables(vars);
  const MultiPoly lb = b.with_variables(vars);
  MultiPoly out;
  out.vars_ = vars;
  Exponents e(vars.size());
  for (const auto& [ea, ca] : la.terms_)
    for (const auto& [eb, cb] : lb.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly MultiPoly::scaled(const CycScalar& c) const {
  if (c.is_zero()) {
    MultiPoly z;
    z.vars_ = vars_;
    return z;
  }
  MultiPoly out = *this;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = MultiPoly(1).with_variables(vars_);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  if (a.terms_.size() != b.terms_.size()) return false;
  const auto vars = merge_vars(a.vars_, b.vars_);
  return a.with_variables(vars).terms_ == b.with_variables(vars).terms_;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& images) const {
  std::vector<MultiPoly> base(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = images.find(vars_[i]);
    base[i] = it == images.end() ? variable(vars_[i]) : it->second;
  }
  std::vector<std::vector<MultiPoly>> powers(vars_.size());
  auto power = [&](std::size_t i, unsigned k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= k) cache.push_back(cache.back() * base[i]);
    return cache[k];
  };
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    MultiPoly term(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::partial_derivative(const std::string& var) const {
  MultiPoly out;
  out.vars_ = vars_;
  const int i = var_index(var);
  if (i < 0) return out;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents ne = e;
    --ne[i];
    out.add_term(ne, c * CycScalar(static_cast<long>(e[i])));
  }
  return out;
}

MultiPoly MultiPoly::divide_by_variable_power(const std::string& var, unsigned k) const {
  if (k == 0) return *this;
  MultiPoly out;
  out.vars_ = vars_;
  if (terms_.empty()) return out;
  const int i = var_index(var);
  if (i < 0) throw std::domain_error(str() + " is not divisible by " + var);
  for (const auto& [e, c] : terms_) {
    if (e[i] < k) throw std::domain_error(str() + " is not divisible by " + var + "^" + std::to_string(k));
    Exponents ne = e;
    ne[i] -= k;
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

std::vector<CycScalar> MultiPoly::univariate_coeffs(const std::string& var) const {
  if (!depends_only_on({var}))
    throw std::invalid_argument(str() + " is not univariate in " + var);
  const int d = degree(var);
  std::vector<CycScalar> out(d < 0 ? 0 : d + 1);
  const int i = var_index(var);
  for (const auto& [e, c] : terms_) out[i < 0 ? 0 : e[i]] = c;
  return out;
}

std::vector<std::pair<Exponents, CycScalar>> MultiPoly::sorted_terms() const {
  std::vector<std::pair<Exponents, CycScalar>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
  return out;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : sorted_terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (c.is_rational()) {
      const Rational& q = c.rational_value();
      const bool neg = q < 0;
      const Rational mag = neg ? Rational(-q) : q;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      if (mono.empty()) {
        out += to_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += to_string(mag) + "*" + mono;
      }
    } else {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      if (!mono.empty()) out += "*" + mono;
    }
  }
  return out;
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op, unsigned k) {
  switch (op) {
    case PolyOp::add: return p + q;
    case PolyOp::sub: return p - q;
    case PolyOp::mul: return p * q;
    case PolyOp::pow: return p.pow(k);
  }
  throw std::logic_error("unknown polynomial operation");
}

std::set<unsigned> exponent_support(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) throw std::invalid_argument("exponent support of the zero polynomial");
  const auto coeffs = p.univariate_coeffs(var);
  std::set<unsigned> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) out.insert(static_cast<unsigned>(k));
  return out;
}

MultiPoly cyclotomic_polynomial(unsigned n, const std::string& var) {
  const auto& c = cyclotomic_coeffs(n);
  std::vector<CycScalar> coeffs;
  coeffs.reserve(c.size());
  for (const auto& v : c) coeffs.emplace_back(Rational(v));
  return MultiPoly::univariate(var, coeffs);
}

}  // namespace dansurf
