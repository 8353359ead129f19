#include "dansurf/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace dansurf {

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

// Pops the largest (deg_y, deg_x) first so every rewrite feeds strictly
// smaller keys back into the queue.
struct ReductionOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    if (a[1] != b[1]) return a[1] > b[1];
    if (a[0] != b[0]) return a[0] > b[0];
    return a[2] > b[2];
  }
};

}  // namespace

SurfacePtr SurfaceSpec::relation(const MultiPoly& f, const MultiPoly& phi) {
  if (!f.depends_only_on({"x"})) throw std::invalid_argument("f must be a polynomial in x, got " + f.str());
  if (!phi.depends_only_on({"z"}))
    throw std::invalid_argument("phi must be a polynomial in z, got " + phi.str());
  if (f.degree("x") < 1) throw std::invalid_argument("f must have degree >= 1 in x");
  if (phi.degree("z") < 1) throw std::invalid_argument("phi must have degree >= 1 in z");
  auto s = std::shared_ptr<SurfaceSpec>(new SurfaceSpec());
  s->kind_ = Kind::relation;
  s->f_ = f.with_variables({"x"});
  s->phi_ = phi.with_variables({"z"});
  s->m_ = static_cast<unsigned>(f.degree("x"));
  s->d_ = static_cast<unsigned>(phi.degree("z"));
  s->lc_ = s->f_.coefficient({{"x", s->m_}});
  s->f_tail_ = s->f_ - MultiPoly::monomial(s->lc_, {{"x", s->m_}});
  s->generators_ = kXYZ;
  return s;
}

SurfacePtr SurfaceSpec::free(std::vector<std::string> variables) {
  if (variables.empty()) throw std::invalid_argument("free ring needs at least one variable");
  std::vector<std::string> sorted = variables;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate variable in free ring declaration");
  auto s = std::shared_ptr<SurfaceSpec>(new SurfaceSpec());
  s->kind_ = Kind::free;
  s->generators_ = std::move(variables);
  return s;
}

MultiPoly SurfaceSpec::relation_poly() const {
  if (kind_ == Kind::free) return MultiPoly();
  return f_ * MultiPoly::variable("y") - phi_;
}

void SurfaceSpec::check_variables(const MultiPoly& p) const {
  for (const auto& v : p.used_variables())
    if (std::find(generators_.begin(), generators_.end(), v) == generators_.end())
      throw std::invalid_argument("variable '" + v + "' does not belong to the ring " + str());
}

MultiPoly SurfaceSpec::reduce(const MultiPoly& p) const {
  check_variables(p);
  if (kind_ == Kind::free) return p;

  const CycScalar inv_lc = lc_.inverse();
  std::vector<std::pair<unsigned, CycScalar>> phi_terms, tail_terms;
  for (const auto& [e, c] : phi_.terms()) phi_terms.emplace_back(e[0], c * inv_lc);
  for (const auto& [e, c] : f_tail_.terms()) tail_terms.emplace_back(e[0], -(c * inv_lc));

  std::map<Exponents, CycScalar, ReductionOrder> pending;
  auto push = [&pending](Exponents e, const CycScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = pending.try_emplace(std::move(e), c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) pending.erase(it);
  };
  // Listed-but-unused variables are dropped so exponent vectors are exactly (x, y, z).
  MultiPoly xyz = MultiPoly(0).with_variables(kXYZ);
  const auto& pv = p.variables();
  for (const auto& [e, c] : p.terms()) {
    std::map<std::string, unsigned> powers;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) powers[pv[i]] = e[i];
    xyz += MultiPoly::monomial(c, powers);
  }
  const MultiPoly lifted = xyz.with_variables(kXYZ);
  for (const auto& [e, c] : lifted.terms()) push(e, c);

  MultiPoly::TermMap done;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Exponents& e = node.key();
    const CycScalar& c = node.mapped();
    if (e[0] >= m_ && e[1] >= 1) {
      for (const auto& [k, pc] : phi_terms) push({e[0] - m_, e[1] - 1, e[2] + k}, c * pc);
      for (const auto& [k, tc] : tail_terms) push({e[0] - m_ + k, e[1], e[2]}, c * tc);
    } else {
      done.emplace(e, c);
    }
  }
  return MultiPoly::from_terms(kXYZ, std::move(done));
}

std::string SurfaceSpec::str() const {
  if (kind_ == Kind::relation) return "f=" + f_.str() + "; phi=" + phi_.str();
  std::string out = "free: ";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ",";
    out += generators_[i];
  }
  return out;
}

bool operator==(const SurfaceSpec& a, const SurfaceSpec& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == SurfaceSpec::Kind::free) return a.generators_ == b.generators_;
  return a.f_ == b.f_ && a.phi_ == b.phi_;
}

bool same_surface(const SurfacePtr& a, const SurfacePtr& b) { return a == b || *a == *b; }

SurfaceElement::SurfaceElement(SurfacePtr surface, const MultiPoly& p)
    : surface_(std::move(surface)), rep_(surface_->reduce(p)) {}

SurfaceElement::SurfaceElement(SurfacePtr surface, MultiPoly p, Reduced)
    : surface_(std::move(surface)), rep_(std::move(p)) {}

namespace {
void require_same(const SurfaceElement& a, const SurfaceElement& b) {
  if (!same_surface(a.surface(), b.surface()))
    throw std::invalid_argument("elements live on different surfaces: " + a.surface()->str() +
                                " vs " + b.surface()->str());
}
}  // namespace

SurfaceElement SurfaceElement::operator-() const { return SurfaceElement(surface_, -rep_, Reduced{}); }

SurfaceElement operator+(const SurfaceElement& a, const SurfaceElement& b) {
  require_same(a, b);
  return SurfaceElement(a.surface_, a.rep_ + b.rep_, SurfaceElement::Reduced{});
}

SurfaceElement operator-(const SurfaceElement& a, const SurfaceElement& b) {
  require_same(a, b);
  return SurfaceElement(a.surface_, a.rep_ - b.rep_, SurfaceElement::Reduced{});
}

SurfaceElement operator*(const SurfaceElement& a, const SurfaceElement& b) {
  require_same(a, b);
  return SurfaceElement(a.surface_, a.rep_ * b.rep_);
}

SurfaceElement SurfaceElement::pow(unsigned k) const {
  SurfaceElement result(surface_, MultiPoly(1));
  SurfaceElement base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

SurfaceElement normal_form(const MultiPoly& p, const SurfacePtr& surface) { return SurfaceElement(surface, p); }

bool elements_equal(const SurfaceElement& p, const SurfaceElement& q) {
  require_same(p, q);
  return p.rep() == q.rep();
}

}  // namespace dansurf
