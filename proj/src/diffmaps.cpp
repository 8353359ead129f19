#include "dansurf/diffmaps.hpp"

#include <algorithm>
#include <stdexcept>

namespace dansurf {

namespace {

std::map<std::string, SurfaceElement> normalize_images(const SurfacePtr& surface, const Images& images) {
  std::map<std::string, SurfaceElement> out;
  for (const auto& g : surface->generators()) {
    auto it = images.find(g);
    if (it == images.end()) throw std::invalid_argument("missing image for generator " + g);
    out.emplace(g, SurfaceElement(surface, it->second));
  }
  for (const auto& [g, p] : images)
    if (!out.count(g)) throw std::invalid_argument("'" + g + "' is not a generator of " + surface->str());
  return out;
}

Images reps(const std::map<std::string, SurfaceElement>& images) {
  Images out;
  for (const auto& [g, e] : images) out.emplace(g, e.rep());
  return out;
}

const MultiPoly& image_or_throw(const Images& images, const std::string& g) {
  auto it = images.find(g);
  if (it == images.end()) throw std::invalid_argument("missing image for generator " + g);
  return it->second;
}

std::string render(const std::string& name, const SurfacePtr& surface,
                   const std::map<std::string, SurfaceElement>& images) {
  std::string out = name + ":";
  bool first = true;
  for (const auto& g : surface->generators()) {
    out += first ? " " : "; ";
    first = false;
    out += g + " -> " + images.at(g).str();
  }
  return out;
}

void require_same(const SurfacePtr& a, const SurfacePtr& b) {
  if (!same_surface(a, b))
    throw std::invalid_argument("operands live on different surfaces: " + a->str() + " vs " + b->str());
}

}  // namespace

MultiPoly derivation_residue(const Images& images, const SurfacePtr& surface) {
  if (!surface->is_relation()) return MultiPoly();
  const MultiPoly y = MultiPoly::variable("y");
  const MultiPoly expr = surface->f().partial_derivative("x") * image_or_throw(images, "x") * y +
                         surface->f() * image_or_throw(images, "y") -
                         surface->phi().partial_derivative("z") * image_or_throw(images, "z");
  return surface->reduce(expr);
}

bool check_derivation_well_defined(const Images& images, const SurfacePtr& surface) {
  return derivation_residue(images, surface).is_zero();
}

MultiPoly map_residue(const Images& images, const SurfacePtr& surface) {
  if (!surface->is_relation()) return MultiPoly();
  const MultiPoly& rx = image_or_throw(images, "x");
  const MultiPoly& ry = image_or_throw(images, "y");
  const MultiPoly& rz = image_or_throw(images, "z");
  const MultiPoly expr = surface->f().substitute({{"x", rx}}) * ry - surface->phi().substitute({{"z", rz}});
  return surface->reduce(expr);
}

bool check_map_well_defined(const Images& images, const SurfacePtr& surface) {
  return map_residue(images, surface).is_zero();
}

Derivation::Derivation(SurfacePtr surface, const Images& images)
    : surface_(std::move(surface)), images_(normalize_images(surface_, images)) {
  const MultiPoly residue = derivation_residue(reps(images_), surface_);
  if (!residue.is_zero())
    throw std::invalid_argument("images do not define a derivation of " + surface_->str() +
                                " (residue " + residue.str() + ")");
}

Derivation Derivation::zero(const SurfacePtr& surface) {
  Images images;
  for (const auto& g : surface->generators()) images.emplace(g, MultiPoly());
  return Derivation(surface, images);
}

const SurfaceElement& Derivation::image(const std::string& generator) const {
  auto it = images_.find(generator);
  if (it == images_.end()) throw std::invalid_argument("unknown generator " + generator);
  return it->second;
}

Derivation Derivation::negated() const {
  Images images;
  for (const auto& [g, e] : images_) images.emplace(g, -e.rep());
  return Derivation(surface_, images);
}

bool Derivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::string Derivation::str(const std::string& name) const { return render(name, surface_, images_); }

RingMap::RingMap(SurfacePtr surface, const Images& images)
    : surface_(std::move(surface)), images_(normalize_images(surface_, images)) {
  const MultiPoly residue = map_residue(reps(images_), surface_);
  if (!residue.is_zero())
    throw std::invalid_argument("images do not define an endomorphism of " + surface_->str() +
                                " (residue " + residue.str() + ")");
}

RingMap RingMap::identity(const SurfacePtr& surface) {
  Images images;
  for (const auto& g : surface->generators()) images.emplace(g, MultiPoly::variable(g));
  return RingMap(surface, images);
}

const SurfaceElement& RingMap::image(const std::string& generator) const {
  auto it = images_.find(generator);
  if (it == images_.end()) throw std::invalid_argument("unknown generator " + generator);
  return it->second;
}

bool RingMap::is_identity() const {
  for (const auto& [g, e] : images_)
    if (!(e.rep() == MultiPoly::variable(g))) return false;
  return true;
}

std::string RingMap::str(const std::string& name) const { return render(name, surface_, images_); }

SurfaceElement apply_derivation(const Derivation& d, const SurfaceElement& p) {
  require_same(d.surface(), p.surface());
  MultiPoly acc;
  for (const auto& [g, img] : d.images()) {
    if (img.is_zero()) continue;
    const MultiPoly partial = p.rep().partial_derivative(g);
    if (partial.is_zero()) continue;
    acc += partial * img.rep();
  }
  return SurfaceElement(d.surface(), acc);
}

SurfaceElement apply_map(const RingMap& rho, const SurfaceElement& p) {
  require_same(rho.surface(), p.surface());
  return SurfaceElement(rho.surface(), p.rep().substitute(reps(rho.images())));
}

RingMap compose_maps(const RingMap& outer, const RingMap& inner) {
  require_same(outer.surface(), inner.surface());
  Images images;
  for (const auto& [g, e] : inner.images()) images.emplace(g, apply_map(outer, e).rep());
  return RingMap(outer.surface(), images);
}

bool is_inverse_pair(const RingMap& a, const RingMap& b) {
  return compose_maps(a, b).is_identity() && compose_maps(b, a).is_identity();
}

CommutationResult commutes(const RingMap& rho, const Derivation& d) {
  require_same(rho.surface(), d.surface());
  for (const auto& g : d.surface()->generators()) {
    const SurfaceElement lhs = apply_map(rho, d.image(g));
    const SurfaceElement rhs = apply_derivation(d, rho.image(g));
    SurfaceElement diff = lhs - rhs;
    if (!diff.is_zero()) return {false, CommutationWitness{g, std::move(diff)}};
  }
  return {true, std::nullopt};
}

bool NilpotencyReport::locally_nilpotent() const {
  return std::all_of(index.begin(), index.end(), [](const auto& kv) { return kv.second.has_value(); });
}

unsigned default_nilpotency_cap(const Derivation& d) {
  const auto& s = *d.surface();
  if (s.is_relation()) {
    int dx = 0;
    for (const auto& [g, e] : d.images()) dx = std::max(dx, e.rep().degree("x"));
    return 2 + s.d() * (1 + static_cast<unsigned>(dx));
  }
  int deg = 0;
  for (const auto& [g, e] : d.images()) deg = std::max(deg, e.rep().total_degree());
  return 2 + static_cast<unsigned>(s.generators().size()) * (1 + static_cast<unsigned>(deg));
}

NilpotencyReport is_locally_nilpotent(const Derivation& d, unsigned cap) {
  NilpotencyReport report;
  report.cap = cap;
  for (const auto& g : d.surface()->generators()) {
    SurfaceElement cur(d.surface(), MultiPoly::variable(g));
    std::optional<unsigned> idx;
    for (unsigned k = 1; k <= cap; ++k) {
      cur = apply_derivation(d, cur);
      if (cur.is_zero()) {
        idx = k;
        break;
      }
    }
    report.index.emplace(g, idx);
  }
  return report;
}

bool kernel_contains(const Derivation& d, const SurfaceElement& p) { return apply_derivation(d, p).is_zero(); }

Derivation scale_by_kernel(const Derivation& d, const SurfaceElement& w) {
  if (!kernel_contains(d, w)) throw std::invalid_argument(w.str() + " is not in the kernel of the derivation");
  Images images;
  for (const auto& [g, e] : d.images()) images.emplace(g, (w * e).rep());
  return Derivation(d.surface(), images);
}

RingMap exp_derivation(const Derivation& d, unsigned cap) {
  if (cap == 0) cap = default_nilpotency_cap(d);
  Images images;
  for (const auto& g : d.surface()->generators()) {
    SurfaceElement term(d.surface(), MultiPoly::variable(g));
    MultiPoly sum = term.rep();
    unsigned k = 1;
    for (;; ++k) {
      if (k > cap)
        throw std::runtime_error("derivation is not nilpotent on " + g + " within " + std::to_string(cap) +
                                 " iterations");
      term = apply_derivation(d, term);
      if (term.is_zero()) break;
      term = SurfaceElement(d.surface(), term.rep().scaled(CycScalar(Rational(1, k))));
      sum += term.rep();
    }
    images.emplace(g, sum);
  }
  return RingMap(d.surface(), images);
}

}  // namespace dansurf
