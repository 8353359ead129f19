#include "dansurf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dansurf/isotropy.hpp"
#include "dansurf/parse.hpp"
#include "dansurf/report.hpp"

namespace dansurf {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string surface, derivation, map, g, phi, f, h, w, p = "1", suite, format = "text";
  std::vector<std::string> exprs;
  unsigned n = 0, cap = 0, h_degree = 4, s = 0, samples = 6;
  std::uint64_t seed = Session{}.seed;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
  return resolve_argument(value);
}

// `dwf` and `mwf` inspect raw images, so they must not be validated up front.
Session open_session(const Options& o, bool build_objects) {
  Session s;
  s.cap = o.cap;
  s.seed = o.seed;
  s.format = o.format == "json" ? OutputFormat::json : OutputFormat::text;
  if (!o.surface.empty()) s.surface = parse_surface(resolve_argument(o.surface));
  if (!build_objects) return s;
  if (!o.derivation.empty()) {
    if (!s.surface) throw UsageError("--derivation needs --surface");
    auto parsed = parse_images(resolve_argument(o.derivation), *s.surface);
    s.derivations.emplace(parsed.name.empty() ? "D" : parsed.name, Derivation(s.surface, parsed.images));
  }
  if (!o.map.empty()) {
    if (!s.surface) throw UsageError("--map needs --surface");
    auto parsed = parse_images(resolve_argument(o.map), *s.surface);
    s.maps.emplace(parsed.name.empty() ? "M" : parsed.name, RingMap(s.surface, parsed.images));
  }
  return s;
}

const SurfacePtr& need_surface(const Session& s) {
  if (!s.surface) throw UsageError("missing required option --surface");
  return s.surface;
}

const Derivation& need_derivation(const Session& s) {
  if (s.derivations.empty()) throw UsageError("missing required option --derivation");
  return s.derivations.begin()->second;
}

const RingMap& need_map(const Session& s) {
  if (s.maps.empty()) throw UsageError("missing required option --map");
  return s.maps.begin()->second;
}

std::set<std::string> generator_set(const SurfaceSpec& s) {
  return {s.generators().begin(), s.generators().end()};
}

SurfaceElement element(const Session& s, const std::string& text) {
  const SurfacePtr& surface = need_surface(s);
  return SurfaceElement(surface, parse_poly(resolve_argument(text), generator_set(*surface)));
}

void emit(std::ostream& out, const Session& s, const Json& json, const std::string& text) {
  if (s.format == OutputFormat::json) {
    out << json.dump(2) << "\n";
  } else {
    out << text << "\n";
  }
}

int cmd_nf(const Options& o, const Session& s, std::ostream& out) {
  if (o.exprs.size() != 1) throw UsageError("nf takes exactly one expression");
  const SurfaceElement e = element(s, o.exprs[0]);
  emit(out, s, Json{{"surface", s.surface->str()}, {"normal_form", e.str()}}, e.str());
  return exit_code::ok;
}

int cmd_eq(const Options& o, const Session& s, std::ostream& out) {
  if (o.exprs.size() != 2) throw UsageError("eq takes exactly two expressions");
  const SurfaceElement a = element(s, o.exprs[0]);
  const SurfaceElement b = element(s, o.exprs[1]);
  const bool equal = elements_equal(a, b);
  emit(out, s, Json{{"equal", equal}, {"lhs", a.str()}, {"rhs", b.str()}},
       equal ? "true" : "false (" + a.str() + " != " + b.str() + ")");
  return equal ? exit_code::ok : exit_code::check_failed;
}

int cmd_wf(const Options& o, const Session& s, std::ostream& out, bool derivation) {
  const SurfacePtr& surface = need_surface(s);
  const std::string text = derivation ? require(o.derivation, "--derivation") : require(o.map, "--map");
  const NamedImages parsed = parse_images(text, *surface);
  const MultiPoly residue =
      derivation ? derivation_residue(parsed.images, surface) : map_residue(parsed.images, surface);
  const bool ok = residue.is_zero();
  emit(out, s, Json{{"well_defined", ok}, {"residue", residue.str()}},
       ok ? "true" : "false (residue " + residue.str() + ")");
  return ok ? exit_code::ok : exit_code::check_failed;
}

int cmd_apply(const Options& o, const Session& s, std::ostream& out) {
  if (o.exprs.size() != 1) throw UsageError("apply takes exactly one expression");
  if (s.derivations.empty() == s.maps.empty()) throw UsageError("apply needs exactly one of --derivation or --map");
  const SurfaceElement e = element(s, o.exprs[0]);
  const SurfaceElement r = s.derivations.empty() ? apply_map(need_map(s), e) : apply_derivation(need_derivation(s), e);
  emit(out, s, Json{{"input", e.str()}, {"result", r.str()}}, r.str());
  return exit_code::ok;
}

int cmd_commute(const Session& s, std::ostream& out) {
  const CommutationResult c = commutes(need_map(s), need_derivation(s));
  Json json{{"commutes", c.holds}};
  std::string text = c.holds ? "true" : "false";
  if (c.witness) {
    json["witness"] = Json{{"generator", c.witness->generator}, {"difference", c.witness->difference.str()}};
    text += "\nwitness at " + c.witness->generator + ": " + c.witness->difference.str();
  }
  emit(out, s, json, text);
  return c.holds ? exit_code::ok : exit_code::check_failed;
}

int cmd_lnd(const Session& s, std::ostream& out) {
  const Derivation& d = need_derivation(s);
  const unsigned cap = s.cap ? s.cap : default_nilpotency_cap(d);
  const NilpotencyReport r = is_locally_nilpotent(d, cap);
  Json index = Json::object();
  std::ostringstream text;
  for (const auto& g : d.surface()->generators()) {
    const auto& k = r.index.at(g);
    index[g] = k ? Json(*k) : Json(nullptr);
    text << g << ": " << (k ? std::to_string(*k) : std::string("exceeded cap")) << "\n";
  }
  const bool ok = r.locally_nilpotent();
  text << (ok ? "locally nilpotent" : "inconclusive") << " (cap " << cap << ")";
  emit(out, s, Json{{"cap", cap}, {"index", index}, {"locally_nilpotent", ok}}, text.str());
  return ok ? exit_code::ok : exit_code::check_failed;
}

int cmd_exp(const Options& o, const Session& s, std::ostream& out) {
  Derivation d = need_derivation(s);
  if (!o.w.empty()) d = scale_by_kernel(d, element(s, o.w));
  const RingMap forward = exp_derivation(d, s.cap);
  const RingMap backward = exp_derivation(d.negated(), s.cap);
  const bool inverse = is_inverse_pair(forward, backward);
  emit(out, s, Json{{"map", forward.str("exp")}, {"inverse", backward.str("exp_neg")}, {"inverse_verified", inverse}},
       forward.str("exp"));
  return inverse ? exit_code::ok : exit_code::check_failed;
}

int cmd_bound(const Options& o, const Session& s, std::ostream& out) {
  const MultiPoly g = parse_poly(require(o.g, "--g"), {"x"});
  unsigned bound = 0;
  if (s.surface) {
    bound = hyperbolic_admissible_bound(*s.surface, g);
  } else {
    if (o.n == 0) throw UsageError("bound needs --n >= 1 or --surface");
    bound = hyperbolic_order_bound(g, o.n);
  }
  emit(out, s, Json{{"g", g.str()}, {"bound", bound}}, std::to_string(bound));
  return exit_code::ok;
}

Json periodic_json(const PeriodicForm& p) {
  return Json{{"center", p.center.str()}, {"i", p.i}, {"m", p.m}, {"phi0", p.phi0.str()}};
}

int cmd_classify(const Options& o, const Session& s, std::ostream& out) {
  Json json;
  std::ostringstream text;
  if (!o.phi.empty()) {
    const PhiShape shape = classify_phi(parse_poly(resolve_argument(o.phi), {"z"}));
    json["d"] = shape.d;
    json["power"] = shape.power ? Json{{"c", shape.power->c.str()}, {"a", shape.power->a.str()}} : Json(nullptr);
    json["periodic"] = periodic_json(shape.periodic);
    json["centered"] = periodic_json(shape.centered);
    text << "d = " << shape.d << "\n";
    if (shape.power) text << "power form: c = " << shape.power->c << ", a = " << shape.power->a << "\n";
    text << "periodic: i = " << shape.periodic.i << ", m = " << shape.periodic.m << ", phi0 = " << shape.periodic.phi0
         << "\n";
    text << "centered at " << shape.centered.center << ": i = " << shape.centered.i << ", m = " << shape.centered.m
         << ", phi0 = " << shape.centered.phi0;
  }
  if (!o.f.empty()) {
    const FShape shape = classify_f(parse_poly(resolve_argument(o.f), {"x"}));
    json["f"] = Json{{"j", shape.j}, {"s", shape.s}};
    if (!o.phi.empty()) text << "\n";
    text << "f = x^" << shape.j << " * h(x^" << shape.s << ")";
  }
  if (o.phi.empty() && o.f.empty()) throw UsageError("classify needs --phi and/or --f");
  emit(out, s, json, text.str());
  return exit_code::ok;
}

int emit_report(const VerifyReport& r, const Session& s, std::ostream& out) {
  if (s.format == OutputFormat::json) {
    out << to_json(r).dump(2) << "\n";
  } else {
    out << to_text(r);
  }
  return r.pass ? exit_code::ok : exit_code::check_failed;
}

int cmd_verify(const Options& o, const Session& s, std::ostream& out) {
  const MultiPoly phi = parse_poly(require(o.phi, "--phi"), {"z"});
  const MultiPoly g = parse_poly(o.g.empty() ? "1" : resolve_argument(o.g), {"x"});
  MultiPoly f;
  if (o.suite == "xy") {
    f = MultiPoly::variable("x");
  } else if (o.suite == "xn") {
    if (o.n < 2) throw UsageError("suite xn needs --n >= 2");
    f = MultiPoly::variable("x").pow(o.n);
  } else if (o.suite == "fx") {
    f = parse_poly(require(o.f, "--f"), {"x"});
  } else {
    throw UsageError("--suite must be one of xy, xn, fx");
  }
  const SurfacePtr surface = SurfaceSpec::relation(f, phi);
  Sampling sampling;
  sampling.seed = s.seed;
  sampling.max_h_degree = o.h_degree;
  sampling.h_samples = o.samples;
  if (!o.h.empty()) sampling.extra_h.push_back(parse_poly(resolve_argument(o.h), {"x"}));
  return emit_report(verify_isotropy_theorem(surface, g, sampling), s, out);
}

int cmd_plane(const Options& o, const Session& s, std::ostream& out) {
  if (o.s < 2) throw UsageError("plane-example needs --s >= 2");
  Sampling sampling;
  sampling.seed = s.seed;
  sampling.h_samples = o.samples;
  return emit_report(plane_example_suite(o.s, parse_scalar(resolve_argument(o.p)), sampling), s, out);
}

}  // namespace

std::string resolve_argument(const std::string& value) {
  if (value.empty() || value[0] != '@') return value;
  std::ifstream in(value.substr(1));
  if (!in) throw std::invalid_argument("cannot read " + value.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return text;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact isotropy-group verification on Danielewski surfaces", "dansurf"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", o.seed, "Seed for sampled checks");
    sub->add_option("--cap", o.cap, "Nilpotency iteration cap (0 = default)");
    return sub;
  };
  auto with_surface = [&](CLI::App* sub) {
    common(sub)->add_option("--surface", o.surface, "f=<poly>; phi=<poly>  or  free: X,Y  (or @file)");
    return sub;
  };

  auto* nf = with_surface(app.add_subcommand("nf", "Normal form of a polynomial in B"));
  nf->add_option("expr", o.exprs, "Polynomial in the surface generators");
  auto* eq = with_surface(app.add_subcommand("eq", "Equality of two elements of B"));
  eq->add_option("expr", o.exprs, "Two polynomials");
  auto* dwf = with_surface(app.add_subcommand("dwf", "Is the derivation well defined on B"));
  dwf->add_option("--derivation", o.derivation, "[D:] x -> ...; y -> ...; z -> ...");
  auto* mwf = with_surface(app.add_subcommand("mwf", "Is the ring map well defined on B"));
  mwf->add_option("--map", o.map, "[M:] x -> ...; y -> ...; z -> ...");
  auto* apply = with_surface(app.add_subcommand("apply", "Apply a derivation or a map to an element"));
  apply->add_option("--derivation", o.derivation);
  apply->add_option("--map", o.map);
  apply->add_option("expr", o.exprs);
  auto* commute = with_surface(app.add_subcommand("commute", "Does the map commute with the derivation"));
  commute->add_option("--map", o.map);
  commute->add_option("--derivation", o.derivation);
  auto* lnd = with_surface(app.add_subcommand("lnd", "Nilpotency indices of the generators"));
  lnd->add_option("--derivation", o.derivation);
  auto* exp = with_surface(app.add_subcommand("exp", "Exponential automorphism of a nilpotent derivation"));
  exp->add_option("--derivation", o.derivation);
  exp->add_option("--w", o.w, "Kernel element multiplying the derivation");
  auto* bound = with_surface(app.add_subcommand("bound", "Order bound for commuting hyperbolic rotations"));
  bound->add_option("--g", o.g, "Polynomial in x");
  bound->add_option("--n", o.n, "Exponent n of x^n y = phi(z)");
  auto* classify = common(app.add_subcommand("classify", "Shape of phi (and of f)"));
  classify->add_option("--phi", o.phi, "Polynomial in z");
  classify->add_option("--f", o.f, "Polynomial in x");
  auto* verify = common(app.add_subcommand("verify", "Run the isotropy verification suite"));
  verify->add_option("--suite", o.suite, "xy | xn | fx")->required();
  verify->add_option("--phi", o.phi, "Polynomial in z");
  verify->add_option("--g", o.g, "Polynomial in x (default 1)");
  verify->add_option("--n", o.n, "Exponent for the xn suite");
  verify->add_option("--f", o.f, "Polynomial in x for the fx suite");
  verify->add_option("--h", o.h, "Extra triangular parameter h(x) to test");
  verify->add_option("--h-degree", o.h_degree, "Maximal degree of sampled triangular h");
  verify->add_option("--samples", o.samples, "Random samples per family");
  auto* plane = common(app.add_subcommand("plane-example", "Check Aut_d for d = X dX + (Y^s + pX) dY"));
  plane->add_option("--s", o.s, "Exponent s >= 2")->required();
  plane->add_option("--p", o.p, "Nonzero scalar p (default 1)");
  plane->add_option("--samples", o.samples, "Random shears to test");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::invalid;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const Session session = open_session(o, name != "dwf" && name != "mwf");
    if (name == "nf") return cmd_nf(o, session, out);
    if (name == "eq") return cmd_eq(o, session, out);
    if (name == "dwf") return cmd_wf(o, session, out, true);
    if (name == "mwf") return cmd_wf(o, session, out, false);
    if (name == "apply") return cmd_apply(o, session, out);
    if (name == "commute") return cmd_commute(session, out);
    if (name == "lnd") return cmd_lnd(session, out);
    if (name == "exp") return cmd_exp(o, session, out);
    if (name == "bound") return cmd_bound(o, session, out);
    if (name == "classify") return cmd_classify(o, session, out);
    if (name == "verify") return cmd_verify(o, session, out);
    if (name == "plane-example") return cmd_plane(o, session, out);
    err << "unknown command " << name << "\n";
    return exit_code::invalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::invalid;
  }
}

}  // namespace dansurf
