#include "floer/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "floer/criterion.hpp"
#include "floer/error.hpp"
#include "floer/invariants.hpp"
#include "floer/potential.hpp"
#include "floer/probes.hpp"
#include "floer/scenario.hpp"

namespace floer::cli {

namespace {

struct Options {
  std::vector<std::string> positional;
  std::string builtin, scenario, vs, ring, field, local_system, format = "json";
  std::vector<std::string> subspaces;
  bool monotone_variant = false;
  std::string param, from, to, step;
  std::vector<std::string> bulk;
  bool analyze_units = false;
  std::string residue_ring, level, side;
  std::string point;
  long bound = 3;
};

struct Report {
  Json sources = Json::array();
  std::vector<std::string> warnings;
};

[[noreturn]] void usage_fail(const std::string& msg) { throw Error(ErrorCode::Usage, msg); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

void add_source(Report& rep, const std::string& source, const Json& content) {
  rep.sources.push_back(Json{{"source", source}, {"digest", "sha256:" + sha256_hex(content.dump())}});
}

std::string read_file(const std::string& ref) {
  namespace fs = std::filesystem;
  fs::path found;
  if (fs::exists(ref)) {
    found = ref;
  } else if (const char* env = std::getenv("FLOER_LEDGER_PATH"); env && fs::path(ref).is_relative()) {
    std::stringstream dirs(env);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      if (!dir.empty() && fs::exists(fs::path(dir) / ref)) {
        found = fs::path(dir) / ref;
        break;
      }
    }
  }
  if (found.empty()) throw Error(ErrorCode::UnknownScenario, "no built-in or file named '" + ref + "'");
  std::ifstream in(found);
  if (!in) throw Error(ErrorCode::UnknownScenario, "cannot read '" + ref + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool names_builtin(const std::string& ref) {
  return is_builtin(std::string_view(ref).substr(0, ref.find(':')));
}

Scenario load_builtin(const std::string& text, Report& rep, const std::optional<std::pair<std::string, Rational>>& extra = {}) {
  BuiltinSpec spec = parse_builtin_spec(text);
  if (extra) spec.params[extra->first] = extra->second;
  Scenario sc = builtin_scenario(spec);
  add_source(rep, "builtin:" + to_string(spec), to_json(sc));
  return sc;
}

Scenario load_ref(const std::string& ref, Report& rep) {
  if (names_builtin(ref)) return load_builtin(ref, rep);
  const std::string text = read_file(ref);
  Scenario sc = load_scenario(text);
  add_source(rep, ref, to_json(sc));
  return sc;
}

std::string primary_ref(const Options& o, bool& is_builtin_ref) {
  int given = (o.builtin.empty() ? 0 : 1) + (o.scenario.empty() ? 0 : 1) + (o.positional.empty() ? 0 : 1);
  if (given != 1) usage_fail("give exactly one of --builtin, --scenario or a scenario file");
  if (o.positional.size() > 1) usage_fail("only one scenario file may be given");
  is_builtin_ref = !o.builtin.empty();
  if (!o.builtin.empty()) return o.builtin;
  return o.scenario.empty() ? o.positional.front() : o.scenario;
}

Scenario load_primary(const Options& o, Report& rep) {
  bool b = false;
  const std::string ref = primary_ref(o, b);
  Scenario sc = b ? load_builtin(ref, rep) : load_ref(ref, rep);
  if (!o.vs.empty()) sc = combine(sc, load_ref(o.vs, rep));
  return sc;
}

std::vector<Integer> parse_int_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
  return out;
}

Ring subspace_field(const Options& o) {
  if (o.field.empty()) return Ring::prime_field(2);
  Ring f = Ring::parse(o.field);
  if (f.kind() == Ring::Kind::IntegersMod) return Ring::prime_field(f.modulus());
  if (f.kind() != Ring::Kind::PrimeField) throw Error(ErrorCode::BadParams, "--field must be a prime field");
  return f;
}

// "base;span1;span2", or "builtin" for the scenario's own subspace
void apply_subspaces(Scenario& sc, const Options& o) {
  if (o.subspaces.empty()) {
    if (!o.field.empty()) usage_fail("--field needs --subspace");
    return;
  }
  if (o.subspaces.size() != 1 && o.subspaces.size() != sc.sides.size()) {
    usage_fail("give one --subspace for all sides or one per side");
  }
  for (std::size_t i = 0; i < sc.sides.size(); ++i) {
    const std::string& text = o.subspaces.size() == 1 ? o.subspaces[0] : o.subspaces[i];
    auto& side = sc.sides[i];
    if (text == "builtin") {
      if (!side.subspace) throw Error(ErrorCode::BadParams, "side " + side.name + " has no subspace of its own");
      if (!o.field.empty()) side.subspace->field = subspace_field(o);
      continue;
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) parts.push_back(part);
    if (parts.empty()) throw Error(ErrorCode::ParseError, "--subspace '" + text + "': expected base;span;...");
    AffineSubspace S{subspace_field(o), parse_int_list(parts[0]), {}};
    for (std::size_t k = 1; k < parts.size(); ++k) {
      if (!parts[k].empty()) S.span.push_back(parse_int_list(parts[k]));
    }
    side.subspace = S;
  }
  validate(sc);
}

// "dbeta=1,dalpha=-1"; unnamed generators stay 1
bool apply_local_system(Scenario& sc, const Options& o) {
  if (o.local_system.empty()) return false;
  std::vector<std::pair<std::string, Rational>> values;
  std::stringstream ss(o.local_system);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--local-system item '" + item + "': expected gen=value");
    values.emplace_back(item.substr(0, eq), parse_rational(item.substr(eq + 1)));
  }
  // a generator name applies to every side that has it; other sides get the trivial system
  for (const auto& [gen, v] : values) {
    bool known = std::any_of(sc.sides.begin(), sc.sides.end(),
                             [&](const LagrangianSide& s) { return s.H1_L->index_of(gen).has_value(); });
    if (!known) throw Error(ErrorCode::BadParams, "no side has an H1(L) generator '" + gen + "'");
  }
  for (auto& side : sc.sides) {
    std::vector<Rational> rho(side.H1_L->generator_count(), Rational(1));
    for (const auto& [gen, v] : values) {
      if (auto idx = side.H1_L->index_of(gen)) rho[*idx] = v;
    }
    side.local_system = rho;
  }
  validate(sc);
  return true;
}

Ring coefficient_ring(const Scenario& sc, const Options& o) { return o.ring.empty() ? sc.ring : Ring::parse(o.ring); }

Json error_json(const Error& e) { return Json{{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}}; }

template <class F>
Json guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_json(e);
  }
}

Json rationals_json(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

Json ints_json(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

// ---- subcommands

Json cmd_builtin_list() {
  Json list = Json::array();
  for (const auto& name : builtin_names()) {
    Json sides = Json::array();
    BuiltinParams defaults;
    for (const auto& p : builtin_param_names(name)) {
      if (p == "a") defaults[p] = Rational(1, 10);
      if (p == "b") defaults[p] = Rational(1, 10);
      if (p == "k") defaults[p] = 1;
    }
    for (const auto& s : builtin_scenario(name, defaults).sides) sides.push_back(s.name);
    list.push_back(Json{{"name", name}, {"params", builtin_param_names(name)}, {"sides", sides}});
  }
  return Json{{"scenarios", list}, {"polygons", default_polytope_names()}};
}

Json cmd_validate(const Options& o, Report& rep) {
  Scenario sc = load_primary(o, rep);
  Json sides = Json::array();
  for (const auto& s : sc.sides) {
    sides.push_back(Json{{"name", s.name}, {"monotone", s.monotone}, {"disks", s.ledger.disks.size()},
                         {"levels", rationals_json(area_levels(s))}});
  }
  return Json{{"valid", true}, {"ring", sc.ring.name()}, {"sides", sides}};
}

Json cmd_invariant(const Options& o, Report& rep) {
  Scenario sc = load_primary(o, rep);
  const Ring Q = coefficient_ring(sc, o);
  const bool use_sub = !o.subspaces.empty();
  apply_subspaces(sc, o);
  const bool weighted = apply_local_system(sc, o);
  Json sides = Json::array();
  for (const auto& s : sc.sides) {
    Json j{{"name", s.name}, {"levels", rationals_json(area_levels(s))}};
    j["least_area"] = guarded([&] { return Json(to_string(least_area(s))); });
    j["next_area"] = guarded([&] { return Json(to_string(next_area(s))); });
    if (!s.ledger.disks.empty()) {
      const Rational lvl = area_levels(s).front();
      j["boundary_sum"] = guarded([&] { return Json(boundary_sum(s, Q, lvl, nullptr, weighted).to_string()); });
      if (use_sub && s.subspace) {
        j["cosets"] = guarded([&] {
          auto g = grouped_cancellation(s, *s.subspace, Q, lvl, weighted);
          Json cs = Json::array();
          for (const auto& c : g.cosets) {
            cs.push_back(Json{{"representative", ints_json(c.representative)}, {"sum", c.sum.to_string()}, {"disks", c.disks}});
          }
          return Json{{"holds", g.holds}, {"cosets", cs}};
        });
      }
    }
    j["oc_low"] = guarded([&] {
      auto oc = oc_low(s, Q, use_sub, weighted);
      for (const auto& w : oc.warnings) rep.warnings.push_back(s.name + ": " + w);
      Json r{{"value", oc.value.to_string()}, {"ambiguity", oc.ambiguity.to_string()}, {"disks", oc.disks}};
      if (oc.asserted) r["asserted"] = true;
      return r;
    });
    j["cancellation_threshold"] = guarded([&] { return Json(to_string(cancellation_threshold(s, Q, use_sub))); });
    sides.push_back(j);
  }
  return Json{{"ring", Q.name()}, {"subspaces", use_sub}, {"weighted", weighted}, {"sides", sides}};
}

PairOptions pair_options(Scenario& sc, const Options& o) {
  PairOptions p;
  p.ring = coefficient_ring(sc, o);
  p.use_subspaces = !o.subspaces.empty();
  p.monotone_variant = o.monotone_variant;
  apply_subspaces(sc, o);
  p.weighted = apply_local_system(sc, o);
  return p;
}

Json cmd_criterion(const Options& o, Report& rep) {
  Scenario sc = load_primary(o, rep);
  const PairOptions p = pair_options(sc, o);
  Verdict v = evaluate_pair(sc, p);
  for (const auto& n : v.notes) rep.warnings.push_back(n);
  return to_json(v);
}

Json cmd_sweep(const Options& o, Report& rep) {
  if (o.builtin.empty()) usage_fail("sweep needs --builtin");
  if (o.param.empty() || o.from.empty() || o.to.empty() || o.step.empty()) {
    usage_fail("sweep needs --param, --from, --to and --step");
  }
  const Rational from = parse_rational(o.from), to = parse_rational(o.to), step = parse_rational(o.step);
  // the swept family has no single digest; record it by name
  rep.sources.push_back(Json{{"source", "builtin:" + o.builtin}, {"family", o.param}});
  std::optional<Scenario> partner;
  if (!o.vs.empty()) partner = load_ref(o.vs, rep);
  auto build = [&](const Rational& x) {
    Report unused;
    Scenario sc = load_builtin(o.builtin, unused, std::make_pair(o.param, x));
    if (partner) sc = combine(sc, *partner);
    return sc;
  };
  Scenario first = build(from);
  PairOptions p = pair_options(first, o);
  auto build_with_options = [&](const Rational& x) {
    Scenario sc = build(x);
    apply_subspaces(sc, o);
    apply_local_system(sc, o);
    return sc;
  };
  SweepResult r = sweep(build_with_options, o.param, from, to, step, p);
  Json j = to_json(r);
  j["ring"] = p.ring->name();
  return j;
}

Json cmd_potential(const Options& o, Report& rep) {
  Scenario sc = load_primary(o, rep);
  const LagrangianSide* side = &sc.sides.front();
  if (!o.side.empty()) {
    side = nullptr;
    for (const auto& s : sc.sides) {
      if (s.name == o.side) side = &s;
    }
    if (!side) throw Error(ErrorCode::BadParams, "no side named '" + o.side + "'");
  }
  NovikovPolynomial p = potential_from_ledger(*side);
  Json j{{"side", side->name}};
  std::map<std::string, long> hits;
  for (const auto& b : o.bulk) {
    auto eq = b.find('=');
    const std::string label = b.substr(0, eq);
    long h = 1;
    if (eq != std::string::npos) h = parse_integer(b.substr(eq + 1)).convert_to<long>();
    hits[label] += h;
  }
  if (!hits.empty()) {
    p = bulk_deform(p, *side, hits);
    j["bulk"] = hits;
  }
  if (!o.level.empty()) {
    const Rational lvl = parse_rational(o.level);
    p = truncate_to_level(p, lvl);
    j["level"] = to_string(lvl);
    if (p.is_zero()) rep.warnings.push_back("no terms at level " + to_string(lvl));
  }
  j["potential"] = p.to_string();
  j["terms"] = to_json(p);
  j["levels"] = rationals_json(p.levels());
  j["dz"] = partial_derivative(p, Variable::z).to_string();
  j["dw"] = partial_derivative(p, Variable::w).to_string();
  if (o.analyze_units) {
    auto a = unit_critical_analysis(p);
    for (const auto& w : a.warnings) rep.warnings.push_back(w);
    j["unit_analysis"] = to_json(a);
  }
  if (!o.residue_ring.empty()) {
    const Ring R = Ring::parse(o.residue_ring);
    Json pts = Json::array();
    for (const auto& [z, w] : residue_critical_points(p, R)) pts.push_back(Json::array({z.to_string(), w.to_string()}));
    j["residue"] = Json{{"ring", R.name()}, {"points", pts}};
  }
  return j;
}

Json cmd_probes(const Options& o, Report& rep) {
  if (o.point.empty()) usage_fail("probes needs --point x,y");
  if (o.bound < 1) throw Error(ErrorCode::BadParams, "--bound must be positive");
  int given = (o.builtin.empty() ? 0 : 1) + (o.positional.empty() ? 0 : 1);
  if (given != 1) usage_fail("give exactly one of --builtin or a polygon file");
  std::optional<Polytope2> poly;
  std::string source;
  if (!o.builtin.empty()) {
    poly = default_polytope(o.builtin);
    source = "polygon:" + o.builtin;
  } else {
    source = o.positional.front();
    const std::string text = read_file(source);
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::ParseError, source + ": " + e.what());
    }
    poly = polytope_from_json(doc);
  }
  add_source(rep, source, to_json(*poly));
  const Point2 pt = parse_point(o.point);
  const bool inside = poly->interior(pt);
  if (!inside) rep.warnings.push_back("point " + to_string(pt) + " is not interior; fibres there are not tori");
  Json hits = Json::array();
  for (const auto& h : search_probes(*poly, pt, o.bound)) hits.push_back(to_json(h));
  return Json{{"polygon", to_json(*poly)},
              {"point", Json::array({to_string(pt[0]), to_string(pt[1])})},
              {"interior", inside},
              {"bound", o.bound},
              {"displaced", !hits.empty()},
              {"probes", hits}};
}

// ---- text rendering of the same report structure

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool all_scalars(const Json& a) {
  return std::all_of(a.begin(), a.end(), [](const Json& x) { return !x.is_structured() || (x.is_array() && all_scalars(x)); });
}

std::string inline_array(const Json& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += a[i].is_array() ? inline_array(a[i]) : scalar_text(a[i]);
  }
  return s + "]";
}

void render(std::ostream& os, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_object() && !x.empty()) {
        os << pad << k << ":\n";
        render(os, x, indent + 2);
      } else if (x.is_array() && !all_scalars(x)) {
        os << pad << k << ":\n";
        render(os, x, indent + 2);
      } else if (x.is_array()) {
        os << pad << k << ": " << inline_array(x) << "\n";
      } else {
        os << pad << k << ": " << (x.is_object() ? "{}" : scalar_text(x)) << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        std::ostringstream inner;
        render(inner, x, indent + 2);
        std::string s = inner.str();
        if (s.size() >= static_cast<std::size_t>(indent + 2)) s.replace(static_cast<std::size_t>(indent), 2, "- ");
        os << s;
      } else {
        os << pad << "- " << (x.is_array() ? inline_array(x) : scalar_text(x)) << "\n";
      }
    }
  }
}

int exit_code_for(ErrorCode c) {
  if (c == ErrorCode::Usage) return usage;
  return is_input_error(c) ? input_error : computation_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disk-counting non-displaceability toolkit", "floer"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto scenario_opts = [&](CLI::App* sub) {
    sub->add_option("file", o.positional, "scenario file");
    sub->add_option("--builtin", o.builtin, "built-in scenario, name[:k=v,...]");
    sub->add_option("--scenario", o.scenario, "scenario file");
    sub->add_option("--vs", o.vs, "second side: built-in spec or file");
  };
  auto coefficient_opts = [&](CLI::App* sub) {
    sub->add_option("--ring", o.ring, "coefficient ring: Z, Q, Z/n, Fp");
    sub->add_option("--subspace", o.subspaces, "affine subspace 'base;span;...' or 'builtin', once or per side");
    sub->add_option("--field", o.field, "field of --subspace (default F2)");
    sub->add_option("--local-system", o.local_system, "weights 'gen=value,...' on H1(L)");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a scenario");
  scenario_opts(validate_cmd);
  auto* invariant_cmd = app.add_subcommand("invariant", "areas, boundary sums and low-area invariants");
  scenario_opts(invariant_cmd);
  coefficient_opts(invariant_cmd);
  auto* criterion_cmd = app.add_subcommand("criterion", "non-displaceability verdict for two sides");
  scenario_opts(criterion_cmd);
  coefficient_opts(criterion_cmd);
  criterion_cmd->add_flag("--monotone-variant", o.monotone_variant, "use the monotone-partner threshold");
  auto* sweep_cmd = app.add_subcommand("sweep", "verdicts over a parameter grid");
  sweep_cmd->add_option("--builtin", o.builtin, "built-in family")->required();
  sweep_cmd->add_option("--vs", o.vs, "fixed second side");
  coefficient_opts(sweep_cmd);
  sweep_cmd->add_flag("--monotone-variant", o.monotone_variant, "use the monotone-partner threshold");
  sweep_cmd->add_option("--param", o.param, "parameter name")->required();
  sweep_cmd->add_option("--from", o.from, "first value p/q")->required();
  sweep_cmd->add_option("--to", o.to, "last value p/q")->required();
  sweep_cmd->add_option("--step", o.step, "grid step p/q")->required();
  auto* potential_cmd = app.add_subcommand("potential", "superpotential algebra");
  scenario_opts(potential_cmd);
  potential_cmd->add_option("--side", o.side, "side name (default: first)");
  potential_cmd->add_option("--bulk", o.bulk, "disk label[=hits], repeatable");
  potential_cmd->add_option("--level", o.level, "keep only this t exponent");
  potential_cmd->add_flag("--analyze-units", o.analyze_units, "search unit critical points");
  potential_cmd->add_option("--residue-ring", o.residue_ring, "exhaustive critical points over a finite ring");
  auto* probes_cmd = app.add_subcommand("probes", "probe displaceability of a fibre");
  probes_cmd->add_option("file", o.positional, "polygon file");
  probes_cmd->add_option("--builtin", o.builtin, "default polygon: p1xp1 or cp2");
  probes_cmd->add_option("--point", o.point, "x,y")->required();
  probes_cmd->add_option("--bound", o.bound, "max |direction component|");
  auto* list_cmd = app.add_subcommand("builtin-list", "list built-in scenarios and polygons");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << version << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return usage;
  }

  Report rep;
  Json results;
  std::optional<Error> failure;
  try {
    if (*validate_cmd) results = cmd_validate(o, rep);
    else if (*invariant_cmd) results = cmd_invariant(o, rep);
    else if (*criterion_cmd) results = cmd_criterion(o, rep);
    else if (*sweep_cmd) results = cmd_sweep(o, rep);
    else if (*potential_cmd) results = cmd_potential(o, rep);
    else if (*probes_cmd) results = cmd_probes(o, rep);
    else if (*list_cmd) results = cmd_builtin_list();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Usage) {
      err << "error: " << e.detail() << "\n";
      return usage;
    }
    failure = e;
  }

  Json report;
  report["version"] = version;
  report["command"] = args;
  report["scenarios"] = rep.sources;
  if (failure) report["error"] = Json{{"code", std::string(to_string(failure->code()))}, {"detail", failure->detail()}};
  else report["results"] = results;
  report["warnings"] = rep.warnings;

  if (o.format == "text") {
    render(out, report, 0);
  } else {
    out << report.dump(2) << "\n";
  }
  if (failure) {
    err << "error: " << failure->what() << "\n";
    return exit_code_for(failure->code());
  }
  return ok;
}

}  // namespace floer::cli
