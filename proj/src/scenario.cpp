#include "floer/scenario.hpp"

#include <algorithm>
#include <set>

#include "floer/error.hpp"

namespace floer {

namespace {

// ---------------------------------------------------------------------------
// JSON reading helpers. Every failure is a SchemaError carrying a path.

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path, std::string("missing key '") + key + "'");
  return *it;
}

const Json* optional_field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string json_string(const Json& v, const std::string& path) {
  if (!v.is_string()) schema_fail(path, "expected a string");
  return v.get<std::string>();
}

Integer json_integer(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>()) : Integer(v.get<std::int64_t>());
  schema_fail(path, "expected an integer");
}

long json_long(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_fail(path, "expected an integer");
  return v.get<long>();
}

Rational json_rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(json_integer(v, path));
  if (!v.is_string()) schema_fail(path, "expected an exact rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    schema_fail(path, e.detail());
  }
}

std::vector<Integer> int_vector(const Json& v, const std::string& path) {
  if (!v.is_array()) schema_fail(path, "expected an array of integers");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_integer(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

IntMatrix int_matrix(const Json& v, const std::string& path, std::size_t cols_if_empty) {
  if (!v.is_array()) schema_fail(path, "expected an array of integer rows");
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) rows.push_back(int_vector(v[i], path + "[" + std::to_string(i) + "]"));
  try {
    return IntMatrix::from_rows(rows, cols_if_empty);
  } catch (const Error& e) {
    schema_fail(path, e.detail());
  }
}

GroupPtr group_from_json(const Json& obj, const std::string& path) {
  const Json& gens = field(obj, "generators", path);
  if (!gens.is_array()) schema_fail(path + ".generators", "expected an array of strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < gens.size(); ++i)
    labels.push_back(json_string(gens[i], path + ".generators[" + std::to_string(i) + "]"));
  IntMatrix rel(0, labels.size());
  if (const Json* r = optional_field(obj, "relations")) rel = int_matrix(*r, path + ".relations", labels.size());
  if (rel.rows() > 0 && rel.cols() != labels.size()) {
    schema_fail(path + ".relations", "rows must have one entry per generator (" + std::to_string(labels.size()) + ")");
  }
  return std::make_shared<const FgAbelianGroup>(std::move(labels), std::move(rel));
}

GroupElement element_from_json(const Json& v, const GroupPtr& group, const std::string& path) {
  auto coords = int_vector(v, path);
  if (coords.size() != group->generator_count()) {
    schema_fail(path, "expected " + std::to_string(group->generator_count()) + " coordinates, got " +
                          std::to_string(coords.size()));
  }
  return element(group, coords);
}

IntMatrix hom_matrix(const Json& v, const GroupPtr& source, const GroupPtr& target, const std::string& path) {
  IntMatrix m = int_matrix(v, path, source->generator_count());
  if (m.rows() != target->generator_count() || m.cols() != source->generator_count()) {
    schema_fail(path, "expected a " + std::to_string(target->generator_count()) + "x" +
                          std::to_string(source->generator_count()) +
                          " matrix (rows = target generators, columns = source generators)");
  }
  return m;
}

// ---------------------------------------------------------------------------
// JSON writing helpers

Json rational_json(const Rational& q) { return to_string(q); }

Json integer_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(n);
  }
  return to_string(n);
}

Json vector_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m.to_rows()) out.push_back(vector_json(row));
  return out;
}

Json group_json(const FgAbelianGroup& g) {
  Json out;
  out["generators"] = g.labels();
  out["relations"] = matrix_json(g.relations());
  return out;
}

std::vector<Integer> integer_coords(const GroupElement& e) {
  std::vector<Integer> out;
  for (const auto& c : e.coords()) out.push_back(c.integer_value());
  return out;
}

Json element_json(const GroupElement& e) { return vector_json(integer_coords(e)); }

// ---------------------------------------------------------------------------
// Validation

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ValidationError, what); }

bool same_ambient(const Scenario& a, const Scenario& b) {
  if (*a.H2_X != *b.H2_X) return false;
  if (a.form.has_value() != b.form.has_value()) return false;
  return !a.form || a.form->matrix() == b.form->matrix();
}

void validate_side(const Scenario& sc, const LagrangianSide& side) {
  const std::string where = "side '" + side.name + "': ";
  if (*side.j.source() != *sc.H2_X) invalid(where + "j must start at H2_X");
  if (*side.j.target() != *side.H2_XL || *side.bd.source() != *side.H2_XL) invalid(where + "j and bd must meet at H2_XL");
  if (*side.bd.target() != *side.H1_L) invalid(where + "bd must land in H1_L");

  if (!composes_to_zero(side.j, side.bd)) invalid(where + "exactness: bd o j != 0");
  if (!is_exact_at_middle(side.j, side.bd)) invalid(where + "exactness: image(j) != kernel(bd)");

  if (*side.fundamental_class.group() != *sc.H2_X) invalid(where + "fundamental class must lie in H2_X");
  if (!side.j.apply(side.fundamental_class).is_zero()) invalid(where + "fundamental class: j([L]) != 0");

  std::set<std::string> labels;
  for (const auto& d : side.ledger.disks) {
    const std::string dw = where + "disk '" + d.label + "': ";
    if (!labels.insert(d.label).second) invalid(where + "duplicate disk label '" + d.label + "'");
    if (d.maslov != 2) invalid(dw + "maslov index " + std::to_string(d.maslov) + " (only index-2 disks are allowed)");
    if (d.area <= 0) invalid(dw + "area must be positive");
    if (d.area >= side.ledger.complete_below) {
      invalid(dw + "area " + to_string(d.area) + " is not below complete_below " + to_string(side.ledger.complete_below));
    }
    if (*d.rel_class.group() != *side.H2_XL || *d.boundary.group() != *side.H1_L) invalid(dw + "classes in wrong groups");
    if (!side.bd.apply(d.rel_class).equals(d.boundary)) invalid(dw + "boundary mismatch: boundary != bd(rel_class)");
  }

  if (side.monotone) {
    if (!side.b) invalid(where + "monotone side needs b");
    if (*side.b <= 0) invalid(where + "b must be positive");
    for (const auto& d : side.ledger.disks) {
      if (d.area != *side.b / 2 * d.maslov) {
        invalid(where + "monotonicity: disk '" + d.label + "' has area " + to_string(d.area) + " != (b/2)*maslov");
      }
    }
  }
  if (side.lattice_params && (side.lattice_params->k < 1 || side.lattice_params->N < 1)) {
    invalid(where + "lattice_params need k >= 1 and N >= 1");
  }

  if (side.local_system) {
    const auto& rho = *side.local_system;
    if (rho.size() != side.H1_L->generator_count()) invalid(where + "local_system must give one value per H1_L generator");
    for (const auto& v : rho)
      if (v == 0) invalid(where + "local_system values must be units");
    const IntMatrix& rel = side.H1_L->relations();
    for (std::size_t r = 0; r < rel.rows(); ++r) {
      Rational prod = 1;
      for (std::size_t c = 0; c < rel.cols(); ++c) {
        Rational base = rel(r, c) < 0 ? Rational(1) / rho[c] : rho[c];
        for (Integer e = abs(rel(r, c)); e > 0; --e) prod *= base;
      }
      if (prod != 1) invalid(where + "local_system does not respect H1_L relation " + std::to_string(r));
    }
  }

  if (side.subspace) {
    const auto& s = *side.subspace;
    if (s.field.kind() != Ring::Kind::PrimeField) invalid(where + "subspace field must be a prime field F<p>");
    const std::size_t n = side.H1_L->generator_count();
    if (s.base.size() != n) invalid(where + "subspace base needs " + std::to_string(n) + " coordinates");
    for (const auto& v : s.span)
      if (v.size() != n) invalid(where + "subspace span vectors need " + std::to_string(n) + " coordinates");
  }

  if (side.asserted_invariant && *side.asserted_invariant->group() != *sc.H2_X) {
    invalid(where + "asserted_invariant must lie in H2_X");
  }
}

}  // namespace

GroupElement element(const GroupPtr& group, const std::vector<Integer>& coords, const Ring& ring) {
  return GroupElement(group, std::span<const Integer>(coords), ring);
}

void validate(const Scenario& sc) {
  if (sc.form && !sc.H2_X->is_free()) invalid("intersection form needs a torsion-free H2_X");
  if (sc.sides.empty() || sc.sides.size() > 2) invalid("a scenario has one or two sides");
  for (const auto& side : sc.sides) validate_side(sc, side);
}

// ---------------------------------------------------------------------------
// Loading

Scenario scenario_from_json(const Json& doc) {
  if (!doc.is_object()) schema_fail("$", "expected an object");
  GroupPtr h2x = group_from_json(field(doc, "H2_X", "$"), "$.H2_X");

  std::optional<IntersectionForm> form;
  if (const Json* f = optional_field(doc, "form")) {
    IntMatrix m = int_matrix(*f, "$.form", h2x->generator_count());
    if (m.rows() != h2x->generator_count() || m.cols() != h2x->generator_count()) {
      schema_fail("$.form", "expected a square matrix of size " + std::to_string(h2x->generator_count()));
    }
    form.emplace(h2x, std::move(m));
  }

  Ring ring = Ring::integers();
  if (const Json* r = optional_field(doc, "ring")) {
    try {
      ring = Ring::parse(json_string(*r, "$.ring"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SchemaError) throw;
      schema_fail("$.ring", e.detail());
    }
  }

  const Json& sides = field(doc, "sides", "$");
  if (!sides.is_array()) schema_fail("$.sides", "expected an array");
  std::vector<LagrangianSide> parsed;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    const std::string p = "$.sides[" + std::to_string(i) + "]";
    const Json& s = sides[i];
    std::string name = json_string(field(s, "name", p), p + ".name");
    GroupPtr h1 = group_from_json(field(s, "H1_L", p), p + ".H1_L");
    GroupPtr h2xl = group_from_json(field(s, "H2_XL", p), p + ".H2_XL");
    GroupHom j(h2x, h2xl, hom_matrix(field(s, "j", p), h2x, h2xl, p + ".j"));
    GroupHom bd(h2xl, h1, hom_matrix(field(s, "bd", p), h2xl, h1, p + ".bd"));
    GroupElement fc = element_from_json(field(s, "fundamental_class", p), h2x, p + ".fundamental_class");

    LagrangianSide side{name, h1, h2xl, j, bd, fc, false, std::nullopt, std::nullopt,
                        std::nullopt, std::nullopt, std::nullopt, DiskLedger{}};
    const Json& mono = field(s, "monotone", p);
    if (!mono.is_boolean()) schema_fail(p + ".monotone", "expected a boolean");
    side.monotone = mono.get<bool>();
    if (const Json* b = optional_field(s, "b")) side.b = json_rational(*b, p + ".b");
    if (const Json* lp = optional_field(s, "lattice_params")) {
      side.lattice_params = LatticeParams{json_long(field(*lp, "k", p + ".lattice_params"), p + ".lattice_params.k"),
                                          json_long(field(*lp, "N", p + ".lattice_params"), p + ".lattice_params.N")};
    }
    if (const Json* ls = optional_field(s, "local_system")) {
      if (!ls->is_object()) schema_fail(p + ".local_system", "expected an object {generator: unit}");
      std::vector<Rational> rho(h1->generator_count(), Rational(1));
      for (const auto& [key, value] : ls->items()) {
        auto idx = h1->index_of(key);
        if (!idx) schema_fail(p + ".local_system", "unknown H1_L generator '" + key + "'");
        rho[*idx] = json_rational(value, p + ".local_system." + key);
      }
      side.local_system = std::move(rho);
    }
    if (const Json* sub = optional_field(s, "subspace")) {
      const std::string sp = p + ".subspace";
      Ring field_ring = Ring::integers();
      try {
        field_ring = Ring::parse(json_string(field(*sub, "field", sp), sp + ".field"));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        schema_fail(sp + ".field", e.detail());
      }
      std::vector<std::vector<Integer>> span;
      if (const Json* sv = optional_field(*sub, "span")) {
        if (!sv->is_array()) schema_fail(sp + ".span", "expected an array of vectors");
        for (std::size_t k = 0; k < sv->size(); ++k) span.push_back(int_vector((*sv)[k], sp + ".span[" + std::to_string(k) + "]"));
      }
      side.subspace = AffineSubspace{field_ring, int_vector(field(*sub, "base", sp), sp + ".base"), std::move(span)};
    }
    if (const Json* ai = optional_field(s, "asserted_invariant")) {
      side.asserted_invariant = element_from_json(*ai, h2x, p + ".asserted_invariant");
    }

    const Json& ledger = field(s, "ledger", p);
    side.ledger.complete_below = json_rational(field(ledger, "complete_below", p + ".ledger"), p + ".ledger.complete_below");
    const Json& disks = field(ledger, "disks", p + ".ledger");
    if (!disks.is_array()) schema_fail(p + ".ledger.disks", "expected an array");
    for (std::size_t k = 0; k < disks.size(); ++k) {
      const std::string dp = p + ".ledger.disks[" + std::to_string(k) + "]";
      const Json& d = disks[k];
      side.ledger.disks.push_back(DiskClass{
          json_string(field(d, "label", dp), dp + ".label"),
          element_from_json(field(d, "rel_class", dp), h2xl, dp + ".rel_class"),
          element_from_json(field(d, "boundary", dp), h1, dp + ".boundary"),
          static_cast<int>(json_long(field(d, "maslov", dp), dp + ".maslov")),
          json_rational(field(d, "area", dp), dp + ".area"),
          json_integer(field(d, "count", dp), dp + ".count"),
      });
    }
    parsed.push_back(std::move(side));
  }

  Scenario sc{h2x, std::move(form), std::move(parsed), ring};
  validate(sc);
  return sc;
}

Scenario load_scenario(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("not valid JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

Json to_json(const Scenario& sc) {
  Json doc;
  doc["H2_X"] = group_json(*sc.H2_X);
  if (sc.form) doc["form"] = matrix_json(sc.form->matrix());
  Json sides = Json::array();
  for (const auto& side : sc.sides) {
    Json s;
    s["name"] = side.name;
    s["H1_L"] = group_json(*side.H1_L);
    s["H2_XL"] = group_json(*side.H2_XL);
    s["j"] = matrix_json(side.j.matrix());
    s["bd"] = matrix_json(side.bd.matrix());
    s["fundamental_class"] = element_json(side.fundamental_class);
    s["monotone"] = side.monotone;
    if (side.b) s["b"] = rational_json(*side.b);
    if (side.lattice_params) s["lattice_params"] = Json{{"k", side.lattice_params->k}, {"N", side.lattice_params->N}};
    if (side.local_system) {
      Json ls = Json::object();
      for (std::size_t i = 0; i < side.local_system->size(); ++i) {
        ls[side.H1_L->labels()[i]] = rational_json((*side.local_system)[i]);
      }
      s["local_system"] = ls;
    }
    if (side.subspace) {
      Json span = Json::array();
      for (const auto& v : side.subspace->span) span.push_back(vector_json(v));
      s["subspace"] = Json{{"field", side.subspace->field.name()}, {"base", vector_json(side.subspace->base)}, {"span", span}};
    }
    if (side.asserted_invariant) s["asserted_invariant"] = element_json(*side.asserted_invariant);
    Json disks = Json::array();
    for (const auto& d : side.ledger.disks) {
      Json dj;
      dj["label"] = d.label;
      dj["rel_class"] = element_json(d.rel_class);
      dj["boundary"] = element_json(d.boundary);
      dj["maslov"] = d.maslov;
      dj["area"] = rational_json(d.area);
      dj["count"] = integer_json(d.count);
      disks.push_back(dj);
    }
    s["ledger"] = Json{{"complete_below", rational_json(side.ledger.complete_below)}, {"disks", disks}};
    sides.push_back(s);
  }
  doc["sides"] = sides;
  doc["ring"] = sc.ring.name();
  return doc;
}

Scenario combine(const Scenario& first, const Scenario& second) {
  if (!same_ambient(first, second)) {
    invalid("ambient mismatch: both sides must share H2_X and its intersection form");
  }
  Scenario out = first;
  for (const auto& s : second.sides) out.sides.push_back(s);
  validate(out);
  return out;
}

// ---------------------------------------------------------------------------
// Built-in specs

BuiltinSpec parse_builtin_spec(std::string_view text) {
  BuiltinSpec spec;
  auto colon = text.find(':');
  spec.name = std::string(text.substr(0, colon));
  if (spec.name.empty()) throw Error(ErrorCode::ParseError, "empty scenario name in '" + std::string(text) + "'");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::ParseError, "expected key=value, got '" + std::string(item) + "'");
    }
    spec.params[std::string(item.substr(0, eq))] = parse_rational(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

std::string to_string(const BuiltinSpec& spec) {
  std::string out = spec.name;
  bool first = true;
  for (const auto& name : builtin_param_names(spec.name)) {
    auto it = spec.params.find(name);
    if (it == spec.params.end()) continue;
    out += first ? ":" : ",";
    out += name + "=" + to_string(it->second);
    first = false;
  }
  return out;
}

namespace {

struct DiskSpec {
  std::string label;
  std::vector<long> rel;
  Rational area;
  long count;
};

struct SideSpec {
  std::string name;
  std::vector<std::string> h2xl;
  std::vector<std::vector<long>> h2xl_relations;
  std::vector<std::string> h1;
  std::vector<std::vector<long>> h1_relations;
  std::vector<std::vector<long>> j;
  std::vector<std::vector<long>> bd;
  std::vector<DiskSpec> disks;
  Rational complete_below;
};

IntMatrix long_matrix(const std::vector<std::vector<long>>& rows, std::size_t cols_if_empty) {
  std::vector<std::vector<Integer>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r, cols_if_empty);
}

std::vector<Integer> long_vector(const std::vector<long>& v) { return {v.begin(), v.end()}; }

LagrangianSide make_side(const GroupPtr& h2x, const SideSpec& spec) {
  auto h2xl = std::make_shared<const FgAbelianGroup>(spec.h2xl, long_matrix(spec.h2xl_relations, spec.h2xl.size()));
  auto h1 = std::make_shared<const FgAbelianGroup>(spec.h1, long_matrix(spec.h1_relations, spec.h1.size()));
  GroupHom j(h2x, h2xl, long_matrix(spec.j, h2x->generator_count()));
  GroupHom bd(h2xl, h1, long_matrix(spec.bd, h2xl->generator_count()));
  LagrangianSide side{spec.name, h1, h2xl, j, bd, GroupElement::zero(h2x, Ring::integers()),
                      false, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                      DiskLedger{{}, spec.complete_below}};
  for (const auto& d : spec.disks) {
    GroupElement rel = element(h2xl, long_vector(d.rel));
    side.ledger.disks.push_back(DiskClass{d.label, rel, bd.apply(rel), 2, d.area, Integer(d.count)});
  }
  return side;
}

AffineSubspace line_mod2(std::vector<long> direction) {
  return AffineSubspace{Ring::prime_field(2), std::vector<Integer>(direction.size(), Integer(0)), {long_vector(direction)}};
}

GroupPtr free_group(std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  return std::make_shared<const FgAbelianGroup>(std::move(labels), IntMatrix(0, n));
}

[[noreturn]] void bad_params(const std::string& what) { throw Error(ErrorCode::BadParams, what); }

Rational param_in_unit_interval(const BuiltinParams& params, const std::string& key, const std::string& name) {
  auto it = params.find(key);
  if (it == params.end()) bad_params(name + " needs parameter '" + key + "'");
  if (it->second <= 0 || it->second >= 1) {
    bad_params(name + ": " + key + " = " + to_string(it->second) + " is outside (0, 1)");
  }
  return it->second;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& builtin_table() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> table = {
      {"cp2_ta", {"a"}},         {"cp2_clifford", {}},   {"p1xp1_ta", {"a"}}, {"p1xp1_clifford", {}},
      {"bl3_ta", {"a"}},         {"bl3_clifford", {}},   {"ts2_la", {"a"}},   {"trp2_la", {"a"}},
      {"sphere_pair", {"a", "b", "k"}},
  };
  return table;
}

Scenario cp2_ambient() {
  auto h2x = free_group({"H"});
  return Scenario{h2x, IntersectionForm(h2x, long_matrix({{1}}, 1)), {}, Ring::integers_mod(8)};
}

Scenario p1xp1_ambient() {
  auto h2x = free_group({"H1", "H2"});
  return Scenario{h2x, IntersectionForm(h2x, long_matrix({{0, 1}, {1, 0}}, 2)), {}, Ring::integers_mod(4)};
}

Scenario bl3_ambient() {
  auto h2x = free_group({"H1", "H2", "E1", "E2"});
  IntMatrix form = long_matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}, 4);
  return Scenario{h2x, IntersectionForm(h2x, form), {}, Ring::integers_mod(2)};
}

Scenario build_cp2_ta(const Rational& a) {
  Scenario sc = cp2_ambient();
  SideSpec spec{"T_a",
                {"H", "beta", "alpha"}, {},
                {"dbeta", "dalpha"}, {},
                {{1}, {0}, {0}},
                {{0, 1, 0}, {0, 0, 1}},
                {{"H-2beta-alpha", {1, -2, -1}, a, 1},
                 {"H-2beta", {1, -2, 0}, a, 2},
                 {"H-2beta+alpha", {1, -2, 1}, a, 1},
                 {"beta", {0, 1, 0}, (1 - a) / 2, 1}},
                1};
  LagrangianSide side = make_side(sc.H2_X, spec);
  side.lattice_params = LatticeParams{3, 2};
  sc.sides.push_back(std::move(side));
  return sc;
}

Scenario build_cp2_clifford() {
  Scenario sc = cp2_ambient();
  const Rational third(1, 3);
  SideSpec spec{"T_Cl",
                {"H", "beta1", "beta2"}, {},
                {"dbeta1", "dbeta2"}, {},
                {{1}, {0}, {0}},
                {{0, 1, 0}, {0, 0, 1}},
                {{"beta1", {0, 1, 0}, third, 1}, {"beta2", {0, 0, 1}, third, 1}, {"H-beta1-beta2", {1, -1, -1}, third, 1}},
                1};
  LagrangianSide side = make_side(sc.H2_X, spec);
  side.monotone = true;
  side.b = third;
  sc.sides.push_back(std::move(side));
  return sc;
}

SideSpec p1xp1_ta_spec(const Rational& a) {
  return SideSpec{"T_a",
                  {"H1", "H2", "beta", "alpha"}, {},
                  {"dbeta", "dalpha"}, {},
                  {{1, 0}, {0, 1}, {0, 0}, {0, 0}},
                  {{0, 0, 1, 0}, {0, 0, 0, 1}},
                  {{"H1-beta-alpha", {1, 0, -1, -1}, a, 1},
                   {"H1-beta", {1, 0, -1, 0}, a, 1},
                   {"H2-beta", {0, 1, -1, 0}, a, 1},
                   {"H2-beta+alpha", {0, 1, -1, 1}, a, 1},
                   {"beta", {0, 0, 1, 0}, 1 - a, 1}},
                  1};
}

Scenario build_p1xp1_ta(const Rational& a) {
  Scenario sc = p1xp1_ambient();
  LagrangianSide side = make_side(sc.H2_X, p1xp1_ta_spec(a));
  side.lattice_params = LatticeParams{2, 1};
  side.subspace = line_mod2({1, 0});
  sc.sides.push_back(std::move(side));
  return sc;
}

Scenario build_p1xp1_clifford() {
  Scenario sc = p1xp1_ambient();
  const Rational half(1, 2);
  SideSpec spec{"T_Cl",
                {"H1", "H2", "beta1", "beta2"}, {},
                {"dbeta1", "dbeta2"}, {},
                {{1, 0}, {0, 1}, {0, 0}, {0, 0}},
                {{0, 0, 1, 0}, {0, 0, 0, 1}},
                {{"beta1", {0, 0, 1, 0}, half, 1},
                 {"beta2", {0, 0, 0, 1}, half, 1},
                 {"H1-beta1", {1, 0, -1, 0}, half, 1},
                 {"H2-beta2", {0, 1, 0, -1}, half, 1}},
                1};
  LagrangianSide side = make_side(sc.H2_X, spec);
  side.monotone = true;
  side.b = half;
  side.subspace = line_mod2({0, 1});
  sc.sides.push_back(std::move(side));
  return sc;
}

// The blow-up keeps the product's disks (padded with zero E-coordinates) and
// gains two area-1/2 disks; only their sum H1+H2-E1-E2 and boundaries +-dalpha
// are pinned down, the split between them is a convention.
Scenario build_bl3_ta(const Rational& a) {
  Scenario sc = bl3_ambient();
  const Rational half(1, 2);
  SideSpec spec{"T_a",
                {"H1", "H2", "E1", "E2", "beta", "alpha"}, {},
                {"dbeta", "dalpha"}, {},
                {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}},
                {{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}},
                {{"H1-beta-alpha", {1, 0, 0, 0, -1, -1}, a, 1},
                 {"H1-beta", {1, 0, 0, 0, -1, 0}, a, 1},
                 {"H2-beta", {0, 1, 0, 0, -1, 0}, a, 1},
                 {"H2-beta+alpha", {0, 1, 0, 0, -1, 1}, a, 1},
                 {"H1-E1+alpha", {1, 0, -1, 0, 0, 1}, half, 1},
                 {"H2-E2-alpha", {0, 1, 0, -1, 0, -1}, half, 1},
                 {"beta", {0, 0, 0, 0, 1, 0}, 1 - a, 1}},
                1};
  LagrangianSide side = make_side(sc.H2_X, spec);
  side.subspace = line_mod2({1, 0});
  sc.sides.push_back(std::move(side));
  return sc;
}

// No disk ledger is available for this fibre; only the coset-refined invariant
// is known, so it is carried as an asserted value.
Scenario build_bl3_clifford() {
  Scenario sc = bl3_ambient();
  const Rational half(1, 2);
  SideSpec spec{"T_Cl",
                {"H1", "H2", "E1", "E2", "beta1", "beta2"}, {},
                {"dbeta1", "dbeta2"}, {},
                {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}},
                {{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}},
                {},
                half};
  LagrangianSide side = make_side(sc.H2_X, spec);
  side.monotone = true;
  side.b = half;
  side.subspace = line_mod2({0, 1});
  side.asserted_invariant = element(sc.H2_X, {0, 1, 0, 0});
  sc.sides.push_back(std::move(side));
  return sc;
}

// gamma is the class of the disk "H1 - beta" of the product picture; the other
// three area-a disks are gamma - alpha, gamma - S2 and gamma - S2 + alpha.
SideSpec sphere_side_spec(const std::string& name, const std::vector<std::string>& h2x_labels, std::size_t sphere,
                          const Rational& a, const Rational& complete_below) {
  const std::size_t m = h2x_labels.size();
  SideSpec spec;
  spec.name = name;
  spec.h2xl = h2x_labels;
  spec.h2xl.push_back("gamma");
  spec.h2xl.push_back("alpha");
  spec.h1 = {"dbeta", "dalpha"};
  for (std::size_t r = 0; r < m + 2; ++r) {
    std::vector<long> row(m, 0);
    if (r < m) row[r] = 1;
    spec.j.push_back(row);
  }
  std::vector<long> bd_beta(m + 2, 0), bd_alpha(m + 2, 0);
  bd_beta[m] = -1;
  bd_alpha[m + 1] = 1;
  spec.bd = {bd_beta, bd_alpha};
  auto disk = [&](std::string label, long s, long g, long al) {
    std::vector<long> rel(m + 2, 0);
    rel[sphere] = s;
    rel[m] = g;
    rel[m + 1] = al;
    return DiskSpec{std::move(label), rel, a, 1};
  };
  const std::string S = h2x_labels[sphere];
  spec.disks = {disk("gamma-alpha", 0, 1, -1), disk("gamma", 0, 1, 0), disk("gamma-" + S, -1, 1, 0),
                disk("gamma-" + S + "+alpha", -1, 1, 1)};
  spec.complete_below = complete_below;
  return spec;
}

Scenario build_ts2_la(const Rational& a) {
  auto h2x = free_group({"S2"});
  Scenario sc{h2x, IntersectionForm(h2x, long_matrix({{-2}}, 1)), {}, Ring::integers_mod(4)};
  LagrangianSide side = make_side(h2x, sphere_side_spec("L_a", {"S2"}, 0, a, 2 * a));
  side.monotone = true;
  side.b = a;
  side.subspace = line_mod2({1, 0});
  sc.sides.push_back(std::move(side));
  return sc;
}

// Presented as Z/8-modules: H2(T*RP2; Z/8) is the order-2 subgroup generated by
// 4*RP2 inside <RP2 | 8 RP2>, and rho is the relative class of the zero
// section, with 4 rho = 4 gamma.
Scenario build_trp2_la(const Rational& a) {
  auto h2x = std::make_shared<const FgAbelianGroup>(std::vector<std::string>{"RP2"}, long_matrix({{8}}, 1));
  Scenario sc{h2x, std::nullopt, {}, Ring::integers_mod(8)};
  SideSpec spec{"L_a",
                {"rho", "gamma", "alpha"},
                {{8, 0, 0}, {0, 8, 0}, {0, 0, 8}, {4, -4, 0}},
                {"dbeta", "dalpha"},
                {{8, 0}, {0, 8}},
                {{1}, {0}, {0}},
                {{0, -2, 0}, {0, 0, 1}},
                {{"gamma-alpha", {0, 1, -1}, a, 1}, {"gamma", {0, 1, 0}, a, 2}, {"gamma+alpha", {0, 1, 1}, a, 1}},
                2 * a};
  LagrangianSide side = make_side(h2x, spec);
  side.monotone = true;
  side.b = a;
  sc.sides.push_back(std::move(side));
  return sc;
}

// Two tori sitting in neighbourhoods of Lagrangian spheres S, Sp with S.Sp = 1,
// inside a surface with c1 = k*omega. Only the span of the two sphere classes
// is modelled.
Scenario build_sphere_pair(const BuiltinParams& params) {
  Rational a = param_in_unit_interval(params, "a", "sphere_pair");
  Rational b = param_in_unit_interval(params, "b", "sphere_pair");
  auto kit = params.find("k");
  if (kit == params.end()) bad_params("sphere_pair needs parameter 'k'");
  if (denominator(kit->second) != 1 || kit->second < 1) bad_params("sphere_pair: k must be a positive integer");
  const long k = static_cast<long>(numerator(kit->second));
  for (const auto& [name, v] : {std::pair{"a", a}, std::pair{"b", b}}) {
    if (v * (k + 1) >= 1) {
      bad_params(std::string("sphere_pair: ") + name + " = " + to_string(v) + " must be below 1/(k+1) = 1/" +
                 std::to_string(k + 1));
    }
  }
  auto h2x = free_group({"S", "Sp"});
  Scenario sc{h2x, IntersectionForm(h2x, long_matrix({{-2, 1}, {1, -2}}, 2)), {}, Ring::integers_mod(2)};
  const std::vector<std::string> labels = {"S", "Sp"};
  std::size_t idx = 0;
  for (const auto& [name, v] : {std::pair{"T_a", a}, std::pair{"T_b", b}}) {
    // Ledger complete up to the first possible level above v.
    LagrangianSide side = make_side(h2x, sphere_side_spec(name, labels, idx++, v, v + (1 - k * v)));
    side.lattice_params = LatticeParams{k, 1};
    side.subspace = line_mod2({1, 0});
    sc.sides.push_back(std::move(side));
  }
  return sc;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : builtin_table()) out.push_back(name);
  return out;
}

bool is_builtin(std::string_view name) {
  const auto& t = builtin_table();
  return std::any_of(t.begin(), t.end(), [&](const auto& e) { return e.first == name; });
}

std::vector<std::string> builtin_param_names(std::string_view name) {
  for (const auto& [n, params] : builtin_table())
    if (n == name) return params;
  return {};
}

Scenario builtin_scenario(const std::string& name, const BuiltinParams& params) {
  if (!is_builtin(name)) throw Error(ErrorCode::UnknownScenario, "no built-in scenario named '" + name + "'");
  const auto allowed = builtin_param_names(name);
  for (const auto& [key, _] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      bad_params(name + " does not take parameter '" + key + "'");
    }
  }
  Scenario sc = [&] {
    if (name == "cp2_ta") return build_cp2_ta(param_in_unit_interval(params, "a", name));
    if (name == "cp2_clifford") return build_cp2_clifford();
    if (name == "p1xp1_ta") return build_p1xp1_ta(param_in_unit_interval(params, "a", name));
    if (name == "p1xp1_clifford") return build_p1xp1_clifford();
    if (name == "bl3_ta") return build_bl3_ta(param_in_unit_interval(params, "a", name));
    if (name == "bl3_clifford") return build_bl3_clifford();
    if (name == "ts2_la") return build_ts2_la(param_in_unit_interval(params, "a", name));
    if (name == "trp2_la") return build_trp2_la(param_in_unit_interval(params, "a", name));
    return build_sphere_pair(params);
  }();
  validate(sc);
  return sc;
}

}  // namespace floer
