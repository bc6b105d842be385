#pragma once

// Scenario data model: a Lagrangian (or a pair) with its homology groups, the
// maps j: H2(X) -> H2(X,L) and bd: H2(X,L) -> H1(L), the intersection form on
// H2(X), and the ledger of Maslov-2 disks. JSON ingestion, validation and the
// built-in scenarios live here too.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "floer/abelian.hpp"
#include "floer/rational.hpp"
#include "floer/rings.hpp"

namespace floer {

using Json = nlohmann::ordered_json;

struct DiskClass {
  std::string label;
  GroupElement rel_class;  // in H2(X,L), over Z
  GroupElement boundary;   // in H1(L), over Z
  int maslov = 2;
  Rational area;
  Integer count;
};

struct DiskLedger {
  std::vector<DiskClass> disks;
  Rational complete_below;  // the ledger is complete for areas < complete_below
};

struct LatticeParams {
  long k = 0;
  long N = 0;
};

/// An affine subspace base + span of H1(L; k), coordinates in the generators
/// of H1(L).
struct AffineSubspace {
  Ring field;
  std::vector<Integer> base;
  std::vector<std::vector<Integer>> span;
};

struct LagrangianSide {
  std::string name;
  GroupPtr H1_L;
  GroupPtr H2_XL;
  GroupHom j;
  GroupHom bd;
  GroupElement fundamental_class;  // [L] in H2(X), over Z
  bool monotone = false;
  std::optional<Rational> b;  // omega = (b/2) mu when monotone
  std::optional<LatticeParams> lattice_params;
  /// Values of the local system on the generators of H1(L), in generator order.
  std::optional<std::vector<Rational>> local_system;
  std::optional<AffineSubspace> subspace;
  std::optional<GroupElement> asserted_invariant;  // in H2(X), over Z
  DiskLedger ledger;
};

struct Scenario {
  GroupPtr H2_X;
  std::optional<IntersectionForm> form;
  std::vector<LagrangianSide> sides;
  Ring ring = Ring::integers();
};

/// Parses and validates. SchemaError for structural problems, ValidationError
/// naming the broken invariant otherwise.
Scenario load_scenario(std::string_view json_text);
Scenario scenario_from_json(const Json& doc);
Json to_json(const Scenario& scenario);

/// Re-runs every invariant check. Throws ValidationError.
void validate(const Scenario& scenario);

/// Builds a two-sided scenario from two one-sided ones sharing H2(X) and the
/// form. Throws ValidationError("ambient mismatch").
Scenario combine(const Scenario& first, const Scenario& second);

using BuiltinParams = std::map<std::string, Rational>;

struct BuiltinSpec {
  std::string name;
  BuiltinParams params;
};

/// "cp2_ta:a=1/10" or "sphere_pair:a=1/10,b=1/8,k=2". Throws ParseError.
BuiltinSpec parse_builtin_spec(std::string_view text);
std::string to_string(const BuiltinSpec& spec);

std::vector<std::string> builtin_names();
bool is_builtin(std::string_view name);
/// Parameter names accepted by a built-in, in order.
std::vector<std::string> builtin_param_names(std::string_view name);

/// Throws UnknownScenario or BadParams.
Scenario builtin_scenario(const std::string& name, const BuiltinParams& params = {});
inline Scenario builtin_scenario(const BuiltinSpec& spec) { return builtin_scenario(spec.name, spec.params); }

/// Convenience: the element of `group` with integer coordinates, over `ring`.
GroupElement element(const GroupPtr& group, const std::vector<Integer>& coords, const Ring& ring = Ring::integers());

}  // namespace floer
