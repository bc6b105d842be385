#pragma once

// Probes in rational polygons: integrally transverse segments entering
// through a facet. A fibre strictly before the midpoint of a probe is
// displaceable.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "floer/rational.hpp"
#include "floer/scenario.hpp"

namespace floer {

using Point2 = std::array<Rational, 2>;
using Vec2 = std::array<long, 2>;

struct Facet {
  std::size_t from, to;  // vertex indices, counterclockwise
  Vec2 normal;           // primitive, inward
  Rational offset;       // <normal, x> >= offset on the polygon
};

class Polytope2 {
 public:
  /// Any orientation; reordered counterclockwise. Excluded vertices are given
  /// as indices into `vertices`. Throws ValidationError for degenerate or
  /// non-convex input.
  Polytope2(std::vector<Point2> vertices, std::vector<std::size_t> excluded = {});

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Indices into vertices().
  const std::vector<std::size_t>& excluded_vertices() const { return excluded_; }

  bool contains(const Point2& p) const;  // closed
  bool interior(const Point2& p) const;
  /// Facet whose relative interior contains p.
  std::optional<std::size_t> facet_containing(const Point2& p) const;

 private:
  std::vector<Point2> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::size_t> excluded_;
};

Polytope2 polytope_from_json(const Json& j);  // throws SchemaError, ValidationError
Json to_json(const Polytope2& p);

/// Our reading of the semitoric pictures: the excluded Lagrangian sits at the
/// bottom vertex (0,0), the top side at height 1 (p1xp1) or 1/2 (cp2).
Polytope2 default_polytope(const std::string& name);  // throws UnknownScenario
std::vector<std::string> default_polytope_names();

struct Probe {
  std::size_t facet;
  Point2 base;
  Vec2 direction;
};

struct ProbeSegment {
  Point2 exit;
  Rational length;  // affine length, in units of the primitive direction
  bool exit_at_vertex = false;
  bool exit_at_excluded_vertex = false;
};

/// Throws InvalidProbe.
ProbeSegment probe_segment(const Polytope2& poly, const Probe& probe);

/// point = base + s*direction with 0 < s < length/2, and no excluded vertex on
/// the closed segment from base to base + 2s*direction.
bool probe_displaces(const Polytope2& poly, const Probe& probe, const Point2& point);

struct ProbeHit {
  Probe probe;
  ProbeSegment segment;
  Rational s;  // parameter of the point along the probe
};

/// All displacing probes through point with |direction components| <= bound,
/// ordered by direction then facet.
std::vector<ProbeHit> search_probes(const Polytope2& poly, const Point2& point, long bound);

Json to_json(const ProbeHit& h);
Point2 parse_point(const std::string& text);  // "0,3/4"; throws ParseError
std::string to_string(const Point2& p);       // "(0, 3/4)"

}  // namespace floer
