#include "floer/probes.hpp"

#include <algorithm>
#include <numeric>

#include "floer/error.hpp"

namespace floer {

namespace {

Rational dot(const Vec2& n, const Point2& p) { return n[0] * p[0] + n[1] * p[1]; }
long dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

Rational cross(const Point2& a, const Point2& b, const Point2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

Point2 along(const Point2& base, const Vec2& d, const Rational& s) {
  return {Rational(base[0] + s * d[0]), Rational(base[1] + s * d[1])};
}

// Primitive integer vector along a nonzero rational one.
Vec2 primitive(const Rational& x, const Rational& y) {
  Integer l = boost::multiprecision::lcm(denominator(x), denominator(y));
  Integer a = numerator(x * l), b = numerator(y * l);
  Integer g = boost::multiprecision::gcd(a, b);
  return {(a / g).convert_to<long>(), (b / g).convert_to<long>()};
}

// s with p = base + s*d, if p is on that line.
std::optional<Rational> parameter(const Point2& base, const Vec2& d, const Point2& p) {
  if (d[0] != 0) {
    Rational s = (p[0] - base[0]) / d[0];
    if (p[1] - base[1] != s * d[1]) return std::nullopt;
    return s;
  }
  Rational s = (p[1] - base[1]) / d[1];
  if (p[0] != base[0]) return std::nullopt;
  return s;
}

Rational json_rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) throw Error(ErrorCode::SchemaError, path + ": expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.detail());
  }
}

}  // namespace

Polytope2::Polytope2(std::vector<Point2> vertices, std::vector<std::size_t> excluded) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error(ErrorCode::ValidationError, "polygon needs at least 3 vertices");
  for (auto e : excluded) {
    if (e >= n) throw Error(ErrorCode::ValidationError, "excluded vertex index " + std::to_string(e) + " out of range");
  }
  Rational area2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % n];
    area2 += a[0] * b[1] - a[1] * b[0];
  }
  if (area2 == 0) throw Error(ErrorCode::ValidationError, "polygon has zero area");
  if (area2 < 0) {
    std::reverse(vertices.begin(), vertices.end());
    for (auto& e : excluded) e = n - 1 - e;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) <= 0) {
      throw Error(ErrorCode::ValidationError, "polygon is not strictly convex at vertex " + to_string(vertices[(i + 1) % n]));
    }
  }
  vertices_ = std::move(vertices);
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  excluded_ = std::move(excluded);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % n];
    Vec2 d = primitive(b[0] - a[0], b[1] - a[1]);
    Vec2 normal{-d[1], d[0]};
    facets_.push_back({i, (i + 1) % n, normal, dot(normal, a)});
  }
}

bool Polytope2::contains(const Point2& p) const {
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, p) >= f.offset; });
}

bool Polytope2::interior(const Point2& p) const {
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, p) > f.offset; });
}

std::optional<std::size_t> Polytope2::facet_containing(const Point2& p) const {
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    if (dot(facets_[i].normal, p) != facets_[i].offset) continue;
    bool inside = true;
    for (std::size_t k = 0; k < facets_.size(); ++k) {
      if (k != i && dot(facets_[k].normal, p) <= facets_[k].offset) inside = false;
    }
    if (inside) return i;
  }
  return std::nullopt;
}

Polytope2 polytope_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw Error(ErrorCode::SchemaError, "$.vertices: expected an array of [x, y] pairs");
  }
  std::vector<Point2> vs;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const Json& v = j["vertices"][i];
    const std::string path = "$.vertices[" + std::to_string(i) + "]";
    if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::SchemaError, path + ": expected [x, y]");
    vs.push_back({json_rational(v[0], path + "[0]"), json_rational(v[1], path + "[1]")});
  }
  std::vector<std::size_t> ex;
  if (j.contains("excluded_vertices")) {
    const Json& e = j["excluded_vertices"];
    if (!e.is_array()) throw Error(ErrorCode::SchemaError, "$.excluded_vertices: expected an array of indices");
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) throw Error(ErrorCode::SchemaError, "$.excluded_vertices: expected indices");
      ex.push_back(x.get<std::size_t>());
    }
  }
  return Polytope2(std::move(vs), std::move(ex));
}

Json to_json(const Polytope2& p) {
  Json vs = Json::array();
  for (const auto& v : p.vertices()) vs.push_back(Json::array({to_string(v[0]), to_string(v[1])}));
  return Json{{"vertices", vs}, {"excluded_vertices", p.excluded_vertices()}};
}

Polytope2 default_polytope(const std::string& name) {
  if (name == "p1xp1") return Polytope2({{0, 0}, {1, 1}, {-1, 1}}, {0});
  if (name == "cp2") return Polytope2({{0, 0}, {1, Rational(1, 2)}, {-1, Rational(1, 2)}}, {0});
  throw Error(ErrorCode::UnknownScenario, "no default polygon '" + name + "' (known: p1xp1, cp2)");
}

std::vector<std::string> default_polytope_names() { return {"p1xp1", "cp2"}; }

ProbeSegment probe_segment(const Polytope2& poly, const Probe& probe) {
  const auto& fs = poly.facets();
  if (probe.facet >= fs.size()) throw Error(ErrorCode::InvalidProbe, "no facet " + std::to_string(probe.facet));
  const Vec2& d = probe.direction;
  if (std::gcd(d[0], d[1]) != 1) throw Error(ErrorCode::InvalidProbe, "direction is not primitive");
  const Facet& f = fs[probe.facet];
  if (dot(d, f.normal) != 1) {
    throw Error(ErrorCode::InvalidProbe, "direction is not integrally transverse and inward: <d,n> = " +
                                             std::to_string(dot(d, f.normal)));
  }
  if (poly.facet_containing(probe.base) != probe.facet) {
    throw Error(ErrorCode::InvalidProbe, "base " + to_string(probe.base) + " is not in the relative interior of facet " +
                                             std::to_string(probe.facet));
  }
  std::optional<Rational> s_exit;
  for (const auto& g : fs) {
    const long dn = dot(d, g.normal);
    if (dn >= 0) continue;
    Rational s = (dot(g.normal, probe.base) - g.offset) / Rational(-dn);
    if (!s_exit || s < *s_exit) s_exit = s;
  }
  ProbeSegment seg{along(probe.base, d, *s_exit), *s_exit, false, false};
  const auto& vs = poly.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] != seg.exit) continue;
    seg.exit_at_vertex = true;
    const auto& ex = poly.excluded_vertices();
    seg.exit_at_excluded_vertex = std::find(ex.begin(), ex.end(), i) != ex.end();
  }
  return seg;
}

bool probe_displaces(const Polytope2& poly, const Probe& probe, const Point2& point) {
  const ProbeSegment seg = probe_segment(poly, probe);
  auto s = parameter(probe.base, probe.direction, point);
  if (!s || *s <= 0 || *s >= seg.length / 2) return false;
  for (auto e : poly.excluded_vertices()) {
    auto u = parameter(probe.base, probe.direction, poly.vertices()[e]);
    if (u && *u >= 0 && *u <= 2 * *s) return false;
  }
  return true;
}

std::vector<ProbeHit> search_probes(const Polytope2& poly, const Point2& point, long bound) {
  std::vector<ProbeHit> out;
  const auto& fs = poly.facets();
  for (long dx = -bound; dx <= bound; ++dx) {
    for (long dy = -bound; dy <= bound; ++dy) {
      if (std::gcd(dx, dy) != 1) continue;
      const Vec2 d{dx, dy};
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (dot(d, fs[i].normal) != 1) continue;
        // the line through point meets this facet's line at s = <n,point> - c
        Rational s = dot(fs[i].normal, point) - fs[i].offset;
        Probe probe{i, along(point, d, -s), d};
        if (poly.facet_containing(probe.base) != i) continue;
        if (!probe_displaces(poly, probe, point)) continue;
        out.push_back({probe, probe_segment(poly, probe), s});
      }
    }
  }
  return out;
}

Json to_json(const ProbeHit& h) {
  Json j{{"facet", h.probe.facet},
         {"base", Json::array({to_string(h.probe.base[0]), to_string(h.probe.base[1])})},
         {"direction", Json::array({h.probe.direction[0], h.probe.direction[1]})},
         {"s", to_string(h.s)},
         {"length", to_string(h.segment.length)},
         {"exit", Json::array({to_string(h.segment.exit[0]), to_string(h.segment.exit[1])})}};
  if (h.segment.exit_at_vertex) j["exit_at_vertex"] = true;
  if (h.segment.exit_at_excluded_vertex) j["exit_at_excluded_vertex"] = true;
  return j;
}

Point2 parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw Error(ErrorCode::ParseError, "point '" + text + "': expected x,y");
  }
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::string to_string(const Point2& p) { return "(" + to_string(p[0]) + ", " + to_string(p[1]) + ")"; }

}  // namespace floer
