#include "floer/potential.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <tuple>

#include "floer/error.hpp"

namespace floer {

namespace {

auto key(const NovikovTerm& t) { return std::tie(t.t, t.z, t.w, t.ec); }

bool key_less(const NovikovTerm& a, const NovikovTerm& b) { return key(a) < key(b); }

long to_long(const Integer& n) {
  if (n > Integer(std::numeric_limits<long>::max()) || n < Integer(std::numeric_limits<long>::min())) {
    throw Error(ErrorCode::DimensionMismatch, "exponent out of range: " + to_string(n));
  }
  return n.convert_to<long>();
}

Rational rpow(const Rational& x, long e) {
  Rational r = 1;
  Rational b = e < 0 ? Rational(1 / x) : x;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

std::string exponent_factor(const std::string& var, long e) {
  if (e == 1) return var;
  return var + "^{" + std::to_string(e) + "}";
}

std::string term_body(const NovikovTerm& t) {
  std::vector<std::string> f;
  if (t.t != 0) f.push_back("t^{" + to_string(t.t) + "}");
  if (t.ec == 1) f.push_back("e^{c}");
  else if (t.ec == -1) f.push_back("e^{-c}");
  else if (t.ec != 0) f.push_back("e^{" + std::to_string(t.ec) + "c}");
  if (t.z != 0) f.push_back(exponent_factor("z", t.z));
  if (t.w != 0) f.push_back(exponent_factor("w", t.w));
  Rational c = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
  std::string out;
  if (c != 1 || f.empty()) out = to_string(c);
  for (const auto& s : f) {
    if (!out.empty()) out += "*";
    out += s;
  }
  return out;
}

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::ParseError, "polynomial '" + std::string(text) + "': " + why);
}

std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '{') ++depth;
    if (ch == '}') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// "z", "z^{3}", "z^-2"
long parse_var_exponent(std::string_view whole, std::string_view f) {
  if (f.size() == 1) return 1;
  if (f.size() < 3 || f[1] != '^') parse_fail(whole, "bad factor '" + std::string(f) + "'");
  std::string_view e = f.substr(2);
  if (e.front() == '{') {
    if (e.back() != '}') parse_fail(whole, "unbalanced braces");
    e = e.substr(1, e.size() - 2);
  }
  try {
    return to_long(parse_integer(e));
  } catch (const Error&) {
    parse_fail(whole, "bad exponent '" + std::string(e) + "'");
  }
}

NovikovTerm parse_term(std::string_view whole, std::string_view body, bool negative) {
  NovikovTerm t{negative ? Rational(-1) : Rational(1), 0, 0, 0, 0};
  for (const auto& fs : split_top(body, '*')) {
    std::string_view f = fs;
    if (f.empty()) parse_fail(whole, "empty factor");
    if (std::isdigit(static_cast<unsigned char>(f.front()))) {
      try {
        t.coeff *= parse_rational(f);
      } catch (const Error&) {
        parse_fail(whole, "bad coefficient '" + fs + "'");
      }
    } else if (f.front() == 't') {
      if (f.size() < 5 || f.substr(0, 3) != "t^{" || f.back() != '}') parse_fail(whole, "bad factor '" + fs + "'");
      try {
        t.t += parse_rational(f.substr(3, f.size() - 4));
      } catch (const Error&) {
        parse_fail(whole, "bad t exponent '" + fs + "'");
      }
    } else if (f.front() == 'e') {
      if (f.size() < 5 || f.substr(0, 3) != "e^{" || f.substr(f.size() - 2) != "c}") {
        parse_fail(whole, "bad factor '" + fs + "'");
      }
      std::string_view k = f.substr(3, f.size() - 5);
      if (k.empty()) t.ec += 1;
      else if (k == "-") t.ec -= 1;
      else {
        try {
          t.ec += to_long(parse_integer(k));
        } catch (const Error&) {
          parse_fail(whole, "bad e^c exponent '" + fs + "'");
        }
      }
    } else if (f.front() == 'z') {
      t.z += parse_var_exponent(whole, f);
    } else if (f.front() == 'w') {
      t.w += parse_var_exponent(whole, f);
    } else {
      parse_fail(whole, "unknown factor '" + fs + "'");
    }
  }
  return t;
}

Integer lcm_int(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
  Rational r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

// Divides by (w - r); c is constant-first and r a root.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
  std::size_t n = c.size() - 1;
  std::vector<Rational> q(n);
  Rational carry = 0;
  for (std::size_t i = n; i-- > 0;) {
    carry = c[i + 1] + carry * r;
    q[i] = carry;
  }
  return q;
}

}  // namespace

NovikovPolynomial::NovikovPolynomial(std::vector<NovikovTerm> terms) {
  std::sort(terms.begin(), terms.end(), key_less);
  for (auto& t : terms) {
    if (!terms_.empty() && key(terms_.back()) == key(t)) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const NovikovTerm& t) { return t.coeff == 0; });
}

NovikovPolynomial NovikovPolynomial::monomial(const Rational& coeff, const Rational& t, long ec, long z, long w) {
  return NovikovPolynomial({NovikovTerm{coeff, t, ec, z, w}});
}

std::vector<Rational> NovikovPolynomial::levels() const {
  std::vector<Rational> out;
  for (const auto& t : terms_) {
    if (out.empty() || out.back() != t.t) out.push_back(t.t);
  }
  return out;
}

NovikovPolynomial operator+(const NovikovPolynomial& a, const NovikovPolynomial& b) {
  std::vector<NovikovTerm> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return NovikovPolynomial(std::move(all));
}

NovikovPolynomial operator-(const NovikovPolynomial& a, const NovikovPolynomial& b) {
  return a + Rational(-1) * b;
}

NovikovPolynomial operator*(const Rational& s, const NovikovPolynomial& p) {
  std::vector<NovikovTerm> out = p.terms_;
  for (auto& t : out) t.coeff *= s;
  return NovikovPolynomial(std::move(out));
}

NovikovPolynomial operator*(const NovikovPolynomial& a, const NovikovPolynomial& b) {
  std::vector<NovikovTerm> out;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      out.push_back({x.coeff * y.coeff, x.t + y.t, x.ec + y.ec, x.z + y.z, x.w + y.w});
    }
  }
  return NovikovPolynomial(std::move(out));
}

std::string NovikovPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const bool neg = terms_[i].coeff < 0;
    if (i == 0) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    out += term_body(terms_[i]);
  }
  return out;
}

NovikovPolynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) parse_fail(text, "empty");
  std::vector<NovikovTerm> terms;
  int depth = 0;
  std::size_t start = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    start = 1;
  }
  for (std::size_t i = start; i <= s.size(); ++i) {
    const char ch = i < s.size() ? s[i] : '\0';
    if (ch == '{') ++depth;
    if (ch == '}') --depth;
    if (depth < 0) parse_fail(text, "unbalanced braces");
    if (i == s.size() || (depth == 0 && (ch == '+' || ch == '-') && i > start)) {
      std::string_view body(s.data() + start, i - start);
      if (body.empty()) parse_fail(text, "empty term");
      terms.push_back(parse_term(text, body, negative));
      negative = ch == '-';
      start = i + 1;
    }
  }
  if (depth != 0) parse_fail(text, "unbalanced braces");
  return NovikovPolynomial(std::move(terms));
}

Json to_json(const NovikovPolynomial& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) {
    out.push_back(Json{{"coeff", to_string(t.coeff)}, {"t", to_string(t.t)}, {"ec", t.ec}, {"z", t.z}, {"w", t.w}});
  }
  return out;
}

NovikovPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::SchemaError, "$: polynomial must be an array of terms");
  std::vector<NovikovTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "$[" + std::to_string(i) + "]";
    const Json& e = j[i];
    if (!e.is_object()) throw Error(ErrorCode::SchemaError, path + ": term must be an object");
    auto rational = [&](const char* k) -> Rational {
      if (!e.contains(k)) throw Error(ErrorCode::SchemaError, path + "." + k + ": missing");
      const Json& v = e[k];
      if (v.is_number_integer()) return Rational(v.get<long long>());
      if (!v.is_string()) throw Error(ErrorCode::SchemaError, path + "." + k + ": expected a rational string");
      try {
        return parse_rational(v.get<std::string>());
      } catch (const Error& err) {
        throw Error(ErrorCode::SchemaError, path + "." + k + ": " + err.detail());
      }
    };
    auto integer = [&](const char* k) -> long {
      if (!e.contains(k)) return 0;
      if (!e[k].is_number_integer()) throw Error(ErrorCode::SchemaError, path + "." + k + ": expected an integer");
      return e[k].get<long>();
    };
    terms.push_back({rational("coeff"), rational("t"), integer("ec"), integer("z"), integer("w")});
  }
  return NovikovPolynomial(std::move(terms));
}

NovikovPolynomial potential_from_ledger(const LagrangianSide& side) {
  if (side.H1_L->generator_count() != 2) {
    throw Error(ErrorCode::BasisMismatch, "side " + side.name + ": H1(L) must have exactly two generators, has " +
                                              std::to_string(side.H1_L->generator_count()));
  }
  std::vector<NovikovTerm> terms;
  for (const auto& d : side.ledger.disks) {
    if (d.maslov != 2) continue;
    const auto& c = d.boundary.coords();
    terms.push_back({Rational(d.count), d.area, 0, to_long(c[0].integer_value()), to_long(c[1].integer_value())});
  }
  return NovikovPolynomial(std::move(terms));
}

NovikovPolynomial truncate_to_level(const NovikovPolynomial& p, const Rational& level) {
  std::vector<NovikovTerm> out;
  for (const auto& t : p.terms()) {
    if (t.t == level) out.push_back(t);
  }
  return NovikovPolynomial(std::move(out));
}

NovikovPolynomial bulk_deform(const NovikovPolynomial& p, const LagrangianSide& side,
                              const std::map<std::string, long>& hits) {
  NovikovPolynomial out = p;
  for (const auto& [label, h] : hits) {
    auto it = std::find_if(side.ledger.disks.begin(), side.ledger.disks.end(),
                           [&](const DiskClass& d) { return d.label == label; });
    if (it == side.ledger.disks.end()) {
      throw Error(ErrorCode::UnknownLabel, "side " + side.name + " has no disk labelled '" + label + "'");
    }
    if (h == 0 || it->maslov != 2) continue;
    const auto& c = it->boundary.coords();
    const long z = to_long(c[0].integer_value());
    const long w = to_long(c[1].integer_value());
    auto m = NovikovPolynomial::monomial(Rational(it->count), it->area, 0, z, w);
    out = out - m + NovikovPolynomial::monomial(Rational(it->count), it->area, h, z, w);
  }
  return out;
}

NovikovPolynomial partial_derivative(const NovikovPolynomial& p, Variable var) {
  std::vector<NovikovTerm> out;
  for (auto t : p.terms()) {
    long& e = var == Variable::z ? t.z : t.w;
    if (e == 0) continue;
    t.coeff *= e;
    e -= 1;
    out.push_back(t);
  }
  return NovikovPolynomial(std::move(out));
}

std::vector<Rational> newton_valuations(const std::vector<ValuationTerm>& terms) {
  std::set<long> zs;
  for (const auto& t : terms) zs.insert(t.z);
  if (zs.size() < 2) throw Error(ErrorCode::Degenerate, "fewer than two distinct z exponents; no balancing possible");
  std::set<Rational> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (terms[i].z == terms[j].z) continue;
      Rational v = (terms[i].t - terms[j].t) / Rational(terms[j].z - terms[i].z);
      Rational lo = terms[i].t + terms[i].z * v;
      bool is_min = std::all_of(terms.begin(), terms.end(),
                                [&](const ValuationTerm& t) { return t.t + t.z * v >= lo; });
      if (is_min) out.insert(v);
    }
  }
  return {out.begin(), out.end()};
}

UnitCriticalAnalysis unit_critical_analysis(const NovikovPolynomial& p) {
  const NovikovPolynomial dw = partial_derivative(p, Variable::w);
  if (dw.is_zero()) throw Error(ErrorCode::UnsupportedShape, "d/dw vanishes identically; no w-factor to solve");
  const auto& first = dw.terms().front();
  long wmin = first.w, wmax = first.w;
  for (const auto& t : dw.terms()) {
    if (t.t != first.t || t.z != first.z || t.ec != first.ec) {
      throw Error(ErrorCode::UnsupportedShape, "d/dw does not factor as a monomial times a polynomial in w");
    }
    wmin = std::min(wmin, t.w);
    wmax = std::max(wmax, t.w);
  }
  UnitCriticalAnalysis out;
  std::vector<Rational> f(static_cast<std::size_t>(wmax - wmin + 1), Rational(0));
  for (const auto& t : dw.terms()) f[static_cast<std::size_t>(t.w - wmin)] = t.coeff;
  out.w_polynomial = f;

  // rational roots of f; w = 0 is excluded by construction (f(0) != 0)
  Integer scale = 1;
  for (const auto& c : f) scale = lcm_int(scale, denominator(c));
  std::vector<Integer> zi;
  for (const auto& c : f) zi.push_back(numerator(c * scale));
  std::vector<Rational> roots;
  std::vector<Rational> rest = f;
  if (f.size() > 1) {
    for (const auto& num : positive_divisors(zi.front())) {
      for (const auto& den : positive_divisors(zi.back())) {
        for (int sgn : {1, -1}) {
          Rational r = Rational(num * sgn, den);
          if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
          if (horner(f, r) != 0) continue;
          roots.push_back(r);
          while (rest.size() > 1 && horner(rest, r) == 0) rest = deflate(rest, r);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  out.unanalyzed_degree = static_cast<long>(rest.size()) - 1;
  if (out.unanalyzed_degree > 0) {
    out.warnings.push_back("w-polynomial has " + std::to_string(out.unanalyzed_degree) +
                           " irrational or complex roots that were not analysed");
  }

  const NovikovPolynomial dz = partial_derivative(p, Variable::z);
  for (const auto& w0 : roots) {
    CriticalBranch br{w0, {}, false, false, {}, false};
    // merge by (t, z); the coefficient is a polynomial in e^c
    std::map<std::pair<Rational, long>, std::map<long, Rational>> groups;
    for (const auto& t : dz.terms()) groups[{t.t, t.z}][t.ec] += t.coeff * rpow(w0, t.w);
    for (const auto& [tz, coeffs] : groups) {
      bool live = std::any_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second != 0; });
      if (live) br.dz_terms.push_back({tz.first, tz.second});
    }
    if (br.dz_terms.empty()) {
      br.dz_vanishes = true;
      br.unit_candidate = true;
    } else {
      try {
        br.valuations = newton_valuations(br.dz_terms);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Degenerate) throw;
        br.degenerate = true;
      }
      // distinct z exponents at the minimum, so the residue equation has a nonzero root
      br.unit_candidate = std::find(br.valuations.begin(), br.valuations.end(), Rational(0)) != br.valuations.end();
    }
    out.has_unit_candidate = out.has_unit_candidate || br.unit_candidate;
    out.branches.push_back(std::move(br));
  }
  return out;
}

RingElement evaluate(const NovikovPolynomial& p, const RingElement& z, const RingElement& w) {
  RingElement sum = reduce(0L, z.ring());
  for (const auto& t : p.terms()) sum += reduce(t.coeff, z.ring()) * z.pow(t.z) * w.pow(t.w);
  return sum;
}

std::vector<std::pair<RingElement, RingElement>> residue_critical_points(const NovikovPolynomial& p,
                                                                         const Ring& ring) {
  if (p.levels().size() > 1) {
    throw Error(ErrorCode::NotSingleLevel, "polynomial has " + std::to_string(p.levels().size()) + " t-levels");
  }
  if (!ring.is_finite()) throw Error(ErrorCode::InfiniteRing, "exhaustive search needs a finite ring, got " + ring.name());
  const NovikovPolynomial dz = partial_derivative(p, Variable::z);
  const NovikovPolynomial dw = partial_derivative(p, Variable::w);
  std::vector<std::pair<RingElement, RingElement>> out;
  const auto units = units_of(ring);
  for (const auto& z : units) {
    for (const auto& w : units) {
      if (evaluate(dz, z, w).is_zero() && evaluate(dw, z, w).is_zero()) out.emplace_back(z, w);
    }
  }
  return out;
}

Json to_json(const UnitCriticalAnalysis& a) {
  Json j;
  j["has_unit_candidate"] = a.has_unit_candidate;
  Json f = Json::array();
  for (const auto& c : a.w_polynomial) f.push_back(to_string(c));
  j["w_polynomial"] = f;
  Json brs = Json::array();
  for (const auto& b : a.branches) {
    Json terms = Json::array();
    for (const auto& t : b.dz_terms) terms.push_back(Json{{"t", to_string(t.t)}, {"z", t.z}});
    Json vals = Json::array();
    for (const auto& v : b.valuations) vals.push_back(to_string(v));
    brs.push_back(Json{{"w0", to_string(b.w0)}, {"dz_terms", terms}, {"dz_vanishes", b.dz_vanishes},
                       {"degenerate", b.degenerate}, {"valuations", vals}, {"unit_candidate", b.unit_candidate}});
  }
  j["branches"] = brs;
  j["unanalyzed_degree"] = a.unanalyzed_degree;
  j["warnings"] = a.warnings;
  return j;
}

}  // namespace floer
