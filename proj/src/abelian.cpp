#include "floer/abelian.hpp"

#include <algorithm>
#include <set>

#include "floer/error.hpp"

namespace floer {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols_if_empty) {
  const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix: row " + std::to_string(r) + " has " +
                                                    std::to_string(rows[r].size()) + " entries, expected " +
                                                    std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<std::vector<Integer>> IntMatrix::to_rows() const {
  std::vector<std::vector<Integer>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
  if (rows_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "hconcat with different row counts");
  IntMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimensions");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols), 0};
  IntMatrix& d = s.D;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    bool found_any = true;
    while (true) {
      // least |entry| in the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          if (!pivot || abs(d(i, j)) < abs(d(pivot->first, pivot->second))) pivot = {{i, j}};
        }
      if (!pivot) {
        found_any = false;
        break;
      }
      d.swap_rows(t, pivot->first);
      s.U.swap_rows(t, pivot->first);
      d.swap_cols(t, pivot->second);
      s.V.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Integer q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Integer q = d(t, j) / d(t, t);
        d.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and start over
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      d.add_row_multiple(t, *offending, 1);
      s.U.add_row_multiple(t, *offending, 1);
    }
    if (!found_any) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
    s.rank = t + 1;
  }
  return s;
}

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  std::vector<std::vector<Integer>> basis;
  for (std::size_t k = s.rank; k < m.cols(); ++k) basis.push_back(s.V.column(k));
  return basis;
}

// ---------------------------------------------------------------------------
// Linear systems over rings

std::vector<RingElement> reduce_vector(std::span<const Integer> v, const Ring& ring) {
  std::vector<RingElement> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(reduce(x, ring));
  return out;
}

std::vector<RingElement> reduce_vector(std::span<const Rational> v, const Ring& ring) {
  std::vector<RingElement> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(reduce(x, ring));
  return out;
}

namespace {

// Solves M x = b over Z (integral b) or Q (rational b) via the Smith form.
std::optional<std::vector<Rational>> solve_via_smith(const IntMatrix& m, const std::vector<Rational>& b,
                                                     bool integral) {
  const SmithForm s = smith_normal_form(m);
  std::vector<Rational> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.rows(); ++k) c[i] += Rational(s.U(i, k)) * b[k];

  std::vector<Rational> y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < s.rank) {
      y[i] = c[i] / Rational(s.D(i, i));
      if (integral && denominator(y[i]) != 1) return std::nullopt;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t k = 0; k < s.rank; ++k) x[i] += Rational(s.V(i, k)) * y[k];
  return x;
}

IntMatrix modulus_augmented(const IntMatrix& m, const Integer& n) {
  IntMatrix nI = IntMatrix::identity(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) nI(i, i) = n;
  return m.hconcat(nI);
}

}  // namespace

std::optional<std::vector<RingElement>> solve_linear(const IntMatrix& m, std::span<const RingElement> b,
                                                     const Ring& ring) {
  if (b.size() != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_linear: matrix has " + std::to_string(m.rows()) +
                                                  " rows but right-hand side has " + std::to_string(b.size()));
  }
  std::vector<Rational> rhs;
  rhs.reserve(b.size());
  for (const auto& x : b) rhs.push_back(reduce(x.value(), ring).value());

  std::optional<std::vector<Rational>> x;
  switch (ring.kind()) {
    case Ring::Kind::Integers: x = solve_via_smith(m, rhs, true); break;
    case Ring::Kind::Rationals: x = solve_via_smith(m, rhs, false); break;
    case Ring::Kind::IntegersMod:
    case Ring::Kind::PrimeField: {
      auto full = solve_via_smith(modulus_augmented(m, ring.modulus()), rhs, true);
      if (full) {
        full->resize(m.cols());
        x = std::move(full);
      }
      break;
    }
  }
  if (!x) return std::nullopt;
  return reduce_vector(std::span<const Rational>(*x), ring);
}

std::optional<std::vector<RingElement>> solve_linear(const IntMatrix& m, std::span<const Rational> b,
                                                     const Ring& ring) {
  auto reduced = reduce_vector(b, ring);
  return solve_linear(m, std::span<const RingElement>(reduced), ring);
}

std::vector<std::vector<RingElement>> kernel_over_ring(const IntMatrix& m, const Ring& ring) {
  std::vector<std::vector<Integer>> basis;
  if (ring.is_finite()) {
    for (auto v : integer_kernel(modulus_augmented(m, ring.modulus()))) {
      v.resize(m.cols());
      basis.push_back(std::move(v));
    }
  } else {
    basis = integer_kernel(m);
  }
  std::vector<std::vector<RingElement>> out;
  for (const auto& v : basis) {
    auto r = reduce_vector(std::span<const Integer>(v), ring);
    if (std::any_of(r.begin(), r.end(), [](const RingElement& e) { return !e.is_zero(); })) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Groups

FgAbelianGroup::FgAbelianGroup(std::vector<std::string> generator_labels, IntMatrix relations)
    : labels_(std::move(generator_labels)), relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error(ErrorCode::ValidationError, "duplicate generator label '" + l + "'");
  }
  if (relations_.rows() > 0 && relations_.cols() != labels_.size()) {
    throw Error(ErrorCode::ValidationError, "relation rows have " + std::to_string(relations_.cols()) +
                                                " entries for " + std::to_string(labels_.size()) + " generators");
  }
  if (relations_.rows() == 0) relations_ = IntMatrix(0, labels_.size());

  const SmithForm s = smith_normal_form(relations_);
  free_rank_ = labels_.size() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) > 1) torsion_.push_back(s.D(i, i));
}

std::optional<std::size_t> FgAbelianGroup::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

GroupStructure group_structure(const FgAbelianGroup& g) { return {g.free_rank(), g.torsion()}; }

// ---------------------------------------------------------------------------
// Elements

GroupElement::GroupElement(GroupPtr group, std::vector<RingElement> coords)
    : group_(std::move(group)), ring_(coords.empty() ? Ring::integers() : coords.front().ring()),
      coords_(std::move(coords)) {
  if (coords_.size() != group_->generator_count()) {
    throw Error(ErrorCode::DimensionMismatch, "element has " + std::to_string(coords_.size()) +
                                                  " coordinates for " +
                                                  std::to_string(group_->generator_count()) + " generators");
  }
}

GroupElement::GroupElement(GroupPtr group, std::span<const Integer> coords, const Ring& ring)
    : GroupElement(std::move(group), reduce_vector(coords, ring)) {
  ring_ = ring;
}

GroupElement GroupElement::zero(GroupPtr group, const Ring& ring) {
  std::vector<Integer> z(group->generator_count());
  return GroupElement(std::move(group), std::span<const Integer>(z), ring);
}

GroupElement GroupElement::over(const Ring& ring) const {
  if (ring == ring_) return *this;
  if (ring_.kind() != Ring::Kind::Integers) {
    throw std::logic_error("change of coefficients is only defined from Z");
  }
  std::vector<RingElement> c;
  for (const auto& x : coords_) c.push_back(reduce(x.value(), ring));
  GroupElement out(group_, std::move(c));
  out.ring_ = ring;
  return out;
}

bool GroupElement::is_zero() const {
  if (std::all_of(coords_.begin(), coords_.end(), [](const RingElement& e) { return e.is_zero(); })) return true;
  return solve_linear(group_->relations().transpose(), std::span<const RingElement>(coords_), ring_).has_value();
}

bool GroupElement::equals(const GroupElement& other) const {
  if (*group_ != *other.group_) return false;
  return (*this - other).is_zero();
}

GroupElement GroupElement::operator-() const {
  GroupElement out = *this;
  for (auto& x : out.coords_) x = -x;
  return out;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  if (a.coords_.size() != b.coords_.size()) throw Error(ErrorCode::DimensionMismatch, "adding elements of different groups");
  GroupElement out = a;
  for (std::size_t i = 0; i < out.coords_.size(); ++i) out.coords_[i] += b.coords_[i];
  return out;
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

GroupElement operator*(const RingElement& s, const GroupElement& x) {
  GroupElement out = x;
  for (auto& c : out.coords_) c = s * c;
  return out;
}

std::string GroupElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const auto& c = coords_[i];
    if (c.is_zero()) continue;
    std::string coef = c.to_string();
    bool negative = !coef.empty() && coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (coef != "1") out += coef + "*";
    out += group_->labels()[i];
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

namespace {

bool in_relation_lattice(const FgAbelianGroup& g, std::span<const Integer> v) {
  auto r = reduce_vector(v, Ring::integers());
  if (std::all_of(r.begin(), r.end(), [](const RingElement& e) { return e.is_zero(); })) return true;
  return solve_linear(g.relations().transpose(), std::span<const RingElement>(r), Ring::integers()).has_value();
}

std::vector<Integer> mat_vec(const IntMatrix& m, std::span<const Integer> v) {
  std::vector<Integer> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace

GroupHom::GroupHom(GroupPtr source, GroupPtr target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 && matrix_.cols() == 0) matrix_ = IntMatrix(target_->generator_count(), source_->generator_count());
  if (matrix_.rows() != target_->generator_count() || matrix_.cols() != source_->generator_count()) {
    throw Error(ErrorCode::ValidationError,
                "hom matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                    ", expected " + std::to_string(target_->generator_count()) + "x" +
                    std::to_string(source_->generator_count()) + " (rows = target generators)");
  }
  for (std::size_t r = 0; r < source_->relations().rows(); ++r) {
    auto rel = source_->relations().row(r);
    if (!in_relation_lattice(*target_, mat_vec(matrix_, rel))) {
      throw Error(ErrorCode::ValidationError, "hom does not respect source relation " + std::to_string(r));
    }
  }
}

GroupElement GroupHom::apply(const GroupElement& x) const {
  const Ring& ring = x.ring();
  std::vector<RingElement> out(matrix_.rows(), reduce(0L, ring));
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    for (std::size_t j = 0; j < matrix_.cols(); ++j) out[i] += reduce(matrix_(i, j), ring) * x.coords()[j];
  if (out.empty()) return GroupElement::zero(target_, ring);
  return GroupElement(target_, std::move(out));
}

std::optional<GroupElement> GroupHom::lift(const GroupElement& y) const {
  const IntMatrix system = matrix_.hconcat(target_->relations().transpose());
  auto sol = solve_linear(system, std::span<const RingElement>(y.coords()), y.ring());
  if (!sol) return std::nullopt;
  sol->resize(source_->generator_count(), reduce(0L, y.ring()));
  if (sol->empty()) return GroupElement::zero(source_, y.ring());
  return GroupElement(source_, std::move(*sol));
}

std::vector<GroupElement> GroupHom::kernel(const Ring& ring) const {
  const IntMatrix system = matrix_.hconcat(target_->relations().transpose());
  std::vector<GroupElement> out;
  for (auto v : kernel_over_ring(system, ring)) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(source_->generator_count()), v.end());
    GroupElement e(source_, std::move(v));
    if (!e.is_zero()) out.push_back(std::move(e));
  }
  return out;
}

bool composes_to_zero(const GroupHom& f, const GroupHom& g) {
  const IntMatrix gf = g.matrix() * f.matrix();
  for (std::size_t c = 0; c < gf.cols(); ++c) {
    if (!in_relation_lattice(*g.target(), gf.column(c))) return false;
  }
  return true;
}

bool is_exact_at_middle(const GroupHom& f, const GroupHom& g) {
  if (!composes_to_zero(f, g)) return false;
  const std::size_t middle = g.source()->generator_count();
  const IntMatrix kernel_system = g.matrix().hconcat(g.target()->relations().transpose());
  const IntMatrix image_system = f.matrix().hconcat(f.target()->relations().transpose());
  for (auto v : integer_kernel(kernel_system)) {
    v.resize(middle);
    auto r = reduce_vector(std::span<const Integer>(v), Ring::integers());
    if (!solve_linear(image_system, std::span<const RingElement>(r), Ring::integers())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Intersection pairing

IntersectionForm::IntersectionForm(GroupPtr group, IntMatrix matrix)
    : group_(std::move(group)), matrix_(std::move(matrix)) {
  const std::size_t n = group_->generator_count();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw Error(ErrorCode::ValidationError, "intersection form must be " + std::to_string(n) + "x" +
                                                std::to_string(n));
  }
  if (matrix_ != matrix_.transpose()) throw Error(ErrorCode::ValidationError, "intersection form is not symmetric");
  for (std::size_t r = 0; r < group_->relations().rows(); ++r) {
    auto image = mat_vec(matrix_, group_->relations().row(r));
    if (std::any_of(image.begin(), image.end(), [](const Integer& x) { return x != 0; })) {
      throw Error(ErrorCode::ValidationError, "intersection form does not vanish on relation " + std::to_string(r));
    }
  }
}

RingElement pair(const IntersectionForm& form, const GroupElement& x, const GroupElement& y) {
  if (!form.group()->is_free()) {
    throw Error(ErrorCode::TorsionGroup, "intersection pairing needs a torsion-free H2(X)");
  }
  if (*x.group() != *form.group() || *y.group() != *form.group()) {
    throw Error(ErrorCode::DimensionMismatch, "pairing elements of a different group");
  }
  if (!(x.ring() == y.ring())) throw Error(ErrorCode::DimensionMismatch, "pairing elements over different rings");
  const Ring& ring = x.ring();
  RingElement acc = reduce(0L, ring);
  const auto& m = form.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      acc += x.coords()[i] * reduce(m(i, j), ring) * y.coords()[j];
    }
  return acc;
}

}  // namespace floer
