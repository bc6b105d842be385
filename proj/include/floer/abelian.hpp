#pragma once

// Finitely generated abelian groups given by generators and integer relations,
// and the exact linear algebra behind them (Smith normal form, lifts, kernels).

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "floer/rational.hpp"
#include "floer/rings.hpp"

namespace floer {

/// Dense row-major integer matrix. Dimensions here are small (<= ~10).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  /// Throws DimensionMismatch on ragged input.
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> row(std::size_t r) const;
  std::vector<Integer> column(std::size_t c) const;
  std::vector<std::vector<Integer>> to_rows() const;

  IntMatrix transpose() const;
  /// [this | other]; row counts must agree.
  IntMatrix hconcat(const IntMatrix& other) const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix D;  // diagonal, d1 | d2 | ..., nonnegative
  IntMatrix V;  // unimodular, cols x cols
  std::size_t rank = 0;  // number of nonzero diagonal entries
};

/// D = U * M * V. Pivot: the nonzero entry of least absolute value, first in
/// row-major order, so U and V are reproducible.
SmithForm smith_normal_form(const IntMatrix& m);

/// A Z-basis of {x in Z^cols : M x = 0}.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& m);

/// Some x with M x = b over the ring, or nullopt when none exists. Entries of b
/// are reduced into the ring first. Throws DimensionMismatch.
std::optional<std::vector<RingElement>> solve_linear(const IntMatrix& m, std::span<const Rational> b,
                                                     const Ring& ring);
std::optional<std::vector<RingElement>> solve_linear(const IntMatrix& m, std::span<const RingElement> b,
                                                     const Ring& ring);

/// Generators of {x : M x = 0} over the ring (a basis over Z, Q and F_p).
std::vector<std::vector<RingElement>> kernel_over_ring(const IntMatrix& m, const Ring& ring);

std::vector<RingElement> reduce_vector(std::span<const Integer> v, const Ring& ring);
std::vector<RingElement> reduce_vector(std::span<const Rational> v, const Ring& ring);

class FgAbelianGroup {
 public:
  /// relations: one row per relation, one column per generator.
  /// Throws ValidationError on duplicate labels or mis-sized relations.
  FgAbelianGroup(std::vector<std::string> generator_labels, IntMatrix relations);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t generator_count() const { return labels_.size(); }
  const IntMatrix& relations() const { return relations_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool is_free() const { return torsion_.empty(); }

  /// Same generator labels and relations.
  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.labels_ == b.labels_ && a.relations_ == b.relations_;
  }

 private:
  std::vector<std::string> labels_;
  IntMatrix relations_;
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

using GroupPtr = std::shared_ptr<const FgAbelianGroup>;

struct GroupStructure {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
};

GroupStructure group_structure(const FgAbelianGroup& g);

/// An element of G (x) R, written in the generators of G.
class GroupElement {
 public:
  GroupElement(GroupPtr group, std::vector<RingElement> coords);
  GroupElement(GroupPtr group, std::span<const Integer> coords, const Ring& ring);
  static GroupElement zero(GroupPtr group, const Ring& ring);

  const GroupPtr& group() const { return group_; }
  const Ring& ring() const { return ring_; }
  const std::vector<RingElement>& coords() const { return coords_; }

  /// Change of coefficients; only from Z, or to the same ring.
  GroupElement over(const Ring& ring) const;

  bool is_zero() const;
  /// Equality in G (x) R: the difference lies in the span of the relations.
  bool equals(const GroupElement& other) const;

  GroupElement operator-() const;
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator*(const RingElement& s, const GroupElement& x);

  /// "4*H + 2*E1" style; "0" for the zero vector.
  std::string to_string() const;

 private:
  GroupPtr group_;
  Ring ring_;
  std::vector<RingElement> coords_;
};

class GroupHom {
 public:
  /// matrix: rows = target generators, columns = source generators.
  /// Throws ValidationError unless every source relation lands in the
  /// target's relation lattice.
  GroupHom(GroupPtr source, GroupPtr target, IntMatrix matrix);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  GroupElement apply(const GroupElement& x) const;

  /// Some preimage of y over y's ring (nullopt when y is not in the image).
  std::optional<GroupElement> lift(const GroupElement& y) const;

  /// Generators of the kernel of the hom over the ring.
  std::vector<GroupElement> kernel(const Ring& ring) const;

 private:
  GroupPtr source_;
  GroupPtr target_;
  IntMatrix matrix_;
};

/// Checks that g o f = 0 over Z.
bool composes_to_zero(const GroupHom& f, const GroupHom& g);
/// Checks image(f) = kernel(g) over Z.
bool is_exact_at_middle(const GroupHom& f, const GroupHom& g);

class IntersectionForm {
 public:
  /// Throws ValidationError for non-symmetric or mis-sized matrices, or when
  /// the form does not vanish on relations.
  IntersectionForm(GroupPtr group, IntMatrix matrix);

  const GroupPtr& group() const { return group_; }
  const IntMatrix& matrix() const { return matrix_; }

 private:
  GroupPtr group_;
  IntMatrix matrix_;
};

/// x^T F y reduced into the ring of x (x and y must share group and ring).
/// Throws TorsionGroup when the group has torsion.
RingElement pair(const IntersectionForm& form, const GroupElement& x, const GroupElement& y);

}  // namespace floer
