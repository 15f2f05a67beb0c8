#pragma once

// Exact integer linear algebra and finitely generated abelian groups.
//
// Matrices act on column vectors. A group is always carried together with a
// generating set: FgGroup uses the canonical generators (torsion generators in
// divisibility order, then free generators), and Presentation is an arbitrary
// Z^n / (column span of a relation matrix).

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace solenoidk {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntMatrix scalar(long value);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  IntMatrix transpose() const;
  IntMatrix power(unsigned exponent) const;
  /// Rows [r0, r1) and columns [c0, c1).
  IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
  IntMatrix hconcat(const IntMatrix& right) const;
  IntMatrix vconcat(const IntMatrix& below) const;

  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_nonnegative() const;
  bool is_positive() const;

  std::size_t rank() const;
  /// Bareiss fraction-free elimination; requires a square matrix.
  Integer determinant() const;
  bool is_unimodular() const;

  IntVector apply(const IntVector& v) const;

  /// "[[2,1],[1,1]]"
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

/// A = U * S * V with U, V unimodular and S diagonal with d1 | d2 | ... >= 0.
/// P = U^{-1} and Q = V^{-1} are kept as well, so P * A * Q = S.
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix P;
  IntMatrix Q;
  std::size_t rank = 0;

  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form: echelon rows, positive pivots, entries above
/// each pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

/// Columns form a basis of {x : A x = 0}, in Hermite-reduced order.
IntMatrix kernel_basis(const IntMatrix& a);
std::size_t kernel_rank(const IntMatrix& a);

/// Some integer solution of A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Canonical form Z^r + Z/d1 + ... + Z/dk with each di >= 2 and d1 | d2 | ...
/// Canonical generators are ordered torsion first, then free.
class FgGroup {
 public:
  FgGroup() = default;
  FgGroup(std::size_t free_rank, std::vector<Integer> torsion);

  static FgGroup free(std::size_t rank) { return FgGroup(rank, {}); }
  static FgGroup trivial() { return FgGroup(); }
  static FgGroup cyclic(const Integer& order);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }
  std::size_t generator_count() const noexcept { return torsion_.size() + free_rank_; }
  std::size_t torsion_count() const noexcept { return torsion_.size(); }

  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_free() const noexcept { return torsion_.empty(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  /// Order of the group when finite.
  std::optional<Integer> order() const;

  /// n x k relation matrix with di at (i, i); free generators carry no relation.
  IntMatrix relations() const;
  /// Reduces torsion coordinates into [0, di).
  IntVector reduce(IntVector v) const;
  bool is_zero(const IntVector& v) const;
  /// h is a well-defined endomorphism of this group on canonical generators.
  bool admits_endomorphism(const IntMatrix& h) const;

  /// "0", "Z", "Z^2", "Z/2", "Z^2 ⊕ Z/3"
  std::string to_string() const;

  friend bool operator==(const FgGroup& a, const FgGroup& b) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

FgGroup cokernel(const IntMatrix& a);

/// Z^generators / column span of relations.
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations;

  static Presentation of(const FgGroup& g);
};

/// Canonical coordinates for a presentation: x in Z^n maps to to_canonical * x
/// (then reduce); canonical generator j is column j of from_canonical.
struct CanonicalForm {
  FgGroup group;
  IntMatrix to_canonical;
  IntMatrix from_canonical;
};

CanonicalForm canonicalize(const Presentation& p);

/// Structure of the subgroup of Z^n / col(relations) generated by the
/// columns of gens.
FgGroup subgroup_structure(const IntMatrix& gens, const IntMatrix& relations);

/// Presentation of ker(f) for f: G -> H, both given by presentations, together
/// with the kernel generators written in G's generators.
struct KernelPresentation {
  Presentation presentation;
  IntMatrix generators;
};
KernelPresentation kernel_of(const IntMatrix& f, const Presentation& source,
                             const Presentation& target);

/// Direct limit of a finitely generated group under one endomorphism.
///
/// The torsion subgroup of the limit is the eventual image of the base's
/// torsion; the torsion-free quotient is the limit of Z^r under the induced
/// map. The limit splits as their direct sum (the finite summand has no
/// extensions by countable torsion-free groups), which is what the name uses.
class ColimitGroup {
 public:
  ColimitGroup() = default;

  const FgGroup& base() const noexcept { return base_; }
  const IntMatrix& endo() const noexcept { return endo_; }
  const FgGroup& torsion_limit() const noexcept { return torsion_limit_; }
  /// Rational rank of the limit.
  std::size_t free_rank() const noexcept { return free_rank_; }
  /// Recognized name, empty when the limit is only known structurally.
  const std::optional<std::string>& pretty() const noexcept { return pretty_; }
  /// Index after which ker(h^m) stops growing.
  std::size_t stabilization_index() const noexcept { return stabilization_; }

  bool is_finitely_generated_free() const noexcept { return fg_free_; }
  /// pretty() when recognized, otherwise "colim(<base>, <endo>)".
  std::string name() const;

  friend ColimitGroup colimit(const FgGroup& base, const IntMatrix& h);

 private:
  FgGroup base_;
  IntMatrix endo_;
  FgGroup torsion_limit_;
  std::size_t free_rank_ = 0;
  std::size_t stabilization_ = 0;
  bool fg_free_ = false;
  std::optional<std::string> pretty_;
};

/// Throws IncompatibleEndo when h is not an endomorphism of base.
ColimitGroup colimit(const FgGroup& base, const IntMatrix& h);
/// The group itself, as a limit under the identity.
ColimitGroup colimit(const FgGroup& base);
ColimitGroup colimit(const Presentation& base, const IntMatrix& h);

/// (v at stage j) == (w at stage k) in the limit.
bool colim_element_eq(const ColimitGroup& g, const IntVector& v, std::size_t j,
                      const IntVector& w, std::size_t k);

/// Kernel and cokernel of the map induced on the limit by B, which must commute
/// with the endomorphism on the base. Computed stagewise; direct limits are exact.
std::pair<ColimitGroup, ColimitGroup> induced_ker_coker(const ColimitGroup& g,
                                                        const IntMatrix& b);

ColimitGroup direct_sum(const ColimitGroup& a, const ColimitGroup& b);

}  // namespace solenoidk
