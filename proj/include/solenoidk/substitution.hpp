#pragma once

// Pre-solenoids presented as orientation-preserving substitutions on a rose:
// one vertex, one loop per edge, and each edge wrapped affinely over its image
// word.

#include <cstddef>
#include <string>
#include <vector>

#include "solenoidk/abelian.hpp"
#include "solenoidk/error.hpp"

namespace solenoidk {

using EdgeId = std::size_t;
using Word = std::vector<EdgeId>;

class SubstitutionSystem {
 public:
  /// Edge names must be nonempty and distinct, and every image letter must be
  /// a declared edge (UnknownEdge otherwise). Images may be empty here so that
  /// validate() can report them.
  SubstitutionSystem(std::vector<std::string> edges, std::vector<Word> images);

  /// Images as strings: one character per letter when every edge name is a
  /// single character, otherwise whitespace-separated names.
  static SubstitutionSystem from_strings(const std::vector<std::string>& edges,
                                         const std::vector<std::string>& images);

  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& edge_names() const noexcept { return edges_; }
  const std::string& edge_name(EdgeId e) const { return edges_.at(e); }
  EdgeId edge_id(const std::string& name) const;

  const Word& image(EdgeId e) const { return images_.at(e); }
  const std::vector<Word>& images() const noexcept { return images_; }
  EdgeId first_letter(EdgeId e) const { return images_.at(e).front(); }
  EdgeId last_letter(EdgeId e) const { return images_.at(e).back(); }

  bool single_character_names() const noexcept { return single_char_; }
  std::string word_string(const Word& w) const;

  /// g o g as a substitution on the same edges.
  SubstitutionSystem compose(const SubstitutionSystem& inner) const;
  SubstitutionSystem power(unsigned n) const;
  /// Same system with edges renamed/reordered: new edge i is old edge perm[i].
  SubstitutionSystem relabel(const std::vector<EdgeId>& perm) const;

 private:
  std::vector<std::string> edges_;
  std::vector<Word> images_;
  bool single_char_ = true;
};

struct ValidationIssue {
  ErrorCode code;
  EdgeId edge;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const noexcept { return issues.empty(); }
};

/// Structural necessary conditions only: nonempty images, surjectivity and
/// eventual expansion. Passing is not a certificate for the metric axioms.
ValidationReport validate(const SubstitutionSystem& system);
/// Throws the first issue as an Error.
void require_valid(const SubstitutionSystem& system);

/// M(e, f) = number of occurrences of e in the image of f.
IntMatrix substitution_matrix(const SubstitutionSystem& system);

Word iterate_word(const SubstitutionSystem& system, EdgeId e, unsigned n);
/// Letters occurring in g^n(e), without expanding the word.
std::vector<bool> iterate_support(const SubstitutionSystem& system, EdgeId e, unsigned n);

std::size_t wielandt_bound(std::size_t dim);
/// Some power M^n with n <= wielandt_bound is entrywise positive.
bool is_mixing(const SubstitutionSystem& system);
/// Spectral radius of M exceeds 1, decided exactly with a Sturm count.
bool spectral_radius_exceeds_one(const IntMatrix& m);

struct EntropyEnclosure {
  Rational lambda_lo;
  Rational lambda_hi;
  Rational log_lo;
  Rational log_hi;
  /// Midpoint of the log enclosure, for display only.
  std::string decimal;
};

/// log of the Perron eigenvalue of M, bracketed by rationals of width at most
/// max_width. The eigenvalue bracket is certified by a sign change of the
/// square-free part of the characteristic polynomial; the logarithms are
/// directed-rounding bounds.
EntropyEnclosure entropy(const SubstitutionSystem& system, const Rational& max_width);

}  // namespace solenoidk
