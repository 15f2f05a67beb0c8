#pragma once

// Combinatorial model of the quotient of the unstable set by the germ
// relation. The vertex of the rose splits into one point per admissible germ
// (l, r): the labels of the arcs entering and leaving the branch point. The
// induced map acts on germs by tau(l, r) = (last g(l), first g(r)).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solenoidk/substitution.hpp"

namespace solenoidk {

struct Germ {
  EdgeId l;
  EdgeId r;

  friend bool operator==(const Germ&, const Germ&) = default;
  friend auto operator<=>(const Germ&, const Germ&) = default;
};

std::string germ_name(const SubstitutionSystem& system, const Germ& g);

/// tau(l, r) = (last g(l), first g(r)).
Germ germ_map(const SubstitutionSystem& system, const Germ& g);

/// Smallest set containing every interior two-letter factor of every image
/// word and closed under tau; sorted by (l, r) in edge order.
std::vector<Germ> admissible_germs(const SubstitutionSystem& system);

class QuotientPresentation {
 public:
  explicit QuotientPresentation(SubstitutionSystem system);

  const SubstitutionSystem& system() const noexcept { return system_; }
  std::size_t arc_count() const noexcept { return system_.edge_count(); }
  const std::vector<Germ>& germs() const noexcept { return germs_; }
  std::size_t germ_count() const noexcept { return germs_.size(); }

  std::optional<std::size_t> index_of(const Germ& g) const;
  bool is_admissible(const Germ& g) const { return index_of(g).has_value(); }
  /// Index of tau(germ i).
  std::size_t tau(std::size_t i) const { return tau_.at(i); }
  /// tau on an admissible germ; InadmissibleGerm otherwise.
  Germ apply_tau(const Germ& g) const;

  /// Distinct germs sharing exactly one coordinate cannot be separated.
  bool non_separated(std::size_t i, std::size_t j) const;
  std::vector<std::pair<std::size_t, std::size_t>> non_separated_pairs() const;

 private:
  SubstitutionSystem system_;
  std::vector<Germ> germs_;
  std::vector<std::size_t> tau_;
};

/// Checked version of germ_map: InadmissibleGerm unless g is admissible.
Germ germ_map_checked(const QuotientPresentation& q, const Germ& g);

bool is_hausdorff(const SubstitutionSystem& system);
bool is_hausdorff(const QuotientPresentation& q);

/// The star map at the vertex is injective on half-edges, and no image word
/// passes through the vertex in its interior unless the rose is a circle.
bool is_local_homeomorphism(const SubstitutionSystem& system);

/// Least K >= 0 with tau^K constant on the germ set; NoFlattening if none
/// exists within |germs| steps.
std::size_t k0_constant(const QuotientPresentation& q);
std::size_t k0_constant(const SubstitutionSystem& system);

/// The germ all others collapse to under tau^K0.
std::size_t flattened_germ(const QuotientPresentation& q, std::size_t k0);

/// Germ indices lying on tau-cycles.
std::vector<std::size_t> tau_periodic_germs(const QuotientPresentation& q);

/// Quotient is one circle: every edge ends exactly one germ and starts exactly
/// one germ, and following germs visits every edge. Returns the covering
/// degree of the induced map on that circle.
std::optional<Integer> circle_cover_degree(const QuotientPresentation& q);

/// Least N with every edge occurring in g^N(e). Requires a mixing system;
/// NeverCovers past |edges| times the Wielandt bound.
std::size_t covering_time(const SubstitutionSystem& system, EdgeId e);

}  // namespace solenoidk
