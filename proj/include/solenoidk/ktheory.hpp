#pragma once

// K-groups of the quotient from its boundary complex, the wrong-way maps, the
// stable algebra as a stationary limit, and the Ruelle algebra through the
// Pimsner six-term sequence.

#include <optional>
#include <string>
#include <vector>

#include "solenoidk/germ_quotient.hpp"

namespace solenoidk {

/// d: Z^germs -> Z^arcs, d(l, r) = e_r - e_l; columns follow q.germs().
IntMatrix boundary_matrix(const QuotientPresentation& q);

struct KGroups {
  /// ker d, free.
  FgGroup k0;
  /// Columns: Hermite basis of ker d in germ coordinates.
  IntMatrix k0_basis;
  /// coker d in canonical form, with the change of coordinates from Z^arcs.
  CanonicalForm k1;
};

KGroups quotient_ktheory(const QuotientPresentation& q);

enum class WrongWayProvenance { UserSupplied, CircleCoverRule, RoseHeuristic };

std::string provenance_name(WrongWayProvenance p);

struct WrongWayData {
  /// On the K0 basis (possibly re-chosen by the rule, see k0_basis).
  IntMatrix a0;
  /// On the canonical generators of K1.
  IntMatrix a1;
  WrongWayProvenance provenance = WrongWayProvenance::UserSupplied;
  /// Basis of ker d the matrix a0 is written in.
  IntMatrix k0_basis;
  std::string note;
};

/// User matrices when given (both or neither), then the circle rule, then the
/// rose rule; NeedUserMatrices when nothing applies.
WrongWayData wrongway_matrices(const QuotientPresentation& q, const KGroups& k,
                               const std::optional<IntMatrix>& user_a0 = std::nullopt,
                               const std::optional<IntMatrix>& user_a1 = std::nullopt);

/// Hausdorff quotient that is one circle covered d times: A0 = (d), A1 = (1).
std::optional<WrongWayData> circle_cover_rule(const QuotientPresentation& q, const KGroups& k);
/// rank K0 = #edges, K1 = Z and the incoming-edge map restricts to an
/// isomorphism ker d -> Z^edges: A0 = substitution matrix in the pulled-back
/// basis, A1 = (1). On rejection, why receives the reason.
std::optional<WrongWayData> rose_heuristic(const QuotientPresentation& q, const KGroups& k,
                                           std::string* why = nullptr);

struct StableKTheory {
  ColimitGroup k0;
  ColimitGroup k1;
};

StableKTheory stable_ktheory(const KGroups& k, const WrongWayData& w);

struct PimsnerResult {
  ColimitGroup coker0;  // coker(1 - A0) on K^0
  ColimitGroup ker0;    // ker(1 - A0) on K^0
  ColimitGroup coker1;  // coker(1 - A1) on K^1
  ColimitGroup ker1;    // ker(1 - A1) on K^1
  /// Present when the extension splits.
  std::optional<ColimitGroup> k0;
  std::optional<ColimitGroup> k1;
  bool split0 = false;
  bool split1 = false;
  std::size_t rank0 = 0;
  std::size_t rank1 = 0;
  bool free_case_dual = false;

  /// Assembled name, or "ext(<quotient> by <sub>)" when unassembled.
  std::string k0_name() const;
  std::string k1_name() const;
};

/// K0(O) is an extension of ker(1 - A1 | K^1) by coker(1 - A0 | K^0), and K1(O)
/// of ker(1 - A0 | K^0) by coker(1 - A1 | K^1). A direct sum is claimed only
/// when the quotient piece is free of finite rank. Throws IdentityViolation if
/// the rank bookkeeping fails.
PimsnerResult pimsner(const ColimitGroup& k0, const IntMatrix& a0, const ColimitGroup& k1, const IntMatrix& a1);

PimsnerResult ruelle_ktheory(const KGroups& k, const WrongWayData& w);
/// Same pieces on the transposed matrices; NotFree unless K^0 and K^1 are free.
PimsnerResult unstable_ruelle_ktheory(const KGroups& k, const WrongWayData& w);

/// The p/q solenoid family: both K-groups colim(Z, x q), with wrong-way map p in
/// degree zero and 1 in degree one. Reports the pieces under the sequence's
/// orientation and under the alternative placement of the torsion piece in K1.
struct PQFamilyReport {
  Integer p;
  Integer q;
  PimsnerResult convention;
  std::string convention_k0;
  std::string convention_k1;
  std::string alternative_k0;
  std::string alternative_k1;
  bool non_normative = true;
};

PQFamilyReport pq_family(const Integer& p, const Integer& q);

}  // namespace solenoidk
