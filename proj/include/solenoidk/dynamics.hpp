#pragma once

// Exact piecewise-linear dynamics. Each edge is a copy of [0, 1] and g maps
// an edge affinely onto its image word, one subinterval of length 1/|g(e)| per
// letter. Points of the rose Y have a single vertex; points of the quotient
// replace that vertex by the admissible germs.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "solenoidk/germ_quotient.hpp"

namespace solenoidk {

struct Interior {
  EdgeId edge;
  Rational t;

  friend bool operator==(const Interior& a, const Interior& b) { return a.edge == b.edge && a.t == b.t; }
};

struct GermPoint {
  Germ germ;

  friend bool operator==(const GermPoint&, const GermPoint&) = default;
};

struct Vertex {
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Point of the quotient.
using PLPoint = std::variant<Interior, GermPoint>;
/// Point of the rose.
using YPoint = std::variant<Vertex, Interior>;

std::string point_string(const SubstitutionSystem& system, const PLPoint& p);
std::string point_string(const SubstitutionSystem& system, const YPoint& p);

/// Interior(e, t) must have 0 < t < 1; germ points must be admissible.
void require_point(const QuotientPresentation& q, const PLPoint& p);

/// g-tilde on the quotient.
PLPoint apply_g(const SubstitutionSystem& system, const PLPoint& p);
PLPoint apply_g(const SubstitutionSystem& system, const PLPoint& p, std::size_t n);
/// g on the rose.
YPoint apply_g(const SubstitutionSystem& system, const YPoint& p);
YPoint apply_g(const SubstitutionSystem& system, const YPoint& p, std::size_t n);

/// r: germs collapse to the vertex, arc points are unchanged.
YPoint r_map(const PLPoint& p);

/// s: lift to the quotient and push forward k0 times; the vertex goes to the
/// germ every germ flattens to.
class ShiftEquivalence {
 public:
  explicit ShiftEquivalence(const QuotientPresentation& q);

  std::size_t k0() const noexcept { return k0_; }
  const Germ& flattened() const noexcept { return flat_; }
  PLPoint s_map(const YPoint& y) const;

 private:
  const QuotientPresentation* q_;
  std::size_t k0_;
  Germ flat_;
};

struct IdentityCheck {
  std::string identity;
  std::size_t points_checked = 0;
};

struct ShiftEquivalenceReport {
  std::size_t k0 = 0;
  std::vector<IdentityCheck> identities;
};

/// Checks r g~ = g r, s g = g~ s, r s = g^K0 and s r = g~^K0 on every germ, the
/// vertex and sample_count seeded random interior points. IdentityViolation
/// names the identity and the point; NoFlattening propagates from k0_constant.
ShiftEquivalenceReport shift_equivalence_check(const QuotientPresentation& q, std::size_t sample_count,
                                               std::uint64_t seed);

Interior random_interior(const SubstitutionSystem& system, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Periodic points

/// Fixed points of g~^n by the closed-form count.
Integer fix_count(const QuotientPresentation& q, std::size_t n);
/// Fixed points of g~^n found by solving each linear branch of g^n exactly and
/// checking the germ images on expanded words.
Integer fix_count_oracle(const SubstitutionSystem& system, std::size_t n);
/// Fixed points of g^n on the rose, the vertex counted once.
Integer fix_count_presolenoid(const SubstitutionSystem& system, std::size_t n);

struct RationalFunction {
  std::vector<Rational> numerator;
  std::vector<Rational> denominator;

  std::string to_string() const;
};

struct ZetaSeries {
  std::vector<Integer> counts;
  /// Power series coefficients of the zeta function, from t^0.
  std::vector<Rational> series;
  /// A matching ratio of polynomials of degree at most |edges|, when the data
  /// determine one with at least one spare coefficient. A guess only.
  std::optional<RationalFunction> guess;
};

ZetaSeries zeta_series(const QuotientPresentation& q, std::size_t n_max);

// ---------------------------------------------------------------------------
// Wieler axioms

/// Path metric on the rose with unit edges.
Rational rose_distance(const YPoint& x, const YPoint& y);

struct WielerWitness {
  std::size_t k = 0;
  Rational gamma;
  Rational beta;
};

struct WielerSearch {
  std::optional<WielerWitness> witness;
  /// Description of the last failing sample when no witness was found.
  std::string counterexample;
  std::size_t samples_per_candidate = 0;
};

/// Searches K <= k_max, gamma and beta on fixed grids. Sampled pairs are
/// checked against Axiom 1; sampled closed balls are pushed through g with
/// exact interval arithmetic for Axiom 2. Evidence, not proof.
WielerSearch wieler_axiom_witness(const SubstitutionSystem& system, std::size_t k_max, std::size_t sample_count,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Forward orbit expansiveness

/// Level-k cover of the quotient: the open cells on which g^k is affine onto
/// one edge, a neighbourhood of each interior cell endpoint reaching to the
/// middles of its two cells, and for each germ (l, r) the germ together with
/// the last half cell of l and the first half cell of r.
class CoverSpec {
 public:
  CoverSpec(const QuotientPresentation& q, std::size_t level);

  std::size_t level() const noexcept { return level_; }
  std::size_t element_count() const noexcept { return element_count_; }
  /// Sorted ids of the cover elements containing p.
  std::vector<std::size_t> elements_containing(const PLPoint& p) const;
  /// Cell endpoints of edge e, from 0 to 1.
  const std::vector<Rational>& partition(EdgeId e) const { return partition_.at(e); }

 private:
  const QuotientPresentation* q_;
  std::size_t level_;
  std::vector<std::vector<Rational>> partition_;
  std::vector<std::size_t> cell_offset_;
  std::vector<std::size_t> junction_offset_;
  std::size_t germ_offset_ = 0;
  std::size_t element_count_ = 0;
};

struct SeparationReport {
  std::size_t level = 0;
  std::size_t n_max = 0;
  std::size_t grid_density = 0;
  std::size_t point_count = 0;
  std::size_t pair_count = 0;
  std::size_t max_separation_time = 0;
  /// times[i * point_count + j] for i < j; n_max + 1 when unseparated.
  std::vector<std::size_t> times;
  std::vector<std::pair<PLPoint, PLPoint>> unseparated;

  bool all_separated() const noexcept { return unseparated.empty(); }
  std::size_t time(std::size_t i, std::size_t j) const { return times.at(i * point_count + j); }
};

/// Grid points t = j / grid_density on every edge, then every germ.
std::vector<PLPoint> expansiveness_grid(const QuotientPresentation& q, std::size_t grid_density);

/// Least n <= n_max at which g~^n separates each distinct grid pair. Pairs are
/// split across worker threads; the result does not depend on their number.
SeparationReport forward_expansive_witness(const QuotientPresentation& q, const CoverSpec& cover,
                                           std::size_t n_max, std::size_t grid_density);

// ---------------------------------------------------------------------------
// Solenoid points

/// Truncated backward orbit x_0, x_1, ..., x_m on the rose with g(x_{i+1}) = x_i.
struct SolenoidPoint {
  std::vector<YPoint> coords;

  std::size_t depth() const noexcept { return coords.empty() ? 0 : coords.size() - 1; }
};

void require_solenoid_point(const SubstitutionSystem& system, const SolenoidPoint& x);
/// (g(x_0), x_0, x_1, ...)
SolenoidPoint solenoid_apply_phi(const SubstitutionSystem& system, const SolenoidPoint& x);
/// Drops the first coordinate.
SolenoidPoint solenoid_shift(const SolenoidPoint& x);
/// Quotient point of x read off from x_{K0}; DepthTooShallow below K0.
PLPoint p_map(const ShiftEquivalence& se, const SolenoidPoint& x);

/// Backward orbit of a random point; about half the samples have the vertex
/// among their coordinates.
SolenoidPoint random_solenoid_point(const SubstitutionSystem& system, std::size_t depth, std::mt19937_64& rng);

}  // namespace solenoidk
