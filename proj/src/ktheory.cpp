#include "solenoidk/ktheory.hpp"

#include <tuple>

namespace solenoidk {

namespace {

IntMatrix inverse_unimodular(const IntMatrix& a) {
  const SmithForm f = smith_normal_form(a);
  return f.Q * f.P;
}

IntMatrix one_minus(const IntMatrix& a) { return IntMatrix::identity(a.rows()) - a; }

void require_square(const IntMatrix& m, std::size_t n, const std::string& what) {
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorCode::InvalidArgument, what + " must be " + std::to_string(n) + "x" + std::to_string(n) +
                                                ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

IntMatrix boundary_matrix(const QuotientPresentation& q) {
  IntMatrix d(q.arc_count(), q.germ_count());
  for (std::size_t j = 0; j < q.germ_count(); ++j) {
    const Germ& g = q.germs()[j];
    d(g.r, j) += 1;
    d(g.l, j) -= 1;
  }
  return d;
}

KGroups quotient_ktheory(const QuotientPresentation& q) {
  const IntMatrix d = boundary_matrix(q);
  KGroups k;
  k.k0_basis = kernel_basis(d);
  k.k0 = FgGroup::free(k.k0_basis.cols());
  k.k1 = canonicalize(Presentation{q.arc_count(), d});
  const long lhs = static_cast<long>(k.k0.free_rank()) - static_cast<long>(k.k1.group.free_rank());
  const long rhs = static_cast<long>(q.germ_count()) - static_cast<long>(q.arc_count());
  if (lhs != rhs)
    throw Error(ErrorCode::IdentityViolation, "rank(ker d) - rank(coker d) = " + std::to_string(lhs) +
                                                  " but #germs - #arcs = " + std::to_string(rhs));
  return k;
}

std::string provenance_name(WrongWayProvenance p) {
  switch (p) {
    case WrongWayProvenance::UserSupplied: return "UserSupplied";
    case WrongWayProvenance::CircleCoverRule: return "CircleCoverRule";
    case WrongWayProvenance::RoseHeuristic: return "RoseHeuristic";
  }
  return "?";
}

WrongWayData wrongway_matrices(const QuotientPresentation& q, const KGroups& k,
                               const std::optional<IntMatrix>& user_a0, const std::optional<IntMatrix>& user_a1) {
  const std::size_t r0 = k.k0.free_rank();
  const std::size_t g1 = k.k1.group.generator_count();
  if (user_a0 || user_a1) {
    if (!user_a0 || !user_a1)
      throw Error(ErrorCode::InvalidArgument, "user wrong-way maps need both A0 and A1");
    require_square(*user_a0, r0, "A0");
    require_square(*user_a1, g1, "A1");
    if (!k.k1.group.admits_endomorphism(*user_a1))
      throw Error(ErrorCode::IncompatibleEndo, "A1 is not an endomorphism of " + k.k1.group.to_string());
    WrongWayData w;
    w.k0_basis = k.k0_basis;
    w.a0 = *user_a0;
    w.a1 = *user_a1;
    w.provenance = WrongWayProvenance::UserSupplied;
    w.note = "matrices supplied by the user";
    return w;
  }

  if (auto c = circle_cover_rule(q, k)) return *c;
  std::string why;
  if (auto r = rose_heuristic(q, k, &why)) return *r;
  throw Error(ErrorCode::NeedUserMatrices, "no wrong-way rule applies: " + why + "; supply A0 and A1");
}

std::optional<WrongWayData> circle_cover_rule(const QuotientPresentation& q, const KGroups& k) {
  const auto d = circle_cover_degree(q);
  if (!d || k.k0.free_rank() != 1 || k.k1.group != FgGroup::free(1)) return std::nullopt;
  WrongWayData w;
  w.k0_basis = k.k0_basis;
  w.a0 = IntMatrix::from_rows({{*d}});
  w.a1 = IntMatrix::identity(1);
  w.provenance = WrongWayProvenance::CircleCoverRule;
  w.note = "quotient is a circle covered " + d->get_str() + " times";
  return w;
}

std::optional<WrongWayData> rose_heuristic(const QuotientPresentation& q, const KGroups& k, std::string* why) {
  const std::size_t n = q.arc_count();
  const std::size_t r0 = k.k0.free_rank();
  auto reject = [&](const std::string& reason) -> std::optional<WrongWayData> {
    if (why) *why = reason;
    return std::nullopt;
  };
  if (r0 != n)
    return reject("rank K0 = " + std::to_string(r0) + " differs from the number of edges " + std::to_string(n));
  if (k.k1.group != FgGroup::free(1)) return reject("K1 = " + k.k1.group.to_string() + " is not Z");
  IntMatrix kappa(n, q.germ_count());
  for (std::size_t j = 0; j < q.germ_count(); ++j) kappa(q.germs()[j].l, j) = 1;
  const IntMatrix restricted = kappa * k.k0_basis;
  if (!restricted.is_unimodular()) return reject("the incoming-edge map on ker d is not invertible over Z");
  WrongWayData w;
  w.k0_basis = k.k0_basis * inverse_unimodular(restricted);
  w.a0 = substitution_matrix(q.system());
  w.a1 = IntMatrix::identity(1);
  w.provenance = WrongWayProvenance::RoseHeuristic;
  w.note = "K0 basis chosen so each element maps to one edge under the incoming-edge map";
  return w;
}

StableKTheory stable_ktheory(const KGroups& k, const WrongWayData& w) {
  return {colimit(k.k0, w.a0), colimit(k.k1.group, w.a1)};
}

std::string PimsnerResult::k0_name() const {
  if (k0) return k0->name();
  return "ext(" + ker1.name() + " by " + coker0.name() + ")";
}

std::string PimsnerResult::k1_name() const {
  if (k1) return k1->name();
  return "ext(" + ker0.name() + " by " + coker1.name() + ")";
}

PimsnerResult pimsner(const ColimitGroup& k0, const IntMatrix& a0, const ColimitGroup& k1, const IntMatrix& a1) {
  PimsnerResult r;
  std::tie(r.ker0, r.coker0) = induced_ker_coker(k0, one_minus(a0));
  std::tie(r.ker1, r.coker1) = induced_ker_coker(k1, one_minus(a1));

  if (r.coker0.free_rank() != r.ker0.free_rank() || r.coker1.free_rank() != r.ker1.free_rank())
    throw Error(ErrorCode::IdentityViolation, "kernel and cokernel of 1 - A have different ranks");
  r.rank0 = r.coker0.free_rank() + r.ker1.free_rank();
  r.rank1 = r.coker1.free_rank() + r.ker0.free_rank();

  r.split0 = r.ker1.is_finitely_generated_free();
  r.split1 = r.ker0.is_finitely_generated_free();
  if (r.split0) r.k0 = direct_sum(r.coker0, r.ker1);
  if (r.split1) r.k1 = direct_sum(r.coker1, r.ker0);
  if ((r.k0 && r.k0->free_rank() != r.rank0) || (r.k1 && r.k1->free_rank() != r.rank1))
    throw Error(ErrorCode::IdentityViolation, "assembled rank differs from the sum of the pieces");
  return r;
}

PimsnerResult ruelle_ktheory(const KGroups& k, const WrongWayData& w) {
  return pimsner(colimit(k.k0), w.a0, colimit(k.k1.group), w.a1);
}

PimsnerResult unstable_ruelle_ktheory(const KGroups& k, const WrongWayData& w) {
  if (!k.k0.is_free() || !k.k1.group.is_free())
    throw Error(ErrorCode::NotFree, "K-homology by duality needs free K-groups; K1 = " + k.k1.group.to_string());
  PimsnerResult r = pimsner(colimit(k.k0), w.a0.transpose(), colimit(k.k1.group), w.a1.transpose());
  r.free_case_dual = true;
  return r;
}

PQFamilyReport pq_family(const Integer& p, const Integer& q) {
  if (!(q > 1 && p > q)) throw Error(ErrorCode::InvalidArgument, "the p/q family needs 1 < q < p");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw Error(ErrorCode::InvalidArgument, "p and q must be coprime");

  const ColimitGroup base = colimit(FgGroup::free(1), IntMatrix::from_rows({{q}}));
  PQFamilyReport out;
  out.p = p;
  out.q = q;
  out.convention = pimsner(base, IntMatrix::from_rows({{p}}), base, IntMatrix::identity(1));
  out.convention_k0 = out.convention.k0_name();
  out.convention_k1 = out.convention.k1_name();
  out.alternative_k0 = direct_sum(out.convention.ker1, out.convention.ker0).name();
  out.alternative_k1 = direct_sum(out.convention.coker1, out.convention.coker0).name();
  return out;
}

}  // namespace solenoidk
