// Acceptance run: one PASS/FAIL line per criterion. Expected values are either
// literal constants or recomputed here by independent means: rational Gaussian
// elimination, MPFR logarithms, direct counting.

#include <mpfr.h>

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "solenoidk/dynamics.hpp"
#include "solenoidk/ktheory.hpp"

using namespace solenoidk;

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

template <class T>
void expect_eq(const T& got, const T& want, const std::string& what) {
  if (!(got == want)) {
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want;
    throw Failure{s.str()};
  }
}

SubstitutionSystem sys(std::vector<std::string> edges, std::vector<std::string> images) {
  return SubstitutionSystem::from_strings(edges, images);
}

SubstitutionSystem aab_ab() { return sys({"a", "b"}, {"aab", "ab"}); }
SubstitutionSystem two() { return sys({"a"}, {"aa"}); }
SubstitutionSystem ab_ab() { return sys({"a", "b"}, {"ab", "ab"}); }

std::vector<std::string> germ_names(const QuotientPresentation& q) {
  std::vector<std::string> out;
  for (const auto& g : q.germs()) out.push_back(germ_name(q.system(), g));
  return out;
}

std::string joined(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
  return out;
}

// ---------------------------------------------------------------------------
// Rational linear algebra, kept apart from the library's integer routines.

using QMatrix = std::vector<std::vector<Rational>>;

QMatrix to_q(const IntMatrix& a) {
  QMatrix m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return m;
}

// Row reduction; returns rank and the determinant when square.
std::size_t q_eliminate(QMatrix m, Rational* det = nullptr) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  Rational d = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) {
      d = 0;
      continue;
    }
    if (p != r) {
      std::swap(m[p], m[r]);
      d = -d;
    }
    d *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  if (det) *det = r == rows && rows == cols ? d : Rational(0);
  return r;
}

std::size_t q_rank(const IntMatrix& a) { return q_eliminate(to_q(a)); }

Rational q_det(const IntMatrix& a) {
  Rational d;
  q_eliminate(to_q(a), &d);
  return d;
}

std::size_t nullity_one_minus(const IntMatrix& a) {
  IntMatrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = (i == j ? 1 : 0) - a(i, j);
  return a.cols() - q_rank(m);
}

IntMatrix product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

bool unit_det(const IntMatrix& a) {
  const Rational d = q_det(a);
  return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------
// Criteria

void aab_ab_end_to_end() {
  const QuotientPresentation q(aab_ab());
  expect_eq(joined(germ_names(q)), std::string("aa,ab,ba"), "germs");
  for (std::size_t i = 0; i < q.germ_count(); ++i)
    expect_eq(germ_name(q.system(), q.germs()[q.tau(i)]), std::string("ba"), "tau(" + germ_names(q)[i] + ")");
  expect(!is_hausdorff(q), "aab/ab reported Hausdorff");
  expect_eq(k0_constant(q), std::size_t(1), "K0 constant");
  const KGroups k = quotient_ktheory(q);
  expect_eq(k.k0.to_string(), std::string("Z^2"), "K^0 of the quotient");
  expect_eq(k.k1.group.to_string(), std::string("Z"), "K^1 of the quotient");
  const WrongWayData w = wrongway_matrices(q, k);
  expect(w.a0 == IntMatrix{{2, 1}, {1, 1}}, "A0 = " + w.a0.to_string());
  expect(w.a1 == IntMatrix{{1}}, "A1 = " + w.a1.to_string());
  const StableKTheory s = stable_ktheory(k, w);
  expect_eq(s.k0.name(), std::string("Z^2"), "stable K0");
  expect_eq(s.k1.name(), std::string("Z"), "stable K1");
  const PimsnerResult r = ruelle_ktheory(k, w);
  expect_eq(r.k0_name(), std::string("Z"), "Ruelle K0");
  expect_eq(r.k1_name(), std::string("Z"), "Ruelle K1");
}

void two_solenoid_end_to_end() {
  const QuotientPresentation q(two());
  expect_eq(joined(germ_names(q)), std::string("aa"), "germs");
  expect(is_hausdorff(q), "not Hausdorff");
  const KGroups k = quotient_ktheory(q);
  const WrongWayData w = wrongway_matrices(q, k);
  expect(w.provenance == WrongWayProvenance::CircleCoverRule, "provenance " + provenance_name(w.provenance));
  expect(w.a0 == IntMatrix{{2}}, "degree " + w.a0.to_string());
  const StableKTheory s = stable_ktheory(k, w);
  expect_eq(s.k0.name(), std::string("Z[1/2]"), "stable K0");
  expect_eq(s.k1.name(), std::string("Z"), "stable K1");
  const PimsnerResult r = ruelle_ktheory(k, w);
  expect_eq(r.k0_name(), std::string("Z"), "Ruelle K0");
  expect_eq(r.k1_name(), std::string("Z"), "Ruelle K1");
}

void ab_ab_circle() {
  const QuotientPresentation q(ab_ab());
  expect_eq(joined(germ_names(q)), std::string("ab,ba"), "germs");
  expect(is_hausdorff(q), "not Hausdorff");
  const auto d = circle_cover_degree(q);
  expect(d && *d == 2, "circle degree");
  // Independent count: the circle a.b is wrapped by g(a) g(b) = abab, twice around.
  std::size_t letters = 0;
  for (EdgeId e = 0; e < q.arc_count(); ++e) letters += q.system().image(e).size();
  expect_eq(letters / q.arc_count(), std::size_t(2), "wrapping count");
  const KGroups k = quotient_ktheory(q);
  const WrongWayData w = wrongway_matrices(q, k);
  expect(w.provenance == WrongWayProvenance::CircleCoverRule, "provenance " + provenance_name(w.provenance));
  const StableKTheory s = stable_ktheory(k, w);
  expect_eq(s.k0.name(), std::string("Z[1/2]"), "stable K0");
  expect_eq(s.k1.name(), std::string("Z"), "stable K1");
}

// Fixed points of g~^n counted from scratch: each level-n cell [a, b] of edge e
// labelled e carries one affine branch onto e, with fixed point a / (1 - b + a)
// strictly inside e unless the cell touches an end. Germs are counted by
// iterating (last letter, first letter).
Integer count_fixed_points(const QuotientPresentation& q, std::size_t n) {
  const SubstitutionSystem& s = q.system();
  Integer count = 0;
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    struct Cell {
      Rational a, b;
      EdgeId letter;
    };
    std::vector<Cell> cells{{Rational(0), Rational(1), e}};
    for (std::size_t level = 0; level < n; ++level) {
      std::vector<Cell> next;
      for (const auto& c : cells) {
        const Word& w = s.image(c.letter);
        const Rational step = (c.b - c.a) / Rational(static_cast<long>(w.size()));
        for (std::size_t j = 0; j < w.size(); ++j)
          next.push_back({c.a + step * static_cast<long>(j), c.a + step * static_cast<long>(j + 1), w[j]});
      }
      cells = std::move(next);
    }
    for (const auto& c : cells)
      if (c.letter == e && c.a > 0 && c.b < 1) ++count;
  }
  for (const auto& g : q.germs()) {
    EdgeId l = g.l, r = g.r;
    for (std::size_t k = 0; k < n; ++k) {
      l = s.image(l).back();
      r = s.image(r).front();
    }
    if (l == g.l && r == g.r) ++count;
  }
  return count;
}

void periodic_points() {
  for (const auto& s : {aab_ab(), two(), ab_ab()}) {
    const QuotientPresentation q(s);
    for (std::size_t n = 1; n <= 8; ++n) {
      const std::string tag = s.word_string(s.image(0)) + "/" + s.word_string(s.image(s.edge_count() - 1)) + " n=" + std::to_string(n);
      const Integer direct = count_fixed_points(q, n);
      expect_eq(fix_count(q, n), direct, tag + " closed form vs direct count");
      expect_eq(fix_count_oracle(s, n), direct, tag + " library oracle vs direct count");
    }
  }
  for (unsigned d : {2u, 3u}) {
    const auto s = sys({"a"}, {std::string(d, 'a')});
    const QuotientPresentation q(s);
    Integer power = 1;
    for (std::size_t n = 1; n <= 10; ++n) {
      power *= d;
      expect_eq(fix_count(q, n), Integer(power - 1), "d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
  }
}

void shift_equivalence() {
  for (const auto& s : {aab_ab(), two(), ab_ab()}) {
    const QuotientPresentation q(s);
    const ShiftEquivalenceReport r = shift_equivalence_check(q, 1000, 20240917);
    expect_eq(r.identities.size(), std::size_t(4), "identity count");
    // r∘g̃ and s∘r start on the quotient (germs plus samples), the other two on
    // the rose (vertex plus samples).
    const std::size_t want[4] = {1000 + q.germ_count(), 1001, 1001, 1000 + q.germ_count()};
    for (std::size_t i = 0; i < 4; ++i)
      expect_eq(r.identities[i].points_checked, want[i], r.identities[i].identity + " point count");
  }
}

void expansiveness() {
  const QuotientPresentation q(aab_ab());
  const SeparationReport r3 = forward_expansive_witness(q, CoverSpec(q, 3), 20, 64);
  expect(r3.all_separated(), std::to_string(r3.unseparated.size()) + " pairs unseparated at level 3");
  expect(r3.max_separation_time <= 20, "separation time above 20");
  const SeparationReport r4 = forward_expansive_witness(q, CoverSpec(q, 4), 20, 64);
  expect_eq(r4.point_count, r3.point_count, "grid size");
  for (std::size_t i = 0; i < r3.point_count; ++i)
    for (std::size_t j = i + 1; j < r3.point_count; ++j)
      expect(r4.time(i, j) <= r3.time(i, j), "level 4 slower on pair " + std::to_string(i) + "," + std::to_string(j));
}

void exact_algebra() {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> entry(-100, 100);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix a(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) a(i, j) = entry(rng);
    // Every fifth matrix gets dependent rows so that the kernel is nontrivial.
    if (trial % 5 == 0)
      for (std::size_t j = 0; j < 6; ++j) {
        a(4, j) = a(0, j) - 2 * a(1, j);
        a(5, j) = 3 * a(2, j);
      }
    const std::string tag = "matrix " + std::to_string(trial);
    const SmithForm f = smith_normal_form(a);
    expect(product(product(f.U, f.S), f.V) == a, tag + ": U S V != A");
    expect(unit_det(f.U) && unit_det(f.V), tag + ": U or V not unimodular");
    const std::size_t rank = q_rank(a);
    expect_eq(f.rank, rank, tag + " rank");
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (i != j) expect(f.S(i, j) == 0, tag + ": S not diagonal");
    for (std::size_t i = 0; i + 1 < 6; ++i) {
      const Integer& d = f.S(i, i);
      const Integer& e = f.S(i + 1, i + 1);
      expect(d >= 0 && (d == 0 ? e == 0 : e % d == 0), tag + ": divisibility chain");
    }
    const IntMatrix k = kernel_basis(a);
    expect_eq(k.cols() + rank, std::size_t(6), tag + " rank-nullity");
    expect(product(a, k).is_zero(), tag + ": kernel basis not in kernel");
    const FgGroup c = cokernel(a);
    expect_eq(c.free_rank(), 6 - rank, tag + " cokernel rank");
    if (rank == 6) {
      const Rational det = q_det(a);
      expect(c.order().has_value(), tag + ": finite cokernel expected");
      expect_eq(Rational(*c.order()), Rational(abs(det)), tag + " |coker| vs |det|");
    }
  }
}

// Directed-rounding MPFR bounds for log x, where x is given by bounds too.
struct Bounds {
  Rational lo;
  Rational hi;
};

Bounds mpfr_log_bounds(const std::function<void(mpfr_t, mpfr_rnd_t)>& x) {
  mpfr_t v, l;
  mpfr_inits2(512, v, l, nullptr);
  Bounds out;
  mpq_class q;
  x(v, MPFR_RNDD);
  mpfr_log(l, v, MPFR_RNDD);
  mpfr_get_q(q.get_mpq_t(), l);
  out.lo = q;
  x(v, MPFR_RNDU);
  mpfr_log(l, v, MPFR_RNDU);
  mpfr_get_q(q.get_mpq_t(), l);
  out.hi = q;
  mpfr_clears(v, l, nullptr);
  return out;
}

void entropy_enclosures() {
  const Rational width(1, 1000000000);
  const EntropyEnclosure e2 = entropy(two(), width);
  expect(e2.log_hi - e2.log_lo <= width, "2-solenoid width");
  expect(e2.lambda_lo <= 2 && 2 <= e2.lambda_hi, "2 not in the eigenvalue bracket");
  const Bounds log2 = mpfr_log_bounds([](mpfr_t v, mpfr_rnd_t) { mpfr_set_ui(v, 2, MPFR_RNDN); });
  expect(e2.log_lo <= log2.lo && log2.hi <= e2.log_hi, "log 2 outside the enclosure");

  const EntropyEnclosure ea = entropy(aab_ab(), width);
  expect(ea.log_hi - ea.log_lo <= width, "aab/ab width");
  // (3 + sqrt 5)/2 is the larger root of x^2 - 3x + 1.
  const auto p = [](const Rational& x) { return Rational(x * x - 3 * x + 1); };
  expect(ea.lambda_lo > 1 && p(ea.lambda_lo) <= 0 && p(ea.lambda_hi) >= 0, "golden-square root not bracketed");
  const Bounds lg = mpfr_log_bounds([](mpfr_t v, mpfr_rnd_t rnd) {
    mpfr_set_ui(v, 5, MPFR_RNDN);
    mpfr_sqrt(v, v, rnd);
    mpfr_add_ui(v, v, 3, rnd);
    mpfr_div_ui(v, v, 2, rnd);
  });
  expect(ea.log_lo <= lg.lo && lg.hi <= ea.log_hi, "log((3+sqrt5)/2) outside the enclosure");
}

// Largest divisor of n coprime to m.
Integer prime_to(Integer n, const Integer& m) {
  for (;;) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    if (g == 1) return n;
    n /= g;
  }
}

void parity_bookkeeping() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  auto check = [](const KGroups& k, const WrongWayData& w, const std::string& tag) {
    const PimsnerResult r = ruelle_ktheory(k, w);
    const std::size_t n0 = nullity_one_minus(w.a0), n1 = nullity_one_minus(w.a1);
    expect_eq(r.ker0.free_rank(), n0, tag + " rank ker(1 - A0)");
    expect_eq(r.coker0.free_rank(), n0, tag + " rank coker(1 - A0)");
    expect_eq(r.ker1.free_rank(), n1, tag + " rank ker(1 - A1)");
    expect_eq(r.rank0, n0 + n1, tag + " rank K0");
    expect_eq(r.rank1, n0 + n1, tag + " rank K1");
  };
  for (const auto& s : {aab_ab(), two(), ab_ab(), sys({"a"}, {"aaa"})}) {
    const QuotientPresentation q(s);
    const KGroups k = quotient_ktheory(q);
    check(k, wrongway_matrices(q, k), joined(s.edge_names()));
  }
  const QuotientPresentation q(aab_ab());
  const KGroups k = quotient_ktheory(q);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a0(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a0(i, j) = entry(rng);
    if (t % 4 == 0) a0 = IntMatrix{{1, entry(rng)}, {0, 1}};
    const IntMatrix a1{{entry(rng)}};
    check(k, wrongway_matrices(q, k, a0, a1), "random " + a0.to_string() + " " + a1.to_string());
  }
  for (const auto& [p, qq] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 4}, {13, 6}}) {
    const PQFamilyReport r = pq_family(p, qq);
    const std::string tag = std::to_string(p) + "/" + std::to_string(qq);
    expect(r.non_normative, tag + " not flagged non-normative");
    expect(!r.convention_k0.empty() && !r.convention_k1.empty(), tag + " convention placement missing");
    expect(!r.alternative_k0.empty() && !r.alternative_k1.empty(), tag + " alternative placement missing");
    expect_eq(r.convention.rank0, r.convention.rank1, tag + " ranks");
    const Integer t = prime_to(p - 1, qq);
    const std::string tors = t == 1 ? "0" : "Z/" + t.get_str();
    expect_eq(r.convention.coker0.name(), tors, tag + " torsion piece");
    const std::string ring = "Z[1/" + std::to_string(qq) + "]";
    if (qq == 4) continue;  // named by its prime set
    expect_eq(r.alternative_k1, t == 1 ? ring : ring + " ⊕ " + tors, tag + " alternative K1");
    expect_eq(r.convention_k0, "ext(" + ring + " by " + tors + ")", tag + " convention K0");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"1 aab/ab end-to-end", aab_ab_end_to_end},
      {"2 2-solenoid end-to-end", two_solenoid_end_to_end},
      {"3 ab/ab circle cover", ab_ab_circle},
      {"4 periodic points", periodic_points},
      {"5 shift equivalence identities", shift_equivalence},
      {"6 forward orbit expansiveness", expansiveness},
      {"7 exact algebra properties", exact_algebra},
      {"8 entropy enclosures", entropy_enclosures},
      {"9 Pimsner bookkeeping and p/q placements", parity_bookkeeping},
  };
  int failed = 0;
  for (const auto& [name, body] : criteria) {
    try {
      body();
      std::printf("PASS %s\n", name.c_str());
    } catch (const Failure& f) {
      std::printf("FAIL %s: %s\n", name.c_str(), f.what.c_str());
      ++failed;
    } catch (const std::exception& e) {
      std::printf("FAIL %s: exception: %s\n", name.c_str(), e.what());
      ++failed;
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
