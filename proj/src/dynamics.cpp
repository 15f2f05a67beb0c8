#include "solenoidk/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "parallel.hpp"

namespace solenoidk {

namespace {

using Interval = std::pair<Rational, Rational>;

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Where g sends an arc point: an interior point, or the letter boundary
// w[j-1] | w[j] of its image word, returned as j.
std::variant<Interior, std::size_t> land(const SubstitutionSystem& system, const Interior& p) {
  const Word& w = system.image(p.edge);
  const Rational x = p.t * static_cast<unsigned long>(w.size());
  const Integer j = floor_of(x);
  const Rational u = x - j;
  const std::size_t idx = j.get_ui();
  if (u == 0) return idx;
  return Interior{w[idx], u};
}

std::string rational_string(const Rational& q) { return q.get_str(); }

// Cell endpoints of g^level on edge e, in increasing order from 0 to 1.
std::vector<Rational> level_partition(const SubstitutionSystem& system, EdgeId e, std::size_t level,
                                      std::map<std::pair<EdgeId, std::size_t>, std::vector<Rational>>& memo) {
  if (level == 0) return {Rational(0), Rational(1)};
  auto key = std::make_pair(e, level);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const Word& w = system.image(e);
  const unsigned long len = w.size();
  std::vector<Rational> out{Rational(0)};
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto inner = level_partition(system, w[j], level - 1, memo);
    for (std::size_t i = 1; i < inner.size(); ++i) out.push_back((Rational(static_cast<unsigned long>(j)) + inner[i]) / len);
  }
  memo.emplace(key, out);
  return out;
}

Rational vertex_distance(const YPoint& p) {
  if (std::holds_alternative<Vertex>(p)) return 0;
  const Rational& t = std::get<Interior>(p).t;
  return std::min(t, Rational(1 - t));
}

}  // namespace

std::string point_string(const SubstitutionSystem& system, const PLPoint& p) {
  if (const auto* g = std::get_if<GermPoint>(&p)) return "germ " + germ_name(system, g->germ);
  const auto& i = std::get<Interior>(p);
  return system.edge_name(i.edge) + "@" + rational_string(i.t);
}

std::string point_string(const SubstitutionSystem& system, const YPoint& p) {
  if (std::holds_alternative<Vertex>(p)) return "vertex";
  const auto& i = std::get<Interior>(p);
  return system.edge_name(i.edge) + "@" + rational_string(i.t);
}

void require_point(const QuotientPresentation& q, const PLPoint& p) {
  if (const auto* g = std::get_if<GermPoint>(&p)) {
    if (!q.is_admissible(g->germ))
      throw Error(ErrorCode::InadmissibleGerm, "germ " + germ_name(q.system(), g->germ) + " is not admissible");
    return;
  }
  const auto& i = std::get<Interior>(p);
  if (i.edge >= q.arc_count()) throw Error(ErrorCode::UnknownEdge, "edge index out of range");
  if (i.t <= 0 || i.t >= 1) throw Error(ErrorCode::InvalidArgument, "arc coordinate must lie strictly between 0 and 1");
}

PLPoint apply_g(const SubstitutionSystem& system, const PLPoint& p) {
  if (const auto* g = std::get_if<GermPoint>(&p)) return GermPoint{germ_map(system, g->germ)};
  const auto& i = std::get<Interior>(p);
  auto l = land(system, i);
  if (auto* hit = std::get_if<Interior>(&l)) return *hit;
  const std::size_t j = std::get<std::size_t>(l);
  const Word& w = system.image(i.edge);
  return GermPoint{{w[j - 1], w[j]}};
}

PLPoint apply_g(const SubstitutionSystem& system, const PLPoint& p, std::size_t n) {
  PLPoint x = p;
  for (std::size_t i = 0; i < n; ++i) x = apply_g(system, x);
  return x;
}

YPoint apply_g(const SubstitutionSystem& system, const YPoint& p) {
  if (std::holds_alternative<Vertex>(p)) return Vertex{};
  auto l = land(system, std::get<Interior>(p));
  if (auto* hit = std::get_if<Interior>(&l)) return *hit;
  return Vertex{};
}

YPoint apply_g(const SubstitutionSystem& system, const YPoint& p, std::size_t n) {
  YPoint x = p;
  for (std::size_t i = 0; i < n; ++i) x = apply_g(system, x);
  return x;
}

YPoint r_map(const PLPoint& p) {
  if (std::holds_alternative<GermPoint>(p)) return Vertex{};
  return std::get<Interior>(p);
}

ShiftEquivalence::ShiftEquivalence(const QuotientPresentation& q)
    : q_(&q), k0_(k0_constant(q)), flat_(q.germs()[flattened_germ(q, k0_)]) {}

PLPoint ShiftEquivalence::s_map(const YPoint& y) const {
  if (std::holds_alternative<Vertex>(y)) return GermPoint{flat_};
  return apply_g(q_->system(), PLPoint(std::get<Interior>(y)), k0_);
}

Interior random_interior(const SubstitutionSystem& system, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> edge(0, system.edge_count() - 1);
  std::uniform_int_distribution<long> den(2, 1000000);
  const EdgeId e = edge(rng);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(1, d - 1);
  Rational t(num(rng), d);
  t.canonicalize();
  return {e, t};
}

ShiftEquivalenceReport shift_equivalence_check(const QuotientPresentation& q, std::size_t sample_count,
                                               std::uint64_t seed) {
  const SubstitutionSystem& sys = q.system();
  const ShiftEquivalence se(q);
  const std::size_t k0 = se.k0();

  std::vector<YPoint> ys{Vertex{}};
  std::vector<PLPoint> xs;
  for (const auto& g : q.germs()) xs.push_back(GermPoint{g});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const Interior p = random_interior(sys, rng);
    ys.push_back(p);
    xs.push_back(p);
  }

  auto fail = [&](const std::string& identity, const std::string& where) {
    throw Error(ErrorCode::IdentityViolation, identity + " fails at " + where);
  };
  ShiftEquivalenceReport report;
  report.k0 = k0;
  for (const auto& x : xs)
    if (r_map(apply_g(sys, x)) != apply_g(sys, r_map(x))) fail("r∘g̃ = g∘r", point_string(sys, x));
  report.identities.push_back({"r∘g̃ = g∘r", xs.size()});
  for (const auto& y : ys)
    if (se.s_map(apply_g(sys, y)) != apply_g(sys, se.s_map(y))) fail("s∘g = g̃∘s", point_string(sys, y));
  report.identities.push_back({"s∘g = g̃∘s", ys.size()});
  for (const auto& y : ys)
    if (r_map(se.s_map(y)) != apply_g(sys, y, k0)) fail("r∘s = g^K0", point_string(sys, y));
  report.identities.push_back({"r∘s = g^K0", ys.size()});
  for (const auto& x : xs)
    if (se.s_map(r_map(x)) != apply_g(sys, x, k0)) fail("s∘r = g̃^K0", point_string(sys, x));
  report.identities.push_back({"s∘r = g̃^K0", xs.size()});
  return report;
}

// ---------------------------------------------------------------------------
// Periodic points

Integer fix_count(const QuotientPresentation& q, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "fix_count needs n >= 1");
  const SubstitutionSystem& sys = q.system();
  const IntMatrix mn = substitution_matrix(sys).power(static_cast<unsigned>(n));
  Integer count = 0;
  for (EdgeId e = 0; e < sys.edge_count(); ++e) {
    EdgeId first = e, last = e;
    for (std::size_t i = 0; i < n; ++i) {
      first = sys.first_letter(first);
      last = sys.last_letter(last);
    }
    count += mn(e, e);
    if (first == e) count -= 1;
    if (last == e) count -= 1;
  }
  for (std::size_t i = 0; i < q.germ_count(); ++i) {
    std::size_t x = i;
    for (std::size_t k = 0; k < n; ++k) x = q.tau(x);
    if (x == i) count += 1;
  }
  return count;
}

namespace {

constexpr std::size_t kOracleWordLimit = 5000000;

Word checked_iterate(const SubstitutionSystem& system, EdgeId e, std::size_t n) {
  Word w{e};
  for (std::size_t i = 0; i < n; ++i) {
    Word next;
    for (EdgeId x : w) {
      next.insert(next.end(), system.image(x).begin(), system.image(x).end());
      if (next.size() > kOracleWordLimit)
        throw Error(ErrorCode::InvalidArgument, "word expansion too long for the fixed-point oracle");
    }
    w = std::move(next);
  }
  return w;
}

// Each occurrence j of e in g^n(e) is a branch: a cell [a, b] of e mapped
// affinely onto e, so its fixed point solves (t - a) / (b - a) = t. Cells come
// from splitting every interval into |g(x)| equal parts n times. Solutions
// inside the arc are confirmed by iterating g.
Integer interior_fixed_points(const SubstitutionSystem& system, std::size_t n) {
  Integer count = 0;
  for (EdgeId e = 0; e < system.edge_count(); ++e) {
    std::vector<std::pair<EdgeId, Interval>> cells{{e, {Rational(0), Rational(1)}}};
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::pair<EdgeId, Interval>> next;
      for (const auto& [x, iv] : cells) {
        const Word& w = system.image(x);
        const Rational step = (iv.second - iv.first) / static_cast<unsigned long>(w.size());
        for (std::size_t j = 0; j < w.size(); ++j)
          next.push_back({w[j], {iv.first + step * static_cast<unsigned long>(j),
                                 iv.first + step * static_cast<unsigned long>(j + 1)}});
        if (next.size() > kOracleWordLimit)
          throw Error(ErrorCode::InvalidArgument, "word expansion too long for the fixed-point oracle");
      }
      cells = std::move(next);
    }
    for (const auto& [x, iv] : cells) {
      if (x != e) continue;
      const Rational& a = iv.first;
      const Rational& b = iv.second;
      if (b - a == 1) continue;
      const Rational t = a / (1 - b + a);
      if (t <= 0 || t >= 1) continue;
      const YPoint p = Interior{e, t};
      if (apply_g(system, p, n) != p)
        throw Error(ErrorCode::IdentityViolation, "branch solution " + point_string(system, p) + " is not fixed");
      count += 1;
    }
  }
  return count;
}

}  // namespace

Integer fix_count_oracle(const SubstitutionSystem& system, std::size_t n) {
  require_valid(system);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "fix_count_oracle needs n >= 1");
  Integer count = interior_fixed_points(system, n);

  // Vertex solutions split into germs. The germs are the letter boundaries
  // seen inside iterated words; one is fixed when the n-th images of its two
  // letters end and start with those same letters.
  const std::size_t edges = system.edge_count();
  std::set<std::pair<EdgeId, EdgeId>> boundaries;
  for (EdgeId e = 0; e < edges; ++e) {
    Word w{e};
    for (std::size_t k = 1; k <= edges * edges + 1; ++k) {
      Word next;
      for (EdgeId x : w) next.insert(next.end(), system.image(x).begin(), system.image(x).end());
      if (next.size() > kOracleWordLimit)
        throw Error(ErrorCode::InvalidArgument, "word expansion too long for the fixed-point oracle");
      w = std::move(next);
      for (std::size_t i = 0; i + 1 < w.size(); ++i) boundaries.insert({w[i], w[i + 1]});
    }
  }
  for (const auto& [l, r] : boundaries) {
    const Word wl = checked_iterate(system, l, n), wr = checked_iterate(system, r, n);
    if (wl.back() == l && wr.front() == r) count += 1;
  }
  return count;
}

Integer fix_count_presolenoid(const SubstitutionSystem& system, std::size_t n) {
  require_valid(system);
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "fix_count_presolenoid needs n >= 1");
  return interior_fixed_points(system, n) + 1;
}

namespace {

std::string polynomial_string(const std::vector<Rational>& c) {
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    const Rational mag = abs(c[k]);
    if (out.empty()) {
      if (c[k] < 0) out += "-";
    } else {
      out += c[k] < 0 ? " - " : " + ";
    }
    if (k == 0 || mag != 1) out += mag.get_str();
    if (k >= 1) out += "t";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// Solves rows * x = rhs over Q, free variables set to zero; nullopt when
// inconsistent.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
                                                    std::size_t unknowns) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < unknowns; ++j) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> x(unknowns, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rhs[i] / rows[i][pivots[i]];
  return x;
}

void trim(std::vector<Rational>& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

std::optional<RationalFunction> fit_rational(const std::vector<Rational>& z, std::size_t max_degree) {
  for (std::size_t d = 0; d <= max_degree; ++d) {
    if (z.size() < 2 * d + 2) break;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (std::size_t k = d + 1; k < z.size(); ++k) {
      std::vector<Rational> row(d);
      for (std::size_t i = 1; i <= d; ++i) row[i - 1] = z[k - i];
      rows.push_back(std::move(row));
      rhs.push_back(-z[k]);
    }
    auto q = solve_rational(rows, rhs, d);
    if (!q) continue;
    RationalFunction f;
    f.denominator.push_back(1);
    f.denominator.insert(f.denominator.end(), q->begin(), q->end());
    for (std::size_t k = 0; k <= d; ++k) {
      Rational acc = 0;
      for (std::size_t i = 0; i <= k; ++i) acc += f.denominator[i] * z[k - i];
      f.numerator.push_back(acc);
    }
    trim(f.numerator);
    trim(f.denominator);
    return f;
  }
  return std::nullopt;
}

}  // namespace

std::string RationalFunction::to_string() const {
  return "(" + polynomial_string(numerator) + ")/(" + polynomial_string(denominator) + ")";
}

ZetaSeries zeta_series(const QuotientPresentation& q, std::size_t n_max) {
  if (n_max == 0) throw Error(ErrorCode::InvalidArgument, "zeta_series needs n_max >= 1");
  ZetaSeries z;
  for (std::size_t n = 1; n <= n_max; ++n) z.counts.push_back(fix_count(q, n));
  // zeta = exp(sum N_n t^n / n), so k z_k = sum_{i=1..k} N_i z_{k-i}.
  z.series.push_back(1);
  for (std::size_t k = 1; k <= n_max; ++k) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc += Rational(z.counts[i - 1]) * z.series[k - i];
    z.series.push_back(acc / static_cast<unsigned long>(k));
  }
  z.guess = fit_rational(z.series, q.arc_count());
  return z;
}

// ---------------------------------------------------------------------------
// Wieler axioms

Rational rose_distance(const YPoint& x, const YPoint& y) {
  const Rational via_vertex = vertex_distance(x) + vertex_distance(y);
  const auto* a = std::get_if<Interior>(&x);
  const auto* b = std::get_if<Interior>(&y);
  if (a && b && a->edge == b->edge) return std::min(via_vertex, Rational(abs(a->t - b->t)));
  return via_vertex;
}

namespace {

// Closed subset of the rose: closed intervals per edge. Containing the vertex
// means containing both endpoints of every edge.
class ClosedSet {
 public:
  explicit ClosedSet(std::size_t edges) : parts_(edges) {}

  void add(EdgeId e, Rational a, Rational b) { parts_[e].emplace_back(std::move(a), std::move(b)); }

  void normalize() {
    bool vertex = false;
    for (const auto& list : parts_)
      for (const auto& [a, b] : list) vertex = vertex || a == 0 || b == 1;
    for (auto& list : parts_) {
      if (vertex) {
        list.emplace_back(0, 0);
        list.emplace_back(1, 1);
      }
      std::sort(list.begin(), list.end());
      std::vector<Interval> merged;
      for (auto& iv : list) {
        if (!merged.empty() && iv.first <= merged.back().second) {
          merged.back().second = std::max(merged.back().second, iv.second);
        } else {
          merged.push_back(iv);
        }
      }
      list = std::move(merged);
    }
  }

  bool subset_of(const ClosedSet& other) const {
    for (std::size_t e = 0; e < parts_.size(); ++e)
      for (const auto& [a, b] : parts_[e]) {
        const bool inside = std::any_of(other.parts_[e].begin(), other.parts_[e].end(),
                                        [&](const Interval& iv) { return iv.first <= a && b <= iv.second; });
        if (!inside) return false;
      }
    return true;
  }

  ClosedSet image(const SubstitutionSystem& system) const {
    ClosedSet out(parts_.size());
    for (std::size_t e = 0; e < parts_.size(); ++e) {
      const Word& w = system.image(e);
      const unsigned long len = w.size();
      for (const auto& [a, b] : parts_[e]) {
        const Rational lo = a * len, hi = b * len;
        for (std::size_t j = 0; j < w.size(); ++j) {
          const Rational s = std::max(lo, Rational(static_cast<unsigned long>(j)));
          const Rational t = std::min(hi, Rational(static_cast<unsigned long>(j + 1)));
          if (s <= t) out.add(w[j], s - static_cast<unsigned long>(j), t - static_cast<unsigned long>(j));
        }
      }
    }
    out.normalize();
    return out;
  }

 private:
  std::vector<std::vector<Interval>> parts_;
};

void add_vertex_ball(ClosedSet& set, std::size_t edges, const Rational& radius) {
  const Rational r = std::min(radius, Rational(1));
  for (EdgeId e = 0; e < edges; ++e) {
    set.add(e, 0, r);
    set.add(e, Rational(1) - r, 1);
  }
}

ClosedSet closed_ball(std::size_t edges, const YPoint& center, const Rational& radius) {
  ClosedSet set(edges);
  if (std::holds_alternative<Vertex>(center)) {
    add_vertex_ball(set, edges, radius);
  } else {
    const auto& p = std::get<Interior>(center);
    set.add(p.edge, std::max(Rational(0), Rational(p.t - radius)), std::min(Rational(1), Rational(p.t + radius)));
    if (p.t <= radius) add_vertex_ball(set, edges, radius - p.t);
    if (p.t + radius >= 1) add_vertex_ball(set, edges, p.t + radius - 1);
  }
  set.normalize();
  return set;
}

ClosedSet push(const SubstitutionSystem& system, ClosedSet set, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) set = set.image(system);
  return set;
}

Rational random_fraction(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den(1, 4096);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(1, d);
  Rational u(num(rng), d);
  u.canonicalize();
  return u;
}

// A point at path distance at most delta from p, moving forwards or backwards
// and continuing into a random edge past the vertex.
YPoint nearby(const SubstitutionSystem& system, const Interior& p, const Rational& delta, std::mt19937_64& rng) {
  std::bernoulli_distribution forward(0.5);
  std::uniform_int_distribution<std::size_t> edge(0, system.edge_count() - 1);
  const bool fwd = forward(rng);
  const Rational t = fwd ? Rational(p.t + delta) : Rational(p.t - delta);
  if (t > 0 && t < 1) return Interior{p.edge, t};
  const Rational past = fwd ? Rational(t - 1) : Rational(-t);
  if (past == 0) return Vertex{};
  const EdgeId f = edge(rng);
  return Interior{f, forward(rng) ? past : Rational(1) - past};
}

}  // namespace

WielerSearch wieler_axiom_witness(const SubstitutionSystem& system, std::size_t k_max, std::size_t sample_count,
                                  std::uint64_t seed) {
  require_valid(system);
  const std::vector<Rational> gammas{Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                     Rational(2, 3), Rational(3, 4), Rational(9, 10)};
  std::vector<Rational> betas;
  for (long d = 2; d <= 1024; d *= 2) betas.emplace_back(1, d);

  WielerSearch search;
  search.samples_per_candidate = sample_count;
  const std::size_t edges = system.edge_count();
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (const auto& gamma : gammas) {
      Rational gamma_k = 1;
      for (std::size_t i = 0; i < k; ++i) gamma_k *= gamma;
      for (const auto& beta : betas) {
        std::mt19937_64 rng(seed);
        std::string failure;
        for (std::size_t s = 0; s < sample_count && failure.empty(); ++s) {
          const Interior x = random_interior(system, rng);
          const YPoint y = nearby(system, x, beta * random_fraction(rng), rng);
          const YPoint xk = apply_g(system, YPoint(x), k), yk = apply_g(system, y, k);
          const YPoint x2k = apply_g(system, xk, k), y2k = apply_g(system, yk, k);
          if (rose_distance(xk, yk) > gamma_k * rose_distance(x2k, y2k)) {
            failure = "Axiom 1 fails for x = " + point_string(system, YPoint(x)) +
                      ", y = " + point_string(system, y);
            break;
          }
          const Rational eps = beta * random_fraction(rng);
          const YPoint center = s % 8 == 0 ? YPoint(Vertex{}) : YPoint(x);
          const ClosedSet lhs = push(system, closed_ball(edges, apply_g(system, center, k), eps), k);
          const ClosedSet rhs = push(system, closed_ball(edges, center, gamma * eps), 2 * k);
          if (!lhs.subset_of(rhs))
            failure = "Axiom 2 fails at x = " + point_string(system, center) + ", eps = " + eps.get_str();
        }
        if (failure.empty()) {
          search.witness = WielerWitness{k, gamma, beta};
          search.counterexample.clear();
          return search;
        }
        search.counterexample = "K = " + std::to_string(k) + ", gamma = " + gamma.get_str() +
                                ", beta = " + beta.get_str() + ": " + failure;
      }
    }
  }
  return search;
}

// ---------------------------------------------------------------------------
// Forward orbit expansiveness

CoverSpec::CoverSpec(const QuotientPresentation& q, std::size_t level) : q_(&q), level_(level) {
  const SubstitutionSystem& sys = q.system();
  std::map<std::pair<EdgeId, std::size_t>, std::vector<Rational>> memo;
  std::size_t next = 0;
  for (EdgeId e = 0; e < sys.edge_count(); ++e) {
    partition_.push_back(level_partition(sys, e, level, memo));
    cell_offset_.push_back(next);
    next += partition_.back().size() - 1;
    junction_offset_.push_back(next);
    next += partition_.back().size() - 2;
  }
  germ_offset_ = next;
  element_count_ = next + q.germ_count();
}

std::vector<std::size_t> CoverSpec::elements_containing(const PLPoint& p) const {
  std::vector<std::size_t> out;
  if (const auto* g = std::get_if<GermPoint>(&p)) {
    out.push_back(germ_offset_ + *q_->index_of(g->germ));
    return out;
  }
  const auto& [e, t] = std::get<Interior>(p);
  const auto& part = partition_.at(e);
  const std::size_t cells = part.size() - 1;
  const std::size_t idx = static_cast<std::size_t>(std::upper_bound(part.begin(), part.end(), t) - part.begin());
  const std::size_t c = idx - 1;
  if (part[c] == t) {
    out.push_back(junction_offset_[e] + c - 1);
    return out;
  }
  out.push_back(cell_offset_[e] + c);
  const Rational mid = (part[c] + part[c + 1]) / 2;
  const auto& germs = q_->germs();
  if (t > mid) {
    if (c + 1 < cells) {
      out.push_back(junction_offset_[e] + c);
    } else {
      for (std::size_t i = 0; i < germs.size(); ++i)
        if (germs[i].l == e) out.push_back(germ_offset_ + i);
    }
  } else if (t < mid) {
    if (c > 0) {
      out.push_back(junction_offset_[e] + c - 1);
    } else {
      for (std::size_t i = 0; i < germs.size(); ++i)
        if (germs[i].r == e) out.push_back(germ_offset_ + i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PLPoint> expansiveness_grid(const QuotientPresentation& q, std::size_t grid_density) {
  if (grid_density < 2) throw Error(ErrorCode::InvalidArgument, "grid density must be at least 2");
  std::vector<PLPoint> pts;
  for (EdgeId e = 0; e < q.arc_count(); ++e)
    for (std::size_t j = 1; j < grid_density; ++j) {
      Rational t(static_cast<unsigned long>(j), static_cast<unsigned long>(grid_density));
      t.canonicalize();
      pts.push_back(Interior{e, t});
    }
  for (const auto& g : q.germs()) pts.push_back(GermPoint{g});
  return pts;
}

SeparationReport forward_expansive_witness(const QuotientPresentation& q, const CoverSpec& cover,
                                           std::size_t n_max, std::size_t grid_density) {
  const SubstitutionSystem& sys = q.system();
  const std::vector<PLPoint> pts = expansiveness_grid(q, grid_density);
  const std::size_t count = pts.size();

  std::vector<std::vector<std::vector<std::size_t>>> orbit(count);
  detail::parallel_for(count, [&](std::size_t i) {
    PLPoint x = pts[i];
    for (std::size_t n = 0; n <= n_max; ++n) {
      orbit[i].push_back(cover.elements_containing(x));
      if (n < n_max) x = apply_g(sys, x);
    }
  });

  auto share = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return true;
      a[i] < b[j] ? ++i : ++j;
    }
    return false;
  };

  SeparationReport report;
  report.level = cover.level();
  report.n_max = n_max;
  report.grid_density = grid_density;
  report.point_count = count;
  report.pair_count = count * (count - 1) / 2;
  report.times.assign(count * count, 0);
  detail::parallel_for(count, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      std::size_t n = 0;
      while (n <= n_max && share(orbit[i][n], orbit[j][n])) ++n;
      report.times[i * count + j] = n;
    }
  });
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      const std::size_t n = report.times[i * count + j];
      if (n > n_max) {
        report.unseparated.emplace_back(pts[i], pts[j]);
      } else {
        report.max_separation_time = std::max(report.max_separation_time, n);
      }
    }
  return report;
}

// ---------------------------------------------------------------------------
// Solenoid points

void require_solenoid_point(const SubstitutionSystem& system, const SolenoidPoint& x) {
  if (x.coords.empty()) throw Error(ErrorCode::InvalidArgument, "solenoid point has no coordinates");
  for (const auto& c : x.coords)
    if (const auto* p = std::get_if<Interior>(&c)) {
      if (p->edge >= system.edge_count()) throw Error(ErrorCode::UnknownEdge, "edge index out of range");
      if (p->t <= 0 || p->t >= 1)
        throw Error(ErrorCode::InvalidArgument, "arc coordinate must lie strictly between 0 and 1");
    }
  for (std::size_t i = 0; i + 1 < x.coords.size(); ++i)
    if (apply_g(system, x.coords[i + 1]) != x.coords[i])
      throw Error(ErrorCode::InvalidArgument, "coordinate " + std::to_string(i + 1) + " does not map onto coordinate " +
                                                  std::to_string(i));
}

SolenoidPoint solenoid_apply_phi(const SubstitutionSystem& system, const SolenoidPoint& x) {
  if (x.coords.empty()) throw Error(ErrorCode::InvalidArgument, "solenoid point has no coordinates");
  SolenoidPoint y;
  y.coords.reserve(x.coords.size() + 1);
  y.coords.push_back(apply_g(system, x.coords.front()));
  y.coords.insert(y.coords.end(), x.coords.begin(), x.coords.end());
  return y;
}

SolenoidPoint solenoid_shift(const SolenoidPoint& x) {
  if (x.coords.size() < 2) throw Error(ErrorCode::DepthTooShallow, "cannot drop the only coordinate");
  return SolenoidPoint{{x.coords.begin() + 1, x.coords.end()}};
}

PLPoint p_map(const ShiftEquivalence& se, const SolenoidPoint& x) {
  if (x.coords.empty() || x.depth() < se.k0())
    throw Error(ErrorCode::DepthTooShallow,
                "solenoid point has depth " + std::to_string(x.depth()) + " but K0 = " + std::to_string(se.k0()));
  return se.s_map(x.coords[se.k0()]);
}

SolenoidPoint random_solenoid_point(const SubstitutionSystem& system, std::size_t depth, std::mt19937_64& rng) {
  Interior top = random_interior(system, rng);
  std::bernoulli_distribution hit_vertex(0.5);
  if (depth >= 1 && hit_vertex(rng)) {
    std::uniform_int_distribution<std::size_t> lvl(1, std::min<std::size_t>(depth, 6));
    std::map<std::pair<EdgeId, std::size_t>, std::vector<Rational>> memo;
    const auto part = level_partition(system, top.edge, lvl(rng), memo);
    if (part.size() > 2) {
      std::uniform_int_distribution<std::size_t> pick(1, part.size() - 2);
      top.t = part[pick(rng)];
    }
  }
  SolenoidPoint x;
  x.coords.assign(depth + 1, Vertex{});
  x.coords[depth] = top;
  for (std::size_t i = depth; i > 0; --i) x.coords[i - 1] = apply_g(system, x.coords[i]);
  return x;
}

}  // namespace solenoidk
