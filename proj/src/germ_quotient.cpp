#include "solenoidk/germ_quotient.hpp"

#include <algorithm>
#include <set>

namespace solenoidk {

std::string germ_name(const SubstitutionSystem& system, const Germ& g) {
  if (system.single_character_names()) return system.edge_name(g.l) + system.edge_name(g.r);
  return system.edge_name(g.l) + "|" + system.edge_name(g.r);
}

Germ germ_map(const SubstitutionSystem& system, const Germ& g) {
  return {system.last_letter(g.l), system.first_letter(g.r)};
}

std::vector<Germ> admissible_germs(const SubstitutionSystem& system) {
  require_valid(system);
  std::set<Germ> found;
  std::vector<Germ> frontier;
  for (const auto& w : system.images())
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (found.insert({w[i], w[i + 1]}).second) frontier.push_back({w[i], w[i + 1]});
  while (!frontier.empty()) {
    const Germ g = germ_map(system, frontier.back());
    frontier.pop_back();
    if (found.insert(g).second) frontier.push_back(g);
  }
  return {found.begin(), found.end()};
}

QuotientPresentation::QuotientPresentation(SubstitutionSystem system)
    : system_(std::move(system)), germs_(admissible_germs(system_)) {
  tau_.reserve(germs_.size());
  for (const auto& g : germs_) tau_.push_back(*index_of(germ_map(system_, g)));
}

std::optional<std::size_t> QuotientPresentation::index_of(const Germ& g) const {
  auto it = std::lower_bound(germs_.begin(), germs_.end(), g);
  if (it == germs_.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - germs_.begin());
}

Germ QuotientPresentation::apply_tau(const Germ& g) const {
  auto i = index_of(g);
  if (!i)
    throw Error(ErrorCode::InadmissibleGerm,
                "germ (" + system_.edge_name(g.l) + ", " + system_.edge_name(g.r) + ") is not admissible");
  return germs_[tau_[*i]];
}

Germ germ_map_checked(const QuotientPresentation& q, const Germ& g) { return q.apply_tau(g); }

bool QuotientPresentation::non_separated(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  const Germ& a = germs_.at(i);
  const Germ& b = germs_.at(j);
  return (a.l == b.l) != (a.r == b.r);
}

std::vector<std::pair<std::size_t, std::size_t>> QuotientPresentation::non_separated_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < germs_.size(); ++i)
    for (std::size_t j = i + 1; j < germs_.size(); ++j)
      if (non_separated(i, j)) out.emplace_back(i, j);
  return out;
}

bool is_hausdorff(const QuotientPresentation& q) { return q.non_separated_pairs().empty(); }

bool is_hausdorff(const SubstitutionSystem& system) { return is_hausdorff(QuotientPresentation(system)); }

bool is_local_homeomorphism(const SubstitutionSystem& system) {
  require_valid(system);
  const std::size_t n = system.edge_count();
  std::vector<bool> in_hit(n, false), out_hit(n, false);
  for (EdgeId e = 0; e < n; ++e) {
    if (in_hit[system.last_letter(e)] || out_hit[system.first_letter(e)]) return false;
    in_hit[system.last_letter(e)] = true;
    out_hit[system.first_letter(e)] = true;
  }
  if (n == 1) return true;
  // An interior vertex of an image word sends an arc onto two of the 2n > 2
  // prongs of the star, which is not an open set.
  return std::all_of(system.images().begin(), system.images().end(),
                     [](const Word& w) { return w.size() == 1; });
}

std::size_t k0_constant(const QuotientPresentation& q) {
  const std::size_t n = q.germ_count();
  std::vector<std::size_t> current(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = i;
  for (std::size_t k = 0; k <= n; ++k) {
    if (std::all_of(current.begin(), current.end(), [&](std::size_t x) { return x == current.front(); }))
      return k;
    for (auto& x : current) x = q.tau(x);
  }
  throw Error(ErrorCode::NoFlattening, "tau eventually permutes more than one germ; no flattening constant exists");
}

std::size_t k0_constant(const SubstitutionSystem& system) { return k0_constant(QuotientPresentation(system)); }

std::size_t flattened_germ(const QuotientPresentation& q, std::size_t k0) {
  std::size_t x = 0;
  for (std::size_t i = 0; i < k0; ++i) x = q.tau(x);
  return x;
}

std::vector<std::size_t> tau_periodic_germs(const QuotientPresentation& q) {
  std::vector<std::size_t> out;
  const std::size_t n = q.germ_count();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t x = q.tau(i);
    for (std::size_t step = 1; step <= n && x != i; ++step) x = q.tau(x);
    if (x == i) out.push_back(i);
  }
  return out;
}

std::optional<Integer> circle_cover_degree(const QuotientPresentation& q) {
  const SubstitutionSystem& s = q.system();
  const std::size_t n = s.edge_count();
  if (q.germ_count() != n || !is_hausdorff(q)) return std::nullopt;
  std::vector<std::optional<EdgeId>> next(n);
  for (const auto& g : q.germs()) {
    if (next[g.l]) return std::nullopt;
    next[g.l] = g.r;
  }
  EdgeId e = 0;
  for (std::size_t step = 0; step < n; ++step) {
    if (!next[e]) return std::nullopt;
    e = *next[e];
    if (e == 0 && step + 1 < n) return std::nullopt;
  }
  if (e != 0) return std::nullopt;
  Integer total = 0;
  for (const auto& w : s.images()) total += static_cast<unsigned long>(w.size());
  if (total % static_cast<unsigned long>(n) != 0) return std::nullopt;
  return Integer(total / static_cast<unsigned long>(n));
}

std::size_t covering_time(const SubstitutionSystem& system, EdgeId e) {
  require_valid(system);
  if (e >= system.edge_count()) throw Error(ErrorCode::UnknownEdge, "edge index out of range");
  const std::size_t bound = system.edge_count() * wielandt_bound(system.edge_count());
  std::vector<bool> support(system.edge_count(), false);
  for (EdgeId y : system.image(e)) support[y] = true;
  for (std::size_t n = 1; n <= bound; ++n) {
    if (std::all_of(support.begin(), support.end(), [](bool b) { return b; })) return n;
    std::vector<bool> next(system.edge_count(), false);
    for (EdgeId x = 0; x < support.size(); ++x)
      if (support[x])
        for (EdgeId y : system.image(x)) next[y] = true;
    support = std::move(next);
  }
  throw Error(ErrorCode::NeverCovers, "g^N(" + system.edge_name(e) + ") misses an edge for every N up to " +
                                          std::to_string(bound));
}

}  // namespace solenoidk
