#include <doctest.h>

#include <set>

#include "solenoidk/germ_quotient.hpp"

using namespace solenoidk;

namespace {

SubstitutionSystem sys(std::vector<std::string> edges, std::vector<std::string> images) {
  return SubstitutionSystem::from_strings(edges, images);
}

std::set<std::string> germ_names(const SubstitutionSystem& s) {
  std::set<std::string> out;
  for (const auto& g : admissible_germs(s)) out.insert(germ_name(s, g));
  return out;
}

// Every two-letter factor of the language up to depth n: the admissible
// germs must lie inside it.
std::set<Germ> language_pairs(const SubstitutionSystem& s, unsigned depth) {
  std::set<Germ> out;
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    const Word w = iterate_word(s, e, depth);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) out.insert({w[i], w[i + 1]});
  }
  return out;
}

}  // namespace

TEST_CASE("admissible germs") {
  CHECK(germ_names(sys({"a", "b"}, {"aab", "ab"})) == std::set<std::string>{"aa", "ab", "ba"});
  CHECK(germ_names(sys({"a"}, {"aa"})) == std::set<std::string>{"aa"});
  CHECK(germ_names(sys({"a", "b"}, {"ab", "ab"})) == std::set<std::string>{"ab", "ba"});
  CHECK(germ_names(sys({"a", "b"}, {"ab", "ba"})) == std::set<std::string>{"aa", "ab", "ba", "bb"});
}

TEST_CASE("germ closure and language containment") {
  for (const auto& s : {sys({"a", "b"}, {"aab", "ab"}), sys({"a", "b"}, {"ab", "ab"}),
                        sys({"a", "b", "c"}, {"abc", "ac", "cab"}), sys({"a", "b"}, {"ab", "ba"})}) {
    const QuotientPresentation q(s);
    const auto lang = language_pairs(s, 4);
    for (std::size_t i = 0; i < q.germ_count(); ++i) {
      CHECK(q.tau(i) < q.germ_count());
      CHECK(lang.count(q.germs()[i]) == 1);
    }
  }
}

TEST_CASE("germ map") {
  const auto s = sys({"a", "b"}, {"aab", "ab"});
  const QuotientPresentation q(s);
  const Germ ba{1, 0};
  for (const auto& g : q.germs()) CHECK(q.apply_tau(g) == ba);
  CHECK_THROWS_AS(q.apply_tau({1, 1}), Error);
  CHECK(germ_map(sys({"a"}, {"aa"}), {0, 0}) == Germ{0, 0});
}

TEST_CASE("hausdorff and local homeomorphism") {
  CHECK_FALSE(is_hausdorff(sys({"a", "b"}, {"aab", "ab"})));
  CHECK(is_hausdorff(sys({"a", "b"}, {"ab", "ab"})));
  CHECK(is_hausdorff(sys({"a"}, {"aa"})));

  CHECK(is_local_homeomorphism(sys({"a"}, {"aa"})));
  CHECK(is_local_homeomorphism(sys({"a"}, {"aaa"})));
  CHECK_FALSE(is_local_homeomorphism(sys({"a", "b"}, {"ab", "ab"})));
  CHECK_FALSE(is_local_homeomorphism(sys({"a", "b"}, {"aab", "ab"})));
}

TEST_CASE("non-separated pairs") {
  const QuotientPresentation q(sys({"a", "b"}, {"aab", "ab"}));
  // aa-ab share l, aa-ba share r, ab-ba are separated.
  CHECK(q.non_separated_pairs().size() == 2);
  CHECK(q.non_separated(0, 1));
  CHECK(q.non_separated(0, 2));
  CHECK_FALSE(q.non_separated(1, 2));
}

TEST_CASE("flattening constant") {
  CHECK(k0_constant(sys({"a", "b"}, {"aab", "ab"})) == 1);
  CHECK(k0_constant(sys({"a"}, {"aa"})) == 0);
  CHECK(k0_constant(sys({"a", "b"}, {"ab", "ab"})) == 1);
  try {
    k0_constant(sys({"a", "b"}, {"ab", "ba"}));
    FAIL("expected NoFlattening");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFlattening);
  }
}

TEST_CASE("single periodic germ after collapse") {
  for (const auto& s : {sys({"a", "b"}, {"aab", "ab"}), sys({"a", "b"}, {"ab", "ab"}), sys({"a"}, {"aa"}),
                        sys({"a", "b"}, {"aab", "abb"})}) {
    const QuotientPresentation q(s);
    const std::size_t k0 = k0_constant(q);
    CHECK(tau_periodic_germs(q).size() == 1);
    CHECK(tau_periodic_germs(q).front() == flattened_germ(q, k0));
  }
}

TEST_CASE("circle detection") {
  CHECK(circle_cover_degree(QuotientPresentation(sys({"a"}, {"aa"}))) == Integer(2));
  CHECK(circle_cover_degree(QuotientPresentation(sys({"a", "b"}, {"ab", "ab"}))) == Integer(2));
  CHECK_FALSE(circle_cover_degree(QuotientPresentation(sys({"a", "b"}, {"aab", "ab"}))));
}

TEST_CASE("covering time") {
  CHECK(covering_time(sys({"a"}, {"aa"}), 0) == 1);
  const auto s = sys({"a", "b"}, {"aab", "ab"});
  CHECK(covering_time(s, 0) == 1);
  CHECK(covering_time(s, 1) == 1);
  CHECK(covering_time(sys({"a", "b", "c"}, {"ab", "c", "a"}), 1) >= 2);
}
