#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pdimer/collections.hpp"

using namespace pdimer;

namespace {

KSubset ks(std::vector<int> e, int n) { return KSubset(std::move(e), n); }

// Brute-force crossing witness over all cyclically ordered 4-tuples.
bool crosses_brute(const KSubset& I, const KSubset& J) {
  int n = I.n();
  auto in = [](const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  std::vector<int> p = I.minus(J), q = J.minus(I);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d) {
          // a,b,c,d clockwise means b,c,d occur in that order after a
          int rb = cyc_reduce(b - a, n), rc = cyc_reduce(c - a, n), rd = cyc_reduce(d - a, n);
          if (!(0 < rb && rb < rc && rc < rd)) continue;
          if (in(p, a) && in(q, b) && in(p, c) && in(q, d)) return true;
        }
  return false;
}

}  // namespace

TEST_CASE("weak separation matches the brute-force definition") {
  SUBCASE("reflexive") {
    KSubset I = ks({1, 5, 6}, 7);
    CHECK(is_weakly_separated(I, I));
  }
  SUBCASE("crossing pair in (2,4)") {
    CHECK_FALSE(is_weakly_separated(ks({1, 3}, 4), ks({2, 4}, 4)));
  }
  SUBCASE("pair from the (3,7) figure") {
    CHECK(is_weakly_separated(ks({1, 5, 6}, 7), ks({4, 5, 6}, 7)));
  }
  SUBCASE("exhaustive agreement on (2,5) and (3,6)") {
    for (auto [k, n] : {std::pair{2, 5}, std::pair{3, 6}}) {
      auto subsets = all_k_subsets(k, n);
      for (const KSubset& I : subsets)
        for (const KSubset& J : subsets)
          CHECK(is_weakly_separated(I, J) == !crosses_brute(I, J));
    }
  }
  SUBCASE("symmetry") {
    auto subsets = all_k_subsets(3, 7);
    for (std::size_t i = 0; i < subsets.size(); i += 3)
      for (std::size_t j = 0; j < subsets.size(); j += 3)
        CHECK(is_weakly_separated(subsets[i], subsets[j]) ==
              is_weakly_separated(subsets[j], subsets[i]));
  }
}

TEST_CASE("boundary labels E_j = [j-k+1, j]") {
  CHECK(boundary_label(1, 3, 7) == ks({6, 7, 1}, 7));
  CHECK(boundary_label(4, 3, 7) == ks({2, 3, 4}, 7));
  CHECK(boundary_label(7, 3, 7) == ks({5, 6, 7}, 7));
  CHECK(boundary_label(1, 2, 4) == ks({4, 1}, 4));
  // Intervals are weakly separated from every subset.
  for (const KSubset& s : all_k_subsets(3, 7))
    for (int j = 1; j <= 7; ++j) CHECK(is_weakly_separated(boundary_label(j, 3, 7), s));
}

TEST_CASE("ab_pair on the worked examples") {
  SUBCASE("single swap in (3,7)") {
    ABPair ab = ab_pair(ks({5, 6, 7}, 7), ks({4, 5, 6}, 7));
    CHECK(ab.a == 4);
    CHECK(ab.b == 7);
  }
  SUBCASE("disjoint triples") {
    ABPair ab = ab_pair(ks({1, 2, 4}, 7), ks({5, 6, 7}, 7));
    CHECK(ab.a == 7);
    CHECK(ab.b == 1);
  }
  SUBCASE("adjacent 2-subsets") {
    ABPair ab = ab_pair(ks({1, 2}, 4), ks({2, 3}, 4));
    CHECK(ab.a == 3);
    CHECK(ab.b == 1);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(ab_pair(ks({1, 2}, 4), ks({1, 2}, 4)), InvalidInputError);
    CHECK_THROWS_AS(ab_pair(ks({1, 3}, 4), ks({2, 4}, 4)), InvalidInputError);
  }
  SUBCASE("the two open intervals are disjoint") {
    auto subsets = all_k_subsets(3, 6);
    for (const KSubset& I : subsets)
      for (const KSubset& J : subsets) {
        if (I == J || !is_weakly_separated(I, J)) continue;
        ABPair f = ab_pair(I, J);
        ABPair g = ab_pair(J, I);
        Weight sum = interval_vertices(f.a, f.b, 6) + interval_vertices(g.a, g.b, 6);
        CHECK(sum.max_component() <= 1);
      }
  }
}

TEST_CASE("build_maximal_collection") {
  SUBCASE("k=2, n=4 has size 5 with exactly one diagonal") {
    // Only one pair of 2-subsets of a 4-set crosses, so the two maximal
    // families are "all six but one diagonal": size 5 = k(n-k)+1.
    Collection C = build_maximal_collection(2, 4);
    CHECK(C.size() == 5);
    CHECK(C.pairwise_weakly_separated());
    CHECK(C.has_all_boundary_labels());
    CHECK(C.is_maximal());
    bool d13 = C.contains(ks({1, 3}, 4));
    bool d24 = C.contains(ks({2, 4}, 4));
    CHECK(d13 != d24);
  }
  SUBCASE("the (3,7) figure collection is returned unchanged") {
    std::vector<KSubset> labels = {ks({5, 6, 7}, 7), ks({6, 7, 1}, 7), ks({7, 1, 2}, 7),
                                   ks({1, 2, 3}, 7), ks({2, 3, 4}, 7), ks({3, 4, 5}, 7),
                                   ks({4, 5, 6}, 7), ks({1, 5, 6}, 7), ks({1, 5, 7}, 7),
                                   ks({1, 4, 5}, 7), ks({1, 4, 7}, 7), ks({2, 4, 5}, 7),
                                   ks({1, 2, 4}, 7)};
    Collection seed(3, 7, labels);
    Collection C = build_maximal_collection(3, 7, seed);
    CHECK(C == seed);
    CHECK(C.is_maximal());
  }
  SUBCASE("k=1 gives all singletons") {
    Collection C = build_maximal_collection(1, 5);
    CHECK(C.size() == 5);
  }
  SUBCASE("crossing seed is rejected") {
    Collection bad(2, 4, {ks({1, 3}, 4), ks({2, 4}, 4)});
    CHECK_THROWS_AS(build_maximal_collection(2, 4, bad), InvalidInputError);
  }
}

TEST_CASE("enumerate_maximal_collections") {
  SUBCASE("(2,4): two collections differing by the diagonal") {
    auto cs = enumerate_maximal_collections(2, 4, 10);
    CHECK(cs.size() == 2);
  }
  SUBCASE("(2,5): pentagon triangulation count") {
    auto cs = enumerate_maximal_collections(2, 5, 100);
    CHECK(cs.size() == 5);
  }
  SUBCASE("(1,5): unique") {
    auto cs = enumerate_maximal_collections(1, 5, 10);
    CHECK(cs.size() == 1);
  }
  SUBCASE("all members pairwise separated, all E_j present, constant size") {
    for (auto [k, n] : {std::pair{2, 6}, std::pair{3, 6}}) {
      auto cs = enumerate_maximal_collections(k, n, 1000);
      CHECK(!cs.empty());
      std::set<int> sizes;
      for (const Collection& C : cs) {
        CHECK(C.pairwise_weakly_separated());
        CHECK(C.has_all_boundary_labels());
        CHECK(C.is_maximal());
        sizes.insert(C.size());
      }
      CHECK(sizes.size() == 1);  // observed constant cardinality, recorded not assumed
    }
  }
  SUBCASE("resource guard") {
    CHECK_THROWS_AS(enumerate_maximal_collections(6, 14, 1), ResourceError);
  }
}
