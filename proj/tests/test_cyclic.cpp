#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdimer/cyclic.hpp"

using namespace pdimer;

namespace {

Weight weight_from(std::vector<std::int64_t> counts) {
  Weight w(static_cast<int>(counts.size()));
  for (int v = 1; v <= w.modulus(); ++v) w.set(v, counts[static_cast<std::size_t>(v - 1)]);
  return w;
}

}  // namespace

TEST_CASE("interval_vertices unrolls (a,b)_0 = [a, b-1]") {
  CHECK(interval_vertices(1, 4, 7).support() == std::vector<int>{1, 2, 3});
  // (7,1)_0 = [7,7]
  CHECK(interval_vertices(7, 1, 7).support() == std::vector<int>{7});
  CHECK(interval_vertices(3, 3, 7).is_zero());
  CHECK_THROWS_AS(interval_vertices(CycIdx(1, 7), CycIdx(1, 6)), InvalidInputError);
}

TEST_CASE("full_weight") {
  CHECK(full_weight(3) == weight_from({1, 1, 1}));
  CHECK(full_weight(7).support() == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
  CHECK_THROWS_AS(full_weight(0), InvalidInputError);
}

TEST_CASE("weight_sub_scalar") {
  ScalarSplit s = weight_sub_scalar(weight_from({2, 3, 2}));
  CHECK(s.base == weight_from({0, 1, 0}));
  CHECK(s.scalar == 2);
  ScalarSplit z = weight_sub_scalar(Weight::zero(4));
  CHECK(z.base.is_zero());
  CHECK(z.scalar == 0);
  Weight w = weight_from({1, 2, 2, 3, 2, 1, 0});
  ScalarSplit t = weight_sub_scalar(w);
  CHECK(t.base == w);
  CHECK(t.scalar == 0);
}

TEST_CASE("open intervals partition C_0") {
  int n = 9;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if (a == b) continue;
      CHECK(interval_vertices(a, b, n) + interval_vertices(b, a, n) == full_weight(n));
    }
}

TEST_CASE("interval_vertices is rotation equivariant") {
  int n = 8;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int shift = 1; shift < n; ++shift) {
        Weight w = interval_vertices(a, b, n);
        Weight ws = interval_vertices(cyc_reduce(a + shift, n), cyc_reduce(b + shift, n), n);
        for (int v = 1; v <= n; ++v) CHECK(w.at(v) == ws.at(cyc_reduce(v + shift, n)));
      }
}

TEST_CASE("weight_sub_scalar commutes with adding multiples of C_0") {
  Weight w = weight_from({0, 2, 1, 0, 3});
  for (int mult = 0; mult <= 3; ++mult) {
    ScalarSplit s = weight_sub_scalar(weight_plus_scalar(w, mult));
    CHECK(s.base == w);
    CHECK(s.scalar == mult);
  }
}

TEST_CASE("weights refuse negative components and overflow") {
  Weight w(3);
  CHECK_THROWS_AS(w.set(1, -1), InvalidInputError);
  w.set(1, std::int64_t{1} << 62);
  Weight v(3);
  v.set(1, std::int64_t{1} << 62);
  CHECK_THROWS_AS(w += v, InvalidInputError);
}
