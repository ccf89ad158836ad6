#include "pdimer/cmrank1.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace pdimer {

RimProfile rim_profile(const KSubset& I) {
  int n = I.n();
  RimProfile p;
  p.heights.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i)
    p.heights[static_cast<std::size_t>(i)] =
        p.heights[static_cast<std::size_t>(i - 1)] + (I.contains(i) ? -1 : +1);
  return p;
}

Weight deg_min_formula(const KSubset& I, const KSubset& J) {
  if (I.n() != J.n() || I.k() != J.k())
    throw InvalidInputError("deg_min_formula: mismatched (k,n)");
  int n = I.n();
  if (I == J) return Weight::zero(n);
  if (!is_weakly_separated(I, J)) throw InvalidInputError("deg_min_formula: crossing pair");
  ABPair ab = ab_pair(I, J);
  std::vector<int> bs = I.minus(J);  // listed clockwise starting at b
  std::vector<int> as = J.minus(I);  // listed anticlockwise starting at a
  auto rotate_to = [n](std::vector<int>& v, int first) {
    std::sort(v.begin(), v.end(), [&](int x, int y) {
      return cyc_reduce(x - first, n) < cyc_reduce(y - first, n);
    });
  };
  rotate_to(bs, ab.b);  // clockwise from b
  rotate_to(as, ab.a);
  std::reverse(as.begin() + 1, as.end());  // anticlockwise from a
  Weight deg(n);
  for (std::size_t t = 0; t < bs.size(); ++t) deg += interval_vertices(bs[t], as[t], n);
  return deg;
}

Weight deg_min_oracle(const KSubset& I, const KSubset& J) {
  if (I.n() != J.n() || I.k() != J.k())
    throw InvalidInputError("deg_min_oracle: mismatched (k,n)");
  int n = I.n();
  RimProfile hi = rim_profile(I);
  RimProfile hj = rim_profile(J);
  std::vector<std::int64_t> d(static_cast<std::size_t>(n));
  std::int64_t m = 0;
  for (int v = 1; v <= n; ++v) {
    int diff = hj.heights[static_cast<std::size_t>(v)] - hi.heights[static_cast<std::size_t>(v)];
    if (diff % 2 != 0)
      throw TheoremViolationError("deg_min_oracle: parity violation at vertex " +
                                  std::to_string(v));
    d[static_cast<std::size_t>(v - 1)] = diff / 2;
    m = std::max(m, -d[static_cast<std::size_t>(v - 1)]);
  }
  Weight deg(n);
  for (int v = 1; v <= n; ++v) deg.set(v, d[static_cast<std::size_t>(v - 1)] + m);
  return deg;
}

bool leq_v(const KSubset& I, const KSubset& J, const std::vector<int>& V) {
  if (I == J) return true;
  Weight deg = deg_min_formula(I, J);
  for (int v : V)
    if (deg.at(v) > 0) return false;
  return true;
}

namespace {

// Canonical form of the monomial x^a y^b as t^m * (pure power), reducing
// x^n = t^(n-k) (full positive loop), y^n = t^k, and x^c = t^(c-k) y^(n-c)
// for c > k. Returns (m, c) where c in [-(n-1), k] encodes x^c for c >= 0
// and y^(-c) for c < 0, with y-powers kept only when strictly cheaper.
std::pair<std::int64_t, std::int64_t> canonical_monomial(std::int64_t a, std::int64_t b, int n,
                                                         int k) {
  std::int64_t m = std::min(a, b);
  a -= m;
  b -= m;
  if (b > 0) {
    // pure y^b: reduce full loops y^n = t^k
    m += (b / n) * k;
    b %= n;
    // y^c with c <= n-k stays; c > n-k gives y^c = t^(c-(n-k)) x^(n-c)
    if (b > n - k) {
      m += b - (n - k);
      a = n - b;
      b = 0;
    }
  }
  if (a > 0) {
    m += (a / n) * (n - k);
    a %= n;
    if (a > k) {
      m += a - k;
      b = n - a;
      a = 0;
    }
  }
  // x^k = y^(n-k): collapse the boundary case to the x side.
  if (b > 0 && b == n - k) {
    a = k;
    b = 0;
  }
  return {m, a > 0 ? a : -b};
}

}  // namespace

std::int64_t b_normal_count(int n, int k, int i, int j, std::int64_t d) {
  if (n < 2 || k < 1 || k > n - 1) throw InvalidInputError("b_normal_count: bad (k,n)");
  CycIdx ci(i, n), cj(j, n);
  if (d < 0) throw InvalidInputError("b_normal_count: d must be nonnegative");
  // Monomials x^a y^b are paths from j to i when a - b = i - j (mod n).
  // Enumerate a generous box and dedupe canonical forms.
  std::int64_t bound = (d + 2) * n + 2 * n;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::int64_t count = 0;
  for (std::int64_t a = 0; a <= bound; ++a) {
    for (std::int64_t b = 0; b <= bound; ++b) {
      if (cyc_reduce(j + a - b, n) != i) continue;
      auto canon = canonical_monomial(a, b, n, k);
      if (canon.first > d) continue;
      if (seen.insert(canon).second) ++count;
    }
  }
  return count;
}

BPresentation b_presentation(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw InvalidInputError("b_presentation: bad (k,n)");
  BPresentation p;
  p.n = n;
  p.k = k;
  for (int v = 1; v <= n; ++v) {
    // Loop at v through v-1 equals loop at v through v+1.
    BRelation comm;
    comm.family = "commutation";
    comm.vertex = v;
    comm.lhs = {-v, v};                                        // y_v then x_v
    comm.rhs = {cyc_reduce(v + 1, n), -cyc_reduce(v + 1, n)};  // x_{v+1} then y_{v+1}
    p.relations.push_back(comm);

    BRelation pow;
    pow.family = "power";
    pow.vertex = v;
    for (int t = 1; t <= k; ++t) pow.lhs.push_back(cyc_reduce(v + t, n));  // x^k from v
    for (int t = 0; t < n - k; ++t) pow.rhs.push_back(-cyc_reduce(v - t, n));  // y^(n-k) from v
    p.relations.push_back(pow);
  }
  return p;
}

}  // namespace pdimer
