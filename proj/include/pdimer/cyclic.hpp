#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdimer/errors.hpp"

namespace pdimer {

// Index conventions, used everywhere: the circular graph C has vertices
// C_0 = {1..n} and edges C_1 = {1..n}, both clockwise, with edge i joining
// vertices i-1 and i. All indices are 1-based; [a,b] is the closed cyclic
// interval {a, a+1, ..., b} reduced mod n, and (a,b)_0 = [a, b-1] as a set
// of vertices (empty exactly when a = b).

// Reduce an arbitrary integer to the representative in 1..n.
int cyc_reduce(long long value, int n);

class CycIdx {
 public:
  CycIdx(int value, int n);
  static CycIdx reduced(long long value, int n) { return CycIdx(cyc_reduce(value, n), n); }

  int value() const { return value_; }
  int modulus() const { return n_; }
  CycIdx shifted(long long delta) const { return reduced(value_ + delta, n_); }

  friend bool operator==(const CycIdx& a, const CycIdx& b) {
    return a.value_ == b.value_ && a.n_ == b.n_;
  }
  friend bool operator!=(const CycIdx& a, const CycIdx& b) { return !(a == b); }

 private:
  int value_;
  int n_;
};

// Vector of n nonnegative integers indexed by C_0. Carries arrow weights,
// degrees and gradings. Addition checks for overflow instead of wrapping.
class Weight {
 public:
  explicit Weight(int n);
  static Weight zero(int n) { return Weight(n); }

  int modulus() const { return static_cast<int>(counts_.size()); }
  std::int64_t at(int vertex) const;
  void set(int vertex, std::int64_t value);
  void add_at(int vertex, std::int64_t delta);

  Weight& operator+=(const Weight& other);
  friend Weight operator+(Weight a, const Weight& b) {
    a += b;
    return a;
  }
  friend bool operator==(const Weight& a, const Weight& b) { return a.counts_ == b.counts_; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }

  bool is_zero() const;
  std::int64_t min_component() const;
  std::int64_t max_component() const;
  std::int64_t total() const;
  // Sorted list of vertices with a positive count.
  std::vector<int> support() const;
  bool support_contains(int vertex) const { return at(vertex) > 0; }

  std::string to_string() const;

 private:
  std::vector<std::int64_t> counts_;  // counts_[i] is the count at vertex i+1
};

// The 0/1 weight with support (a,b)_0 = [a, b-1]; zero when a = b.
Weight interval_vertices(CycIdx a, CycIdx b);
Weight interval_vertices(int a, int b, int n);

// The all-ones vector C_0.
Weight full_weight(int n);

// Componentwise a - b, or nullopt if any component would go negative.
struct ScalarSplit {
  Weight base;
  std::int64_t scalar;
};

// Decompose w = base + N*C_0 with min(base) = 0.
ScalarSplit weight_sub_scalar(const Weight& w);

// a - b componentwise; throws TheoremViolationError if any component is negative.
Weight weight_minus(const Weight& a, const Weight& b, const std::string& context);

// w + m*C_0.
Weight weight_plus_scalar(const Weight& w, std::int64_t m);

}  // namespace pdimer
