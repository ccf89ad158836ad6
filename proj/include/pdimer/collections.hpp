#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdimer/cyclic.hpp"

namespace pdimer {

// A k-element subset of C_1 = {1..n}, kept sorted.
class KSubset {
 public:
  KSubset(std::vector<int> elements, int n);

  int k() const { return static_cast<int>(elems_.size()); }
  int n() const { return n_; }
  const std::vector<int>& elements() const { return elems_; }
  bool contains(int e) const;

  // Elements of this \ other, in increasing order.
  std::vector<int> minus(const KSubset& other) const;
  KSubset with_swap(int remove, int add) const;
  // 0/1 weight vector with this subset as support.
  Weight indicator() const;

  friend bool operator==(const KSubset& a, const KSubset& b) {
    return a.n_ == b.n_ && a.elems_ == b.elems_;
  }
  friend bool operator!=(const KSubset& a, const KSubset& b) { return !(a == b); }
  friend bool operator<(const KSubset& a, const KSubset& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.elems_ < b.elems_;
  }

  // Compact form "145" when n <= 9, otherwise "1.4.12".
  std::string to_string() const;

 private:
  std::vector<int> elems_;
  int n_;
};

// True iff there are no a,b,c,d in clockwise cyclic order with a,c in I-J and
// b,d in J-I. Reflexive and symmetric.
bool is_weakly_separated(const KSubset& I, const KSubset& J);

// E_j = [j-k+1, j], the label of the boundary region between marked points
// j and j+1.
KSubset boundary_label(int j, int k, int n);

struct ABPair {
  int a;  // a(I,J) = j_2, clockwise end of the minimal interval around J-I
  int b;  // b(I,J) = i_1, anticlockwise end of the minimal interval around I-J
};

// The pair of Def "a(I,J), b(I,J)" for a distinct weakly separated pair.
ABPair ab_pair(const KSubset& I, const KSubset& J);

// Smallest cyclic interval [lo,hi] containing S (sorted, nonempty); ties
// between equally large circular gaps are broken toward a gap meeting
// `avoid`, so that the returned interval is disjoint from `avoid` whenever
// one exists.
std::pair<int, int> min_cyclic_interval(const std::vector<int>& S, const std::vector<int>& avoid,
                                        int n);

class Collection {
 public:
  Collection(int k, int n, std::vector<KSubset> members);

  int k() const { return k_; }
  int n() const { return n_; }
  const std::vector<KSubset>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(const KSubset& s) const;
  // Index into members() or -1.
  int index_of(const KSubset& s) const;

  bool pairwise_weakly_separated() const;
  bool has_all_boundary_labels() const;
  // True iff no k-subset outside the collection is weakly separated from
  // every member (direct sweep over all C(n,k) subsets).
  bool is_maximal() const;

  friend bool operator==(const Collection& a, const Collection& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.members_ == b.members_;
  }
  friend bool operator<(const Collection& a, const Collection& b) {
    return a.members_ < b.members_;
  }

 private:
  int k_;
  int n_;
  std::vector<KSubset> members_;  // sorted
};

// Grow the boundary labels (plus an optional seed) to a maximal weakly
// separated collection, adding candidates in lexicographic order.
Collection build_maximal_collection(int k, int n,
                                    const std::optional<Collection>& seed = std::nullopt);

// All maximal weakly separated collections, in canonical order, up to
// `limit`. Guard: C(n,k) <= 400.
std::vector<Collection> enumerate_maximal_collections(int k, int n, std::size_t limit);

// All k-subsets of 1..n in lexicographic order.
std::vector<KSubset> all_k_subsets(int k, int n);

std::uint64_t binomial(int n, int k);

}  // namespace pdimer
