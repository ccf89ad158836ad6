#include "pdimer/collections.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pdimer {

KSubset::KSubset(std::vector<int> elements, int n) : elems_(std::move(elements)), n_(n) {
  if (n < 1) throw InvalidInputError("KSubset: n must be at least 1");
  std::sort(elems_.begin(), elems_.end());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] < 1 || elems_[i] > n) throw InvalidInputError("KSubset: element out of range");
    if (i > 0 && elems_[i] == elems_[i - 1])
      throw InvalidInputError("KSubset: repeated element");
  }
}

bool KSubset::contains(int e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

std::vector<int> KSubset::minus(const KSubset& other) const {
  std::vector<int> out;
  std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                      std::back_inserter(out));
  return out;
}

KSubset KSubset::with_swap(int remove, int add) const {
  if (!contains(remove) || contains(add))
    throw InvalidInputError("KSubset::with_swap: bad swap");
  std::vector<int> e = elems_;
  e.erase(std::find(e.begin(), e.end(), remove));
  e.push_back(add);
  return KSubset(std::move(e), n_);
}

Weight KSubset::indicator() const {
  Weight w(n_);
  for (int e : elems_) w.set(e, 1);
  return w;
}

std::string KSubset::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (n_ > 9 && i > 0) os << ".";
    os << elems_[i];
  }
  return os.str();
}

bool is_weakly_separated(const KSubset& I, const KSubset& J) {
  if (I.n() != J.n() || I.k() != J.k())
    throw InvalidInputError("is_weakly_separated: mismatched (k,n)");
  std::vector<int> p = I.minus(J);  // marks of type P
  std::vector<int> q = J.minus(I);  // marks of type Q
  if (p.empty() || q.empty()) return true;
  // Walk the circle once and collapse runs; the pair crosses iff the circular
  // word over {P,Q} has at least four blocks.
  int n = I.n();
  std::vector<int> word;  // +1 for P, -1 for Q
  for (int v = 1; v <= n; ++v) {
    int mark = 0;
    if (std::binary_search(p.begin(), p.end(), v)) mark = +1;
    if (std::binary_search(q.begin(), q.end(), v)) mark = -1;
    if (mark == 0) continue;
    if (word.empty() || word.back() != mark) word.push_back(mark);
  }
  if (word.size() > 2 && word.front() == word.back()) word.pop_back();
  return word.size() <= 2;
}

KSubset boundary_label(int j, int k, int n) {
  if (k < 1 || k > n) throw InvalidInputError("boundary_label: k out of range");
  CycIdx cj(j, n);
  std::vector<int> elems;
  for (int t = j - k + 1; t <= j; ++t) elems.push_back(cyc_reduce(t, n));
  return KSubset(std::move(elems), n);
}

std::pair<int, int> min_cyclic_interval(const std::vector<int>& S, const std::vector<int>& avoid,
                                        int n) {
  if (S.empty()) throw InvalidInputError("min_cyclic_interval: empty set");
  std::vector<int> s = S;
  std::sort(s.begin(), s.end());
  // Gap after s[i] runs from s[i]+1 to s[i+1]-1 (cyclically).
  std::size_t m = s.size();
  long long best_len = -1;
  std::size_t best_i = 0;
  bool best_meets_avoid = false;
  std::set<int> avoid_set(avoid.begin(), avoid.end());
  for (std::size_t i = 0; i < m; ++i) {
    int from = s[i];
    int to = s[(i + 1) % m];
    long long len = (to - from - 1 + n) % n;  // number of vertices strictly between
    bool meets = false;
    for (int t = 1; t <= len; ++t) {
      if (avoid_set.count(cyc_reduce(from + t, n))) {
        meets = true;
        break;
      }
    }
    if (len > best_len || (len == best_len && meets && !best_meets_avoid)) {
      best_len = len;
      best_i = i;
      best_meets_avoid = meets;
    }
  }
  // Interval is the complement of the chosen gap.
  int lo = s[(best_i + 1) % m];
  int hi = s[best_i];
  return {lo, hi};
}

ABPair ab_pair(const KSubset& I, const KSubset& J) {
  if (I.n() != J.n() || I.k() != J.k()) throw InvalidInputError("ab_pair: mismatched (k,n)");
  if (I == J) throw InvalidInputError("ab_pair: I and J must be distinct");
  if (!is_weakly_separated(I, J)) throw InvalidInputError("ab_pair: crossing pair");
  std::vector<int> imj = I.minus(J);
  std::vector<int> jmi = J.minus(I);
  auto [i1, i2] = min_cyclic_interval(imj, jmi, I.n());
  auto [j1, j2] = min_cyclic_interval(jmi, imj, I.n());
  (void)i2;
  (void)j1;
  return ABPair{j2, i1};
}

Collection::Collection(int k, int n, std::vector<KSubset> members)
    : k_(k), n_(n), members_(std::move(members)) {
  if (k < 1 || k > n - 1) throw InvalidInputError("Collection: need 1 <= k <= n-1");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (const KSubset& s : members_)
    if (s.k() != k || s.n() != n) throw InvalidInputError("Collection: member has wrong (k,n)");
}

bool Collection::contains(const KSubset& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

int Collection::index_of(const KSubset& s) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), s);
  if (it == members_.end() || !(*it == s)) return -1;
  return static_cast<int>(it - members_.begin());
}

bool Collection::pairwise_weakly_separated() const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j)
      if (!is_weakly_separated(members_[i], members_[j])) return false;
  return true;
}

bool Collection::has_all_boundary_labels() const {
  for (int j = 1; j <= n_; ++j)
    if (!contains(boundary_label(j, k_, n_))) return false;
  return true;
}

bool Collection::is_maximal() const {
  for (const KSubset& cand : all_k_subsets(k_, n_)) {
    if (contains(cand)) continue;
    bool ok = true;
    for (const KSubset& m : members_) {
      if (!is_weakly_separated(cand, m)) {
        ok = false;
        break;
      }
    }
    if (ok) return false;
  }
  return true;
}

std::vector<KSubset> all_k_subsets(int k, int n) {
  std::vector<KSubset> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.emplace_back(idx, n);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) /
                                     static_cast<std::uint64_t>(i);
  return out;
}

Collection build_maximal_collection(int k, int n, const std::optional<Collection>& seed) {
  std::vector<KSubset> members;
  for (int j = 1; j <= n; ++j) members.push_back(boundary_label(j, k, n));
  if (seed) {
    if (seed->k() != k || seed->n() != n)
      throw InvalidInputError("build_maximal_collection: seed has wrong (k,n)");
    if (!seed->pairwise_weakly_separated())
      throw InvalidInputError("build_maximal_collection: seed is not weakly separated");
    for (const KSubset& s : seed->members()) members.push_back(s);
  }
  Collection current(k, n, std::move(members));
  for (const KSubset& s : current.members())
    for (const KSubset& t : current.members())
      if (!is_weakly_separated(s, t))
        throw InvalidInputError("build_maximal_collection: seed conflicts with boundary labels");

  std::vector<KSubset> grown = current.members();
  for (const KSubset& cand : all_k_subsets(k, n)) {
    bool ok = true;
    for (const KSubset& m : grown) {
      if (!is_weakly_separated(cand, m)) {
        ok = false;
        break;
      }
    }
    if (ok && std::find(grown.begin(), grown.end(), cand) == grown.end()) grown.push_back(cand);
  }
  return Collection(k, n, std::move(grown));
}

namespace {

// Bron-Kerbosch with pivoting over the weak-separation graph. Interval
// subsets (the E_j among them) are separated from everything, so every
// maximal clique contains all boundary labels.
void bron_kerbosch(const std::vector<std::vector<bool>>& adj, std::vector<int>& R,
                   std::vector<int> P, std::vector<int> X, std::vector<std::vector<int>>& out,
                   std::size_t limit_hint) {
  if (P.empty() && X.empty()) {
    out.push_back(R);
    return;
  }
  if (out.size() >= limit_hint * 8 + 64) return;  // soft cap to bound work far past `limit`
  // Pivot: vertex of P ∪ X with most neighbours in P.
  int pivot = -1;
  std::size_t best = 0;
  for (const auto& pool : {P, X}) {
    for (int u : pool) {
      std::size_t cnt = 0;
      for (int v : P)
        if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) ++cnt;
      if (pivot < 0 || cnt > best) {
        pivot = u;
        best = cnt;
      }
    }
  }
  std::vector<int> candidates;
  for (int v : P)
    if (pivot < 0 || !adj[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(v)])
      candidates.push_back(v);
  for (int v : candidates) {
    std::vector<int> P2, X2;
    for (int u : P)
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) P2.push_back(u);
    for (int u : X)
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) X2.push_back(u);
    R.push_back(v);
    bron_kerbosch(adj, R, std::move(P2), std::move(X2), out, limit_hint);
    R.pop_back();
    P.erase(std::find(P.begin(), P.end(), v));
    X.push_back(v);
  }
}

}  // namespace

std::vector<Collection> enumerate_maximal_collections(int k, int n, std::size_t limit) {
  if (k < 1 || k > n - 1) throw InvalidInputError("enumerate_maximal_collections: bad (k,n)");
  if (binomial(n, k) > 400)
    throw ResourceError("enumerate_maximal_collections: C(n,k) exceeds guard of 400");
  std::vector<KSubset> subsets = all_k_subsets(k, n);
  std::size_t m = subsets.size();
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      adj[i][j] = adj[j][i] = is_weakly_separated(subsets[i], subsets[j]);

  std::vector<std::vector<int>> cliques;
  std::vector<int> R;
  std::vector<int> P(m), X;
  for (std::size_t i = 0; i < m; ++i) P[i] = static_cast<int>(i);
  bron_kerbosch(adj, R, std::move(P), std::move(X), cliques, limit);

  std::set<Collection> found;
  for (const auto& clique : cliques) {
    std::vector<KSubset> members;
    for (int idx : clique) members.push_back(subsets[static_cast<std::size_t>(idx)]);
    found.emplace(k, n, std::move(members));
  }
  std::vector<Collection> out(found.begin(), found.end());
  if (out.size() > limit)
    out.erase(out.begin() + static_cast<long>(limit), out.end());
  return out;
}

}  // namespace pdimer
