#include "pdimer/algebra.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "pdimer/cmrank1.hpp"

namespace pdimer {

QuiverPath make_path(const QuiverWithFaces& Q, const std::vector<int>& arrows) {
  if (arrows.empty()) throw InvalidInputError("make_path: empty arrow list has no endpoints");
  QuiverPath p;
  p.source = Q.arrow(arrows.front()).tail;
  p.target = Q.arrow(arrows.back()).head;
  p.arrows = arrows;
  for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
    if (Q.arrow(arrows[i]).head != Q.arrow(arrows[i + 1]).tail)
      throw InvalidInputError("make_path: arrows do not compose at step " + std::to_string(i));
  return p;
}

QuiverPath compose(const QuiverWithFaces& Q, const QuiverPath& first, const QuiverPath& second) {
  if (first.target != second.source)
    throw InvalidInputError("compose: endpoint mismatch");
  QuiverPath p;
  p.source = first.source;
  p.target = second.target;
  p.arrows = first.arrows;
  p.arrows.insert(p.arrows.end(), second.arrows.begin(), second.arrows.end());
  (void)Q;
  return p;
}

Weight path_weight(const QuiverWithFaces& Q, const QuiverPath& p) {
  if (!Q.labelled()) throw InvalidInputError("path_weight: quiver is not labelled");
  Weight w(Q.label_n());
  int cur = p.source;
  for (int aid : p.arrows) {
    const QuiverArrow& a = Q.arrow(aid);
    if (a.tail != cur) throw InvalidInputError("path_weight: arrows do not compose");
    w += arrow_weight(Q, aid);
    cur = a.head;
  }
  if (cur != p.target) throw InvalidInputError("path_weight: target mismatch");
  return w;
}

Weight deg_min_vertices(const QuiverWithFaces& Q, int I, int J) {
  const QuiverVertex& vi = Q.vertex(I);
  const QuiverVertex& vj = Q.vertex(J);
  if (!vi.label || !vj.label) throw InvalidInputError("deg_min_vertices: unlabelled vertices");
  return deg_min_oracle(*vi.label, *vj.label);
}

QuiverPath minimal_path(const QuiverWithFaces& Q, int I, int J) {
  if (!Q.labelled()) throw InvalidInputError("minimal_path: quiver is not labelled");
  QuiverPath path = QuiverPath::idempotent(I);
  path.target = J;
  int cur = I;
  Weight remaining = deg_min_vertices(Q, I, J);
  while (cur != J) {
    const KSubset& cur_label = *Q.vertex(cur).label;
    const KSubset& target_label = *Q.vertex(J).label;
    ABPair ab = ab_pair(cur_label, target_label);
    Weight forbidden = interval_vertices(ab.a, ab.b, cur_label.n());
    // Candidates: legal arrows (weight disjoint from (a,b)_0) whose weight
    // subtracts exactly from the remaining minimal degree.
    int best = -1;
    Weight best_remaining = remaining;
    std::int64_t best_total = -1;
    for (int aid : Q.out_arrows(cur)) {
      Weight w = arrow_weight(Q, aid);
      bool legal = true;
      for (int v : w.support())
        if (forbidden.support_contains(v)) {
          legal = false;
          break;
        }
      if (!legal) continue;
      const QuiverArrow& a = Q.arrow(aid);
      Weight next_deg = deg_min_vertices(Q, a.head, J);
      if (weight_plus_scalar(next_deg, 0) + w != remaining) continue;
      std::int64_t total = next_deg.total();
      if (best < 0 || total < best_total ||
          (total == best_total &&
           *Q.vertex(a.head).label < *Q.vertex(Q.arrow(best).head).label)) {
        best = aid;
        best_total = total;
        best_remaining = next_deg;
      }
    }
    if (best < 0)
      throw TheoremViolationError("minimal_path: no legal arrow at vertex " +
                                  cur_label.to_string() + " towards " +
                                  target_label.to_string());
    path.arrows.push_back(best);
    cur = Q.arrow(best).head;
    remaining = best_remaining;
  }
  Weight w = path_weight(Q, path);
  if (w != deg_min_vertices(Q, I, J))
    throw TheoremViolationError("minimal_path: constructed path weight differs from deg_min");
  return path;
}

NormalForm normalize(const QuiverWithFaces& Q, const QuiverPath& p) {
  Weight w = path_weight(Q, p);
  Weight base = deg_min_vertices(Q, p.source, p.target);
  Weight residual = weight_minus(w, base, "normalize");
  ScalarSplit split = weight_sub_scalar(residual);
  if (!split.base.is_zero())
    throw TheoremViolationError("normalize: residual " + residual.to_string() +
                                " is not a multiple of C_0");
  return NormalForm{p.source, p.target, split.scalar};
}

std::vector<ArrowRelation> dimer_relations(const QuiverWithFaces& Q) {
  std::vector<ArrowRelation> rels;
  for (const QuiverArrow& a : Q.arrows()) {
    const std::vector<int>& fs = Q.faces_of_arrow(a.id);
    if (fs.size() != 2) continue;
    ArrowRelation rel;
    rel.arrow = a.id;
    for (int fid : fs) {
      const QuiverFace& f = Q.face(fid);
      std::vector<int> cyc = f.arrows;
      auto it = std::find(cyc.begin(), cyc.end(), a.id);
      std::rotate(cyc.begin(), it, cyc.end());
      std::vector<int> rest(cyc.begin() + 1, cyc.end());
      (f.sign > 0 ? rel.plus : rel.minus) = rest;
    }
    rels.push_back(std::move(rel));
  }
  return rels;
}

std::string to_string(RewriteOutcome r) {
  switch (r) {
    case RewriteOutcome::kEquivalent: return "equivalent";
    case RewriteOutcome::kInequivalent: return "inequivalent";
    case RewriteOutcome::kBudgetExhausted: return "not-within-budget";
  }
  return "?";
}

namespace {

// Composability check that does not need labels (surface quivers included).
void validate_path(const QuiverWithFaces& Q, const QuiverPath& p) {
  int cur = p.source;
  for (int aid : p.arrows) {
    const QuiverArrow& a = Q.arrow(aid);
    if (a.tail != cur) throw InvalidInputError("path arrows do not compose");
    cur = a.head;
  }
  if (cur != p.target) throw InvalidInputError("path target mismatch");
}

}  // namespace

RewriteOutcome rewrite_equiv(const QuiverWithFaces& Q, const QuiverPath& p, const QuiverPath& q,
                             std::size_t budget) {
  if (p.source != q.source || p.target != q.target)
    throw InvalidInputError("rewrite_equiv: endpoint mismatch");
  validate_path(Q, p);
  validate_path(Q, q);
  if (p.arrows == q.arrows) return RewriteOutcome::kEquivalent;

  // Substitution rules: for each internal arrow, p+ <-> p-.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> rules;
  for (const ArrowRelation& rel : dimer_relations(Q)) {
    rules.push_back({rel.plus, rel.minus});
    rules.push_back({rel.minus, rel.plus});
  }

  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_set<std::vector<int>, VecHash> seen{p.arrows};
  std::deque<std::vector<int>> frontier{p.arrows};
  std::size_t expanded = 0;
  while (!frontier.empty()) {
    if (expanded >= budget) return RewriteOutcome::kBudgetExhausted;
    std::vector<int> cur = std::move(frontier.front());
    frontier.pop_front();
    ++expanded;
    for (const auto& [lhs, rhs] : rules) {
      if (lhs.size() > cur.size()) continue;
      for (std::size_t pos = 0; pos + lhs.size() <= cur.size(); ++pos) {
        if (!std::equal(lhs.begin(), lhs.end(), cur.begin() + static_cast<long>(pos))) continue;
        std::vector<int> next;
        next.reserve(cur.size() - lhs.size() + rhs.size());
        next.insert(next.end(), cur.begin(), cur.begin() + static_cast<long>(pos));
        next.insert(next.end(), rhs.begin(), rhs.end());
        next.insert(next.end(), cur.begin() + static_cast<long>(pos + lhs.size()), cur.end());
        if (next == q.arrows) return RewriteOutcome::kEquivalent;
        if (seen.insert(next).second) frontier.push_back(std::move(next));
      }
    }
  }
  return RewriteOutcome::kInequivalent;
}

RewriteOutcome rewrite_equiv_bidir(const QuiverWithFaces& Q, const QuiverPath& p,
                                   const QuiverPath& q, std::size_t budget) {
  if (p.source != q.source || p.target != q.target)
    throw InvalidInputError("rewrite_equiv_bidir: endpoint mismatch");
  validate_path(Q, p);
  validate_path(Q, q);
  if (p.arrows == q.arrows) return RewriteOutcome::kEquivalent;

  std::vector<std::pair<std::vector<int>, std::vector<int>>> rules;
  for (const ArrowRelation& rel : dimer_relations(Q)) {
    rules.push_back({rel.plus, rel.minus});
    rules.push_back({rel.minus, rel.plus});
  }
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  using Seen = std::unordered_set<std::vector<int>, VecHash>;
  struct Side {
    Seen seen;
    std::deque<std::vector<int>> frontier;
    bool exhausted() const { return frontier.empty(); }
  };
  Side sides[2];
  sides[0].seen.insert(p.arrows);
  sides[0].frontier.push_back(p.arrows);
  sides[1].seen.insert(q.arrows);
  sides[1].frontier.push_back(q.arrows);

  std::size_t expanded = 0;
  while (true) {
    int pick;
    if (sides[0].exhausted() && sides[1].exhausted()) return RewriteOutcome::kInequivalent;
    if (sides[0].exhausted())
      pick = 1;
    else if (sides[1].exhausted())
      pick = 0;
    else
      pick = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
    Side& own = sides[pick];
    Side& other = sides[1 - pick];
    if (expanded >= budget) return RewriteOutcome::kBudgetExhausted;
    std::vector<int> cur = std::move(own.frontier.front());
    own.frontier.pop_front();
    ++expanded;
    for (const auto& [lhs, rhs] : rules) {
      if (lhs.size() > cur.size()) continue;
      for (std::size_t pos = 0; pos + lhs.size() <= cur.size(); ++pos) {
        if (!std::equal(lhs.begin(), lhs.end(), cur.begin() + static_cast<long>(pos))) continue;
        std::vector<int> next;
        next.reserve(cur.size() - lhs.size() + rhs.size());
        next.insert(next.end(), cur.begin(), cur.begin() + static_cast<long>(pos));
        next.insert(next.end(), rhs.begin(), rhs.end());
        next.insert(next.end(), cur.begin() + static_cast<long>(pos + lhs.size()), cur.end());
        if (other.seen.count(next)) return RewriteOutcome::kEquivalent;
        if (own.seen.insert(next).second) own.frontier.push_back(std::move(next));
      }
    }
    // One side fully explored without meeting the other: its class is closed
    // and provably misses the other path, so the two are distinct.
    if (own.exhausted()) return RewriteOutcome::kInequivalent;
    (void)other;
  }
}

std::int64_t graded_hom_dim(const QuiverWithFaces& Q, int I, int J, std::int64_t d) {
  if (d < 0) throw InvalidInputError("graded_hom_dim: d must be nonnegative");
  (void)Q.vertex(I), (void)Q.vertex(J);
  return d + 1;
}

namespace {

int boundary_vertex_of(const QuiverWithFaces& Q, int j) {
  int id = Q.vertex_with_label(boundary_label(j, Q.label_k(), Q.label_n()));
  if (id < 0) throw InvalidInputError("boundary vertex E_" + std::to_string(j) + " missing");
  return id;
}

}  // namespace

BoundaryAlgebraReport boundary_algebra(const QuiverWithFaces& Q) {
  if (!Q.labelled()) throw InvalidInputError("boundary_algebra: quiver is not labelled");
  int n = Q.label_n(), k = Q.label_k();
  BoundaryAlgebraReport rep;

  for (int j = 1; j <= n; ++j) {
    int ej = boundary_vertex_of(Q, j);
    int ej1 = boundary_vertex_of(Q, cyc_reduce(j + 1, n));
    BoundaryGenerators g;
    g.j = j;
    g.y = minimal_path(Q, ej, ej1);
    g.x = minimal_path(Q, ej1, ej);
    Weight wy = path_weight(Q, g.y);
    Weight wx = path_weight(Q, g.x);
    Weight ind = boundary_label(j, k, n).indicator();
    Weight coind = weight_minus(full_weight(n), ind, "boundary_algebra");
    if (wy != ind)
      rep.checks.fail("y-generator at E_" + std::to_string(j) + " has weight " + wy.to_string() +
                      " != E_j " + ind.to_string());
    if (wx != coind)
      rep.checks.fail("x-generator at E_" + std::to_string(j) + " has weight " + wx.to_string() +
                      " != C_0 - E_j");
    NormalForm xy = normalize(Q, compose(Q, g.y, g.x));  // loop at E_j
    NormalForm yx = normalize(Q, compose(Q, g.x, g.y));  // loop at E_{j+1}
    if (xy != (NormalForm{ej, ej, 1}))
      rep.checks.fail("x o y at E_" + std::to_string(j) + " is not u*e");
    if (yx != (NormalForm{ej1, ej1, 1}))
      rep.checks.fail("y o x at E_" + std::to_string(j + 1) + " is not u*e");
    rep.generators.push_back(std::move(g));
  }

  // x^k = y^(n-k): both run from E_{j+k} to E_j.
  for (int j = 1; j <= n; ++j) {
    QuiverPath xs = QuiverPath::idempotent(boundary_vertex_of(Q, cyc_reduce(j + k, n)));
    for (int t = k - 1; t >= 0; --t) {
      const BoundaryGenerators& g = rep.generators[static_cast<std::size_t>(
          cyc_reduce(j + t, n) - 1)];
      xs = compose(Q, xs, g.x);
    }
    QuiverPath ys = QuiverPath::idempotent(boundary_vertex_of(Q, cyc_reduce(j + k, n)));
    for (int t = k; t < n; ++t) {
      const BoundaryGenerators& g = rep.generators[static_cast<std::size_t>(
          cyc_reduce(j + t, n) - 1)];
      ys = compose(Q, ys, g.y);
    }
    NormalForm nx = normalize(Q, xs);
    NormalForm ny = normalize(Q, ys);
    if (nx != ny)
      rep.checks.fail("x^k != y^(n-k) as normal forms from E_" +
                      std::to_string(cyc_reduce(j + k, n)) + " to E_" + std::to_string(j));
  }

  // Multiplication table: all composable words of length <= 3 in the 2n
  // generators, in deterministic order.
  struct Gen {
    std::string name;
    const QuiverPath* path;
  };
  std::vector<Gen> gens;
  for (const BoundaryGenerators& g : rep.generators) {
    gens.push_back({"x[" + std::to_string(g.j) + "]", &g.x});
    gens.push_back({"y[" + std::to_string(g.j) + "]", &g.y});
  }
  std::sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) { return a.name < b.name; });

  auto label_of = [&Q](int vid) { return Q.vertex(vid).label->to_string(); };
  std::vector<std::vector<const Gen*>> words;
  for (const Gen& g : gens) words.push_back({&g});
  for (std::size_t len = 2; len <= 3; ++len) {
    std::vector<std::vector<const Gen*>> next;
    for (const auto& w : words) {
      if (w.size() != len - 1) continue;
      for (const Gen& g : gens)
        if (w.back()->path->target == g.path->source) {
          auto w2 = w;
          w2.push_back(&g);
          next.push_back(std::move(w2));
        }
    }
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const auto& w : words) {
    QuiverPath p = QuiverPath::idempotent(w.front()->path->source);
    p.target = p.source;
    std::string name;
    for (const Gen* g : w) {
      p = compose(Q, p, *g->path);
      if (!name.empty()) name += ".";
      name += g->name;
    }
    NormalForm nf = normalize(Q, p);
    rep.table.push_back(BoundaryTableEntry{name, label_of(nf.source), label_of(nf.target),
                                           nf.power});
  }
  std::sort(rep.table.begin(), rep.table.end(),
            [](const BoundaryTableEntry& a, const BoundaryTableEntry& b) {
              return a.word < b.word;
            });
  return rep;
}

CheckReport central_element_check(const QuiverWithFaces& Q) {
  CheckReport rep;
  if (!Q.labelled()) {
    rep.fail("central_element_check: quiver is not labelled");
    return rep;
  }
  auto face_loops_at = [&Q](int vid) {
    std::vector<QuiverPath> loops;
    for (const QuiverFace& f : Q.faces()) {
      for (std::size_t i = 0; i < f.arrows.size(); ++i) {
        if (Q.arrow(f.arrows[i]).tail != vid) continue;
        std::vector<int> cyc = f.arrows;
        std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(i), cyc.end());
        loops.push_back(make_path(Q, cyc));
        break;
      }
    }
    return loops;
  };
  for (const QuiverVertex& v : Q.vertices()) {
    std::vector<QuiverPath> loops = face_loops_at(v.id);
    for (const QuiverPath& loop : loops) {
      NormalForm nf = normalize(Q, loop);
      if (nf != (NormalForm{v.id, v.id, 1}))
        rep.fail("face loop at vertex " + std::to_string(v.id) + " does not normalize to u*e");
    }
  }
  for (const QuiverArrow& a : Q.arrows()) {
    QuiverPath arrow_path = make_path(Q, {a.id});
    std::vector<QuiverPath> loops_head = face_loops_at(a.head);
    std::vector<QuiverPath> loops_tail = face_loops_at(a.tail);
    for (const QuiverPath& lh : loops_head)
      for (const QuiverPath& lt : loops_tail) {
        NormalForm left = normalize(Q, compose(Q, arrow_path, lh));
        NormalForm right = normalize(Q, compose(Q, lt, arrow_path));
        NormalForm expected{a.tail, a.head, 1};
        if (left != expected || right != expected)
          rep.fail("u does not commute with arrow " + std::to_string(a.id) +
                   " as a normal-form identity");
      }
  }
  return rep;
}

}  // namespace pdimer
