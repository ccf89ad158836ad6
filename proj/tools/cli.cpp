#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pdimer/cmrank1.hpp"
#include "pdimer/geometry.hpp"
#include "pdimer/json_io.hpp"
#include "pdimer/moves.hpp"

namespace pdimer {

namespace {

using nlohmann::json;

KSubset parse_label(const std::string& text, int n) {
  std::vector<int> elems;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) elems.push_back(std::stoi(tok));
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw InvalidInputError("cannot parse label " + text);
      elems.push_back(c - '0');
    }
  }
  return KSubset(elems, n);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

struct Check {
  std::string name;
  std::string status;  // pass | fail | skipped
  std::string details;
};

struct Report {
  std::string command;
  std::uint64_t digest = 1469598103934665603ull;  // FNV offset

  void absorb(const std::string& s) {
    for (unsigned char c : s) {
      digest ^= c;
      digest *= 1099511628211ull;
    }
  }
  std::vector<Check> checks;

  void add(const std::string& name, bool ok, const std::string& details = "") {
    checks.push_back(Check{name, ok ? "pass" : "fail", details});
  }
  void add_report(const std::string& name, const CheckReport& rep) {
    checks.push_back(Check{name, rep.ok ? "pass" : "fail",
                           rep.ok ? "" : rep.violations.front()});
  }
  bool all_ok() const {
    for (const Check& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
  json to_json() const {
    json jc = json::array();
    for (const Check& c : checks) {
      json e{{"name", c.name}, {"status", c.status}};
      if (!c.details.empty()) e["details"] = c.details;
      jc.push_back(e);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    return json{{"command", command}, {"inputs_digest", buf}, {"checks", jc}};
  }
};

int thread_budget() {
  const char* env = std::getenv("PLABIC_DIMER_THREADS");
  if (!env) return 1;
  int t = std::atoi(env);
  return t < 1 ? 1 : t;
}

// Deterministic parallel map: results land by index, schedule independent.
template <typename Fn>
std::vector<std::string> parallel_map(std::size_t count, int threads, Fn&& fn) {
  std::vector<std::string> results(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (count + static_cast<std::size_t>(threads) - 1) /
                      static_cast<std::size_t>(threads);
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = static_cast<std::size_t>(t) * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) results[i] = fn(i);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

Collection load_or_build_collection(int k, int n, const std::string& from_labels) {
  if (!from_labels.empty()) {
    Collection seed = collection_from_json(read_json_file(from_labels));
    return build_maximal_collection(seed.k(), seed.n(), seed);
  }
  return build_maximal_collection(k, n);
}

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidInputError("cannot write " + path);
  f << content;
}

// ---- check families -------------------------------------------------------

void suite_axioms(Report& rep, const std::vector<Collection>& cs, int threads) {
  auto results = parallel_map(cs.size(), threads, [&](std::size_t i) -> std::string {
    const Collection& C = cs[i];
    QuiverWithFaces Q = gamma_of_collection(C);
    CheckReport r = check_dimer_axioms(Q);
    std::vector<Strand> ss = strands(Q);
    r.merge(check_postnikov_axioms(Q, ss));
    r.merge(check_strand_degree(Q, ss, C.k()));
    return r.ok ? "" : r.violations.front();
  });
  for (std::size_t i = 0; i < results.size(); ++i)
    rep.add("axioms/collection" + std::to_string(i), results[i].empty(), results[i]);
}

void suite_weights(Report& rep, const std::vector<Collection>& cs, int threads) {
  auto results = parallel_map(cs.size(), threads, [&](std::size_t i) -> std::string {
    const Collection& C = cs[i];
    QuiverWithFaces Q = gamma_of_collection(C);
    try {
      for (const QuiverFace& f : Q.faces()) face_weight(Q, f.id);
      for (int v = 1; v <= C.n(); ++v) perfect_matching(Q, v);
      for (const QuiverVertex& v : Q.vertices()) {
        CheckReport r = vertex_weight_sums(Q, v.id);
        if (!r.ok) return r.violations.front();
      }
    } catch (const TheoremViolationError& e) {
      return e.what();
    }
    return "";
  });
  for (std::size_t i = 0; i < results.size(); ++i)
    rep.add("weights/collection" + std::to_string(i), results[i].empty(), results[i]);
}

void suite_degrees(Report& rep, const std::vector<Collection>& cs, int threads) {
  auto results = parallel_map(cs.size(), threads, [&](std::size_t i) -> std::string {
    const Collection& C = cs[i];
    QuiverWithFaces Q = gamma_of_collection(C);
    for (const KSubset& I : C.members())
      for (const KSubset& J : C.members()) {
        if (deg_min_formula(I, J) != deg_min_oracle(I, J))
          return "formula/oracle disagree at " + I.to_string() + "," + J.to_string();
      }
    for (const QuiverArrow& a : Q.arrows()) {
      Weight w = arrow_weight(Q, a.id);
      if (w != deg_min_oracle(*Q.vertex(a.tail).label, *Q.vertex(a.head).label))
        return "arrow weight != deg_min at arrow " + std::to_string(a.id);
    }
    return "";
  });
  for (std::size_t i = 0; i < results.size(); ++i)
    rep.add("degrees/collection" + std::to_string(i), results[i].empty(), results[i]);
}

void suite_paths(Report& rep, const std::vector<Collection>& cs, int threads) {
  auto results = parallel_map(cs.size(), threads, [&](std::size_t i) -> std::string {
    const Collection& C = cs[i];
    QuiverWithFaces Q = gamma_of_collection(C);
    try {
      for (const QuiverVertex& a : Q.vertices())
        for (const QuiverVertex& b : Q.vertices()) {
          QuiverPath p = minimal_path(Q, a.id, b.id);
          Weight w = path_weight(Q, p);
          if (w != deg_min_vertices(Q, a.id, b.id)) return "minimal path weight mismatch";
          if (a.id != b.id && w.min_component() != 0) return "minimal path is sincere";
          NormalForm nf = normalize(Q, p);
          if (nf.power != 0) return "minimal path normalizes with N > 0";
        }
    } catch (const TheoremViolationError& e) {
      return e.what();
    }
    return "";
  });
  for (std::size_t i = 0; i < results.size(); ++i)
    rep.add("paths/collection" + std::to_string(i), results[i].empty(), results[i]);
}

void suite_boundary(Report& rep, const std::vector<Collection>& cs, int threads) {
  auto results = parallel_map(cs.size(), threads, [&](std::size_t i) -> std::string {
    const Collection& C = cs[i];
    QuiverWithFaces Q = gamma_of_collection(C);
    BoundaryAlgebraReport b = boundary_algebra(Q);
    if (!b.checks.ok) return b.checks.violations.front();
    int n = C.n(), k = C.k();
    for (int a = 1; a <= n; ++a)
      for (int bb = 1; bb <= n; ++bb)
        for (int d = 0; d <= 5; ++d) {
          int va = Q.vertex_with_label(boundary_label(a, k, n));
          int vb = Q.vertex_with_label(boundary_label(bb, k, n));
          if (graded_hom_dim(Q, va, vb, d) !=
              b_normal_count(n, k, cyc_reduce(bb - k, n), cyc_reduce(a - k, n), d))
            return "graded_hom_dim != b_normal_count";
        }
    CheckReport c = central_element_check(Q);
    if (!c.ok) return c.violations.front();
    return "";
  });
  for (std::size_t i = 0; i < results.size(); ++i)
    rep.add("boundary/collection" + std::to_string(i), results[i].empty(), results[i]);
}

void suite_normalforms(Report& rep, const std::vector<Collection>& cs, std::uint64_t seed,
                       std::size_t pairs, std::size_t budget) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    QuiverWithFaces Q = gamma_of_collection(cs[i]);
    std::mt19937_64 rng(seed + i);
    std::size_t confirmed = 0, undecided = 0;
    std::string fail;
    for (std::size_t t = 0; t < pairs && fail.empty(); ++t) {
      // Random same-endpoint pair: a random walk, then a second random walk
      // resampled until it hits the same endpoints.
      auto walk = [&](int from, std::size_t len) {
        QuiverPath p = QuiverPath::idempotent(from);
        for (std::size_t stp = 0; stp < len; ++stp) {
          const std::vector<int>& outs = Q.out_arrows(p.target);
          if (outs.empty()) break;
          int aid = outs[rng() % outs.size()];
          p.arrows.push_back(aid);
          p.target = Q.arrow(aid).head;
        }
        return p;
      };
      int start = Q.vertices()[rng() % Q.vertices().size()].id;
      QuiverPath p = walk(start, 1 + rng() % 10);
      QuiverPath q;
      bool found = false;
      for (int attempt = 0; attempt < 400 && !found; ++attempt) {
        q = walk(start, 1 + rng() % 10);
        found = (q.target == p.target);
      }
      if (!found) continue;
      RewriteOutcome out = rewrite_equiv(Q, p, q, budget);
      bool same_nf = normalize(Q, p) == normalize(Q, q);
      if (out == RewriteOutcome::kEquivalent && !same_nf)
        fail = "soundness violation: rewrite-equivalent paths with distinct normal forms";
      if (out == RewriteOutcome::kInequivalent && same_nf)
        fail = "completeness violation: same normal form but class exhausted";
      if (out == RewriteOutcome::kBudgetExhausted)
        ++undecided;
      else
        ++confirmed;
    }
    rep.add("normalforms/collection" + std::to_string(i), fail.empty(),
            fail.empty() ? std::to_string(confirmed) + " decided, " +
                               std::to_string(undecided) + " not-within-budget"
                         : fail);
  }
}

void suite_mutation(Report& rep, const Collection& C, std::uint64_t seed, int sequences,
                    int max_len) {
  QuiverWithFaces Q = gamma_of_collection(C);
  std::mt19937_64 rng(seed);
  bool ok = true;
  std::string detail;
  for (int s = 0; s < sequences && ok; ++s) {
    int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
    Collection cur = C;
    QuiverWithFaces curQ = Q;
    std::vector<KSubset> labels;
    for (int t = 0; t < len; ++t) {
      std::vector<int> ex = exchangeable_vertices(curQ);
      if (ex.empty()) break;
      int vid = ex[rng() % ex.size()];
      labels.push_back(*curQ.vertex(vid).label);
      ExchangeResult res = geometric_exchange(cur, curQ, vid);
      cur = res.collection;
      curQ = res.quiver;
    }
    InvarianceReport inv = invariance_check(C, Q, labels);
    if (!inv.ok) {
      ok = false;
      detail = "sequence " + std::to_string(s) + " step failed: " +
               (inv.steps.empty() ? "?" : inv.steps.back().detail);
    }
  }
  // Double exchange is the identity.
  for (int vid : exchangeable_vertices(Q)) {
    ExchangeResult once = geometric_exchange(C, Q, vid);
    int vid2 = once.quiver.vertex_with_label(once.new_label);
    ExchangeResult twice = geometric_exchange(once.collection, once.quiver, vid2);
    if (!(twice.collection == C) || !same_labelled_quiver(twice.quiver, Q)) {
      ok = false;
      detail = "double exchange is not the identity";
    }
  }
  rep.add("mutation/invariance", ok, detail);
}

void suite_geometry(Report& rep, const Collection& C) {
  QuiverWithFaces Q = gamma_of_collection(C);
  AngleAssignment angles = uniform_angles(C.n());
  rep.add_report("geometry/angle-laws", check_angle_laws(Q, angles));
  TilingEmbedding emb = embed(Q, angles);
  rep.add_report("geometry/isoradial", check_isoradial(Q, emb));
  std::string svg1 = svg_export(Q, emb, {"tiles", "quiver", "labels"});
  std::string svg2 = svg_export(Q, emb, {"tiles", "quiver", "labels"});
  rep.add("geometry/svg-deterministic", svg1 == svg2);
}

void suite_annulus(Report& rep, std::size_t budget) {
  struct Case {
    int n, m;
    std::string word;
  };
  for (const Case& c : {Case{1, 1, "UD"}, Case{2, 1, "UUD"}, Case{2, 2, "UUDD"},
                        Case{2, 2, "UDUD"}}) {
    Triangulation T = annulus_staircase(c.n, c.m, c.word);
    LambdaCheckReport r = lambda_relation_check(T, budget);
    rep.add("annulus/" + std::to_string(c.n) + "," + std::to_string(c.m) + "/" + c.word,
            r.all_confirmed,
            r.all_confirmed ? std::to_string(r.relations.size()) + " relations confirmed"
                            : "unconfirmed relations remain");
  }
}

void suite_quiver_file(Report& rep, const std::string& path) {
  QuiverWithFaces Q = quiver_from_json(read_json_file(path));
  rep.add_report("quiver-file/dimer-axioms", check_dimer_axioms(Q));
  if (Q.labelled()) {
    // Inconsistencies inside the file surface as named failing checks, not
    // as usage errors.
    std::string detail;
    try {
      for (const QuiverFace& f : Q.faces()) (void)face_weight(Q, f.id);
      for (int i = 1; i <= Q.label_n(); ++i) (void)perfect_matching(Q, i);
      for (const QuiverVertex& v : Q.vertices()) {
        CheckReport r = vertex_weight_sums(Q, v.id);
        if (!r.ok) detail = r.violations.front();
      }
    } catch (const TheoremViolationError& e) {
      detail = e.what();
    } catch (const InvalidInputError& e) {
      detail = e.what();
    }
    rep.add("quiver-file/weights", detail.empty(), detail);
  }
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dimer models with boundary from Postnikov diagram combinatorics"};
  app.require_subcommand(1);

  int k = 0, n = 0, m = 0;
  std::string from_labels, triangulation_file, out_path, angles_opt = "uniform";
  std::string svg_path, seq_file, suite = "all", at_label, path_arg, arg_i, arg_j;
  std::uint64_t seed = 0;
  std::size_t budget = 200000;
  std::size_t limit = 1000;
  int grade = 0, max_nodes = 100;
  bool enumerate = false, table = false, check_lambda = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--k", k, "subset size k");
    c->add_option("--n", n, "marked points n");
    c->add_option("--from-labels", from_labels, "collection JSON file");
    c->add_option("--seed", seed, "random seed");
    c->add_option("--budget", budget, "rewriting budget");
  };

  CLI::App* build = app.add_subcommand("build", "construct collections and quivers");
  add_common(build);
  build->add_flag("--enumerate", enumerate, "enumerate maximal collections");
  build->add_option("--limit", limit, "enumeration limit");
  build->add_option("--triangulation", triangulation_file, "triangulation JSON file");
  build->add_option("--out", out_path, "output file (default stdout)");

  std::string quiver_file;
  CLI::App* verify = app.add_subcommand("verify", "run check families");
  add_common(verify);
  verify->add_option("--suite", suite,
                     "axioms|weights|degrees|paths|normalforms|boundary|mutation|geometry|"
                     "annulus|all");
  verify->add_option("--limit", limit, "collection enumeration limit");
  verify->add_option("--quiver-file", quiver_file, "check a quiver JSON file instead");

  CLI::App* hom = app.add_subcommand("hom", "graded Hom dimension between two labels");
  add_common(hom);
  hom->add_option("I", arg_i)->required();
  hom->add_option("J", arg_j)->required();
  hom->add_option("--grade", grade, "grade bound d");

  CLI::App* minpath_cmd = app.add_subcommand("minpath", "minimal path between two labels");
  add_common(minpath_cmd);
  minpath_cmd->add_option("I", arg_i)->required();
  minpath_cmd->add_option("J", arg_j)->required();

  CLI::App* normalize_cmd = app.add_subcommand("normalize", "normal form of a path");
  add_common(normalize_cmd);
  normalize_cmd->add_option("path", path_arg, "comma-separated vertex labels")->required();

  CLI::App* boundary_cmd = app.add_subcommand("boundary", "boundary algebra report");
  add_common(boundary_cmd);
  boundary_cmd->add_flag("--table", table, "emit the multiplication table");

  CLI::App* mutate = app.add_subcommand("mutate", "geometric exchange");
  add_common(mutate);
  mutate->add_option("--at", at_label, "label of the vertex to exchange");
  mutate->add_option("--seq", seq_file, "file with one label per line");
  mutate->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* exg = app.add_subcommand("exchange-graph", "exchange graph of collections");
  add_common(exg);
  exg->add_option("--max-nodes", max_nodes, "node cap");

  CLI::App* tiling = app.add_subcommand("tiling", "isoradial embedding and SVG");
  add_common(tiling);
  tiling->add_option("--svg", svg_path, "SVG output path");
  tiling->add_option("--angles", angles_opt, "uniform or a JSON file with n angles");

  CLI::App* annulus = app.add_subcommand("annulus", "annulus boundary algebra checks");
  annulus->add_option("n", n)->required();
  annulus->add_option("m", m)->required();
  annulus->add_option("--triangulation", triangulation_file, "triangulation JSON file");
  annulus->add_flag("--check-lambda", check_lambda, "verify the Lambda relations");
  annulus->add_option("--budget", budget, "rewriting budget");
  annulus->add_option("--seed", seed, "random seed");

  std::vector<std::string> argv = args;
  std::vector<char*> raw;
  std::string prog = "plabic-dimer";
  raw.push_back(prog.data());
  for (std::string& a : argv) raw.push_back(a.data());

  auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());

    Report rep;
    for (const std::string& a : args) {
      rep.absorb(a);
      rep.absorb("\x1f");
    }

    if (build->parsed()) {
      rep.command = "build";
      if (!triangulation_file.empty()) {
        Triangulation T = triangulation_from_json(read_json_file(triangulation_file));
        QuiverWithFaces Q = scott_quiver(T);
        write_or_print(out_path, canonical_dump(quiver_to_json(Q)), out);
      } else if (enumerate) {
        std::vector<Collection> cs = enumerate_maximal_collections(k, n, limit);
        json arr = json::array();
        for (const Collection& c : cs) arr.push_back(collection_to_json(c));
        write_or_print(out_path, canonical_dump(arr), out);
      } else {
        Collection C = load_or_build_collection(k, n, from_labels);
        QuiverWithFaces Q = gamma_of_collection(C);
        json both{{"collection", collection_to_json(C)}, {"quiver", quiver_to_json(Q)}};
        write_or_print(out_path, canonical_dump(both), out);
      }
    } else if (verify->parsed()) {
      rep.command = "verify";
      if (!quiver_file.empty()) {
        suite_quiver_file(rep, quiver_file);
        out << canonical_dump(rep.to_json());
        for (const Check& c : rep.checks)
          if (c.status == "fail") throw TheoremViolationError(c.name + ": " + c.details);
        err << "elapsed_ms "
            << std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - started)
                   .count()
            << "\n";
        return 0;
      }
      int threads = thread_budget();
      std::vector<Collection> cs;
      if (!from_labels.empty() || binomial(n, k) > 400) {
        cs.push_back(load_or_build_collection(k, n, from_labels));
      } else {
        cs = enumerate_maximal_collections(k, n, limit);
      }
      bool all = suite == "all";
      if (all || suite == "axioms") suite_axioms(rep, cs, threads);
      if (all || suite == "weights") suite_weights(rep, cs, threads);
      if (all || suite == "degrees") suite_degrees(rep, cs, threads);
      if (all || suite == "paths") suite_paths(rep, cs, threads);
      if (all || suite == "normalforms")
        suite_normalforms(rep, cs, seed, all ? 100 : 1000, budget);
      if (all || suite == "boundary") suite_boundary(rep, cs, threads);
      if (all || suite == "mutation") suite_mutation(rep, cs.front(), seed, all ? 20 : 100, 20);
      if (all || suite == "geometry") suite_geometry(rep, cs.front());
      if (suite == "annulus") suite_annulus(rep, budget);
      out << canonical_dump(rep.to_json());
      for (const Check& c : rep.checks)
        if (c.status == "fail")
          throw TheoremViolationError(c.name + ": " + c.details);
    } else if (hom->parsed()) {
      Collection C = load_or_build_collection(k, n, from_labels);
      QuiverWithFaces Q = gamma_of_collection(C);
      int I = Q.vertex_with_label(parse_label(arg_i, C.n()));
      int J = Q.vertex_with_label(parse_label(arg_j, C.n()));
      if (I < 0 || J < 0) throw InvalidInputError("label not in the collection");
      out << graded_hom_dim(Q, I, J, grade) << "\n";
    } else if (minpath_cmd->parsed()) {
      Collection C = load_or_build_collection(k, n, from_labels);
      QuiverWithFaces Q = gamma_of_collection(C);
      int I = Q.vertex_with_label(parse_label(arg_i, C.n()));
      int J = Q.vertex_with_label(parse_label(arg_j, C.n()));
      if (I < 0 || J < 0) throw InvalidInputError("label not in the collection");
      QuiverPath p = minimal_path(Q, I, J);
      out << Q.vertex(I).label->to_string();
      for (int aid : p.arrows) out << " -> " << Q.vertex(Q.arrow(aid).head).label->to_string();
      out << "\nweight " << path_weight(Q, p).to_string() << "\n";
    } else if (normalize_cmd->parsed()) {
      Collection C = load_or_build_collection(k, n, from_labels);
      QuiverWithFaces Q = gamma_of_collection(C);
      std::vector<int> vertex_seq;
      std::stringstream ss(path_arg);
      std::string tok;
      while (std::getline(ss, tok, ' ')) {
        if (tok.empty()) continue;
        int vid = Q.vertex_with_label(parse_label(tok, C.n()));
        if (vid < 0) throw InvalidInputError("label not in the collection: " + tok);
        vertex_seq.push_back(vid);
      }
      if (vertex_seq.empty()) throw InvalidInputError("empty path");
      QuiverPath p = QuiverPath::idempotent(vertex_seq.front());
      for (std::size_t i = 0; i + 1 < vertex_seq.size(); ++i) {
        int aid = Q.arrow_between(vertex_seq[i], vertex_seq[i + 1]);
        if (aid < 0) throw InvalidInputError("no arrow between consecutive labels");
        p.arrows.push_back(aid);
        p.target = vertex_seq[i + 1];
      }
      NormalForm nf = normalize(Q, p);
      out << "u^" << nf.power << " p[" << Q.vertex(nf.target).label->to_string() << "<-"
          << Q.vertex(nf.source).label->to_string() << "]\n";
    } else if (boundary_cmd->parsed()) {
      Collection C = load_or_build_collection(k, n, from_labels);
      QuiverWithFaces Q = gamma_of_collection(C);
      BoundaryAlgebraReport b = boundary_algebra(Q);
      json jg = json::array();
      for (const BoundaryGenerators& g : b.generators) {
        jg.push_back(json{{"j", g.j},
                          {"y_weight", path_weight(Q, g.y).to_string()},
                          {"x_weight", path_weight(Q, g.x).to_string()}});
      }
      json jrep{{"ok", b.checks.ok}, {"generators", jg}};
      if (table) {
        json jt = json::array();
        for (const BoundaryTableEntry& e : b.table)
          jt.push_back(json{{"word", e.word},
                            {"source", e.source_label},
                            {"target", e.target_label},
                            {"power", e.power}});
        jrep["table"] = jt;
      }
      out << canonical_dump(jrep);
      if (!b.checks.ok) throw TheoremViolationError(b.checks.violations.front());
    } else if (mutate->parsed()) {
      Collection C = load_or_build_collection(k, n, from_labels);
      QuiverWithFaces Q = gamma_of_collection(C);
      std::vector<KSubset> labels;
      if (!at_label.empty()) labels.push_back(parse_label(at_label, C.n()));
      if (!seq_file.empty()) {
        std::ifstream sf(seq_file);
        if (!sf) throw InvalidInputError("cannot open " + seq_file);
        std::string line;
        while (std::getline(sf, line))
          if (!line.empty()) labels.push_back(parse_label(line, C.n()));
      }
      if (labels.empty()) throw InvalidInputError("mutate: need --at or --seq");
      InvarianceReport inv = invariance_check(C, Q, labels);
      json steps = json::array();
      for (const InvarianceStep& s : inv.steps)
        steps.push_back(json{{"at", s.label.elements()},
                             {"ok", s.ok},
                             {"detail", s.detail}});
      json jrep{{"ok", inv.ok},
                {"steps", steps},
                {"collection", collection_to_json(inv.final_collection)},
                {"quiver", quiver_to_json(inv.final_quiver)}};
      write_or_print(out_path, canonical_dump(jrep), out);
      if (!inv.ok) throw TheoremViolationError("mutation invariance failed");
    } else if (exg->parsed()) {
      Collection C = load_or_build_collection(k, n, from_labels);
      std::map<Collection, int> ids;
      std::vector<Collection> order{C};
      ids[C] = 0;
      std::vector<std::pair<int, int>> edges;
      std::size_t head = 0;
      while (head < order.size() && static_cast<int>(order.size()) < max_nodes) {
        Collection cur = order[head];
        QuiverWithFaces Q = gamma_of_collection(cur);
        for (int vid : exchangeable_vertices(Q)) {
          ExchangeResult res = geometric_exchange(cur, Q, vid);
          auto [it, inserted] = ids.try_emplace(res.collection,
                                                static_cast<int>(order.size()));
          if (inserted) order.push_back(res.collection);
          if (static_cast<int>(head) < it->second)
            edges.push_back({static_cast<int>(head), it->second});
        }
        ++head;
      }
      json jn = json::array();
      for (const Collection& c : order) jn.push_back(collection_to_json(c));
      json je = json::array();
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      for (auto [a, b] : edges) je.push_back(json::array({a, b}));
      out << canonical_dump(json{{"nodes", jn}, {"edges", je}});
    } else if (tiling->parsed()) {
      Collection C = load_or_build_collection(k, n, from_labels);
      QuiverWithFaces Q = gamma_of_collection(C);
      AngleAssignment angles = angles_opt == "uniform"
                                   ? uniform_angles(C.n())
                                   : AngleAssignment(read_json_file(angles_opt)
                                                         .get<std::vector<double>>());
      TilingEmbedding emb = embed(Q, angles);
      CheckReport laws = check_angle_laws(Q, angles);
      CheckReport iso = check_isoradial(Q, emb);
      if (!laws.ok || !iso.ok)
        throw TheoremViolationError((laws.ok ? iso : laws).violations.front());
      std::string svg = svg_export(Q, emb, {"tiles", "quiver", "strands", "labels"});
      write_or_print(svg_path, svg, out);
    } else if (annulus->parsed()) {
      Triangulation T =
          triangulation_file.empty()
              ? annulus_staircase(n, m, std::string(static_cast<std::size_t>(n), 'U') +
                                            std::string(static_cast<std::size_t>(m), 'D'))
              : triangulation_from_json(read_json_file(triangulation_file));
      if (T.surface.n != n || T.surface.m != m)
        throw InvalidInputError("annulus: triangulation does not match (n,m)");
      if (check_lambda) {
        LambdaCheckReport r = lambda_relation_check(T, budget);
        json jr = json::array();
        for (const LambdaRelationResult& res : r.relations)
          jr.push_back(json{{"name", res.name},
                            {"family", res.family},
                            {"outcome", to_string(res.outcome)}});
        out << canonical_dump(json{{"n", n},
                                   {"m", m},
                                   {"all_confirmed", r.all_confirmed},
                                   {"note", r.note},
                                   {"relations", jr}});
        if (!r.all_confirmed) code = 2;
      } else {
        QuiverWithFaces Q = scott_quiver(T);
        out << canonical_dump(quiver_to_json(Q));
      }
    }
  } catch (const CLI::ParseError& e) {
    err << "argument error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidInputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    err << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const TheoremViolationError& e) {
    err << "theorem violation: " << e.what() << "\n";
    return 2;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  err << "elapsed_ms " << elapsed << "\n";
  return code;
}

}  // namespace pdimer
