#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "pdimer/json_io.hpp"
#include "pdimer/surface.hpp"

using pdimer::cli_run;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  return Run{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("build emits the (3,7) quiver from the figure labels") {
  Run r = run({"build", "--k", "3", "--n", "7", "--from-labels",
               std::string(PDIMER_TEST_DATA_DIR) + "/fig37_labels.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"arrows\"") != std::string::npos);
  // 13 vertices and 26 arrows
  CHECK(r.out.find("\"labels\"") != std::string::npos);
}

TEST_CASE("build --enumerate counts pentagon collections") {
  Run r = run({"build", "--k", "2", "--n", "5", "--enumerate"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.size() == 5);
}

TEST_CASE("verify boundary on (2,4) passes with a deterministic report") {
  Run a = run({"verify", "--suite", "boundary", "--k", "2", "--n", "4"});
  CHECK(a.code == 0);
  Run b = run({"verify", "--suite", "boundary", "--k", "2", "--n", "4"});
  CHECK(a.out == b.out);  // byte-identical stdout
  CHECK(a.out.find("\"status\": \"pass\"") != std::string::npos);
}

TEST_CASE("verify propagates seeds into reports") {
  Run a = run({"verify", "--suite", "normalforms", "--k", "2", "--n", "4", "--seed", "5"});
  Run b = run({"verify", "--suite", "normalforms", "--k", "2", "--n", "4", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("hom, minpath, normalize, boundary") {
  std::string labels = std::string(PDIMER_TEST_DATA_DIR) + "/fig37_labels.json";
  Run h = run({"hom", "567", "456", "--grade", "3", "--k", "3", "--n", "7", "--from-labels",
               labels});
  CHECK(h.code == 0);
  CHECK(h.out == "4\n");
  Run mp = run({"minpath", "567", "456", "--k", "3", "--n", "7", "--from-labels", labels});
  CHECK(mp.code == 0);
  CHECK(mp.out.find("567 -> 156 -> 456") != std::string::npos);
  Run nm = run({"normalize", "567 156 456 567", "--k", "3", "--n", "7", "--from-labels",
                labels});
  CHECK(nm.code == 0);
  CHECK(nm.out.find("u^1") != std::string::npos);
  Run bd = run({"boundary", "--table", "--k", "3", "--n", "7", "--from-labels", labels});
  CHECK(bd.code == 0);
  CHECK(bd.out.find("\"table\"") != std::string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("invalid input is exit 1") {
    Run r = run({"build", "--k", "9", "--n", "4"});
    CHECK(r.code == 1);
  }
  SUBCASE("resource guard is exit 3") {
    Run r = run({"build", "--k", "6", "--n", "14", "--enumerate"});
    CHECK(r.code == 3);
  }
  SUBCASE("unknown label is exit 1") {
    Run r = run({"hom", "999", "456", "--k", "3", "--n", "7"});
    CHECK(r.code == 1);
  }
}

TEST_CASE("mutate and exchange-graph") {
  Run m = run({"mutate", "--at", "13", "--k", "2", "--n", "4"});
  // build_maximal_collection(2,4) contains one diagonal; mutating at it works
  if (m.code != 0) m = run({"mutate", "--at", "24", "--k", "2", "--n", "4"});
  CHECK(m.code == 0);
  Run g = run({"exchange-graph", "--k", "2", "--n", "5", "--max-nodes", "10"});
  CHECK(g.code == 0);
  nlohmann::json j = nlohmann::json::parse(g.out);
  CHECK(j.at("nodes").size() == 5);
  CHECK(j.at("edges").size() == 5);
}

TEST_CASE("tiling writes deterministic SVG to stdout") {
  std::string labels = std::string(PDIMER_TEST_DATA_DIR) + "/fig37_labels.json";
  Run a = run({"tiling", "--k", "3", "--n", "7", "--from-labels", labels});
  Run b = run({"tiling", "--k", "3", "--n", "7", "--from-labels", labels});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("<svg") != std::string::npos);
}

TEST_CASE("annulus lambda check") {
  Run r = run({"annulus", "1", "1", "--check-lambda", "--budget", "200000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"all_confirmed\": true") != std::string::npos);
}

TEST_CASE("verify --quiver-file flags a corrupted quiver with exit 2") {
  std::string labels = std::string(PDIMER_TEST_DATA_DIR) + "/fig37_labels.json";
  Run built = run({"build", "--k", "3", "--n", "7", "--from-labels", labels});
  REQUIRE(built.code == 0);
  nlohmann::json both = nlohmann::json::parse(built.out);
  nlohmann::json quiver = both.at("quiver");
  {
    std::ofstream f("/tmp/pdimer_good_quiver.json");
    f << quiver.dump();
  }
  Run good = run({"verify", "--quiver-file", "/tmp/pdimer_good_quiver.json"});
  CHECK(good.code == 0);
  // corrupt one vertex label: weights and matchings must break
  quiver["vertices"][7]["label"] = nlohmann::json::array({1, 2, 6});
  {
    std::ofstream f("/tmp/pdimer_bad_quiver.json");
    f << quiver.dump();
  }
  Run bad = run({"verify", "--quiver-file", "/tmp/pdimer_bad_quiver.json"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("\"status\": \"fail\"") != std::string::npos);
}

TEST_CASE("PLABIC_DIMER_THREADS gives the same canonical report") {
  Run one = run({"verify", "--suite", "axioms", "--k", "2", "--n", "5"});
  setenv("PLABIC_DIMER_THREADS", "4", 1);
  Run four = run({"verify", "--suite", "axioms", "--k", "2", "--n", "5"});
  unsetenv("PLABIC_DIMER_THREADS");
  CHECK(one.code == 0);
  CHECK(four.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("build --triangulation emits a scott quiver") {
  {
    std::ofstream f("/tmp/pdimer_tri.json");
    f << pdimer::triangulation_to_json(pdimer::disk_fan_triangulation(5)).dump();
  }
  Run r = run({"build", "--triangulation", "/tmp/pdimer_tri.json"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("vertices").size() == 7);   // 5 boundary edges + 2 arcs
  CHECK(j.at("faces").size() == 8);      // 3 triangles + 5 marked points
  Run annulus_quiver = run({"annulus", "2", "2"});
  CHECK(annulus_quiver.code == 0);
  CHECK(annulus_quiver.out.find("\"faces\"") != std::string::npos);
}
