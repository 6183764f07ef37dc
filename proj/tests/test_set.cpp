#include "ramsey/set.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <random>

#include "util.hpp"

using namespace ramsey;
using namespace testutil;

TEST_CASE("build_set enforces invariants") {
  Graph p4 = path_graph(4);
  Graph c4 = cycle_graph(4);
  Graph m2 = disjoint_union(complete_graph(2), complete_graph(2));

  SECTION("accepts the complete R(3,3,4)") {
    auto set = build_set({3, 3}, 4, {p4, c4, m2});
    REQUIRE(set.size() == 3);
    REQUIRE(set.order == 4);
  }
  SECTION("rejects non-counterexamples") {
    REQUIRE_THROWS_AS(build_set({3, 3}, 4, {complete_graph(4)}), std::invalid_argument);
  }
  SECTION("rejects isomorphic duplicates") {
    std::mt19937_64 rng(9);
    REQUIRE_THROWS_AS(build_set({3, 3}, 4, {p4, random_relabeling(rng, p4)}),
                      std::invalid_argument);
  }
  SECTION("rejects order mismatches") {
    REQUIRE_THROWS_AS(build_set({3, 3}, 4, {p4, cycle_graph(5)}), std::invalid_argument);
  }
  SECTION("rejects bad params") {
    REQUIRE_THROWS_AS(build_set({1, 3}, 4, {p4}), std::invalid_argument);
  }
}

TEST_CASE("find_isomorphic_member uses buckets") {
  auto set = build_set({3, 3}, 4,
                       {path_graph(4), cycle_graph(4),
                        disjoint_union(complete_graph(2), complete_graph(2))});
  std::mt19937_64 rng(21);
  std::size_t iso_calls = 0;
  auto hit = set.find_isomorphic_member(random_relabeling(rng, cycle_graph(4)), &iso_calls);
  REQUIRE(hit.has_value());
  REQUIRE(set.members[*hit] == cycle_graph(4));
  REQUIRE(iso_calls >= 1);

  REQUIRE(!set.find_isomorphic_member(complete_graph(4)).has_value());
  REQUIRE(!set.find_isomorphic_member(complete_graph(5)).has_value());
  REQUIRE(set.max_bucket_size() >= 1);
}

TEST_CASE("graph6 file round trip with diagnostics") {
  std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
  std::string good = dir + "/ramsey_test_good.g6";
  std::string bad = dir + "/ramsey_test_bad.g6";

  std::vector<Graph> graphs = {cycle_graph(5), path_graph(4)};
  write_graph6_file(good, graphs);
  auto back = read_graph6_file(good);
  REQUIRE(back.size() == 2);
  REQUIRE(back[0] == graphs[0]);
  REQUIRE(back[1] == graphs[1]);

  {
    std::ofstream out(bad);
    out << "Dhc\n####\n";
  }
  try {
    read_graph6_file(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
  }
  REQUIRE_THROWS_AS(read_graph6_file(dir + "/ramsey_no_such_file.g6"), ParseError);
  std::remove(good.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("sorted_by_graph6 is deterministic") {
  std::mt19937_64 rng(31);
  std::vector<Graph> graphs;
  for (int i = 0; i < 20; ++i) graphs.push_back(random_graph(rng, 7, 0.5));
  auto a = sorted_by_graph6(graphs);
  std::shuffle(graphs.begin(), graphs.end(), rng);
  auto b = sorted_by_graph6(graphs);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
  for (std::size_t i = 1; i < a.size(); ++i)
    REQUIRE(graph6_encode(a[i - 1]) <= graph6_encode(a[i]));
}

TEST_CASE("archives load as valid counterexample sets") {
  SECTION("R(4,6,35): 37 members") {
    auto graphs = read_graph6_file(data_dir() + "/archives/r46_35some.g6");
    auto set = build_set({4, 6}, 35, std::move(graphs));
    REQUIRE(set.size() == 37);
  }
  SECTION("R(5,5,42): 328 published representatives, complement-closed to 656") {
    auto graphs = read_graph6_file(data_dir() + "/archives/r55_42some.g6");
    REQUIRE(graphs.size() == 328);
    std::vector<Graph> closed = graphs;
    for (const Graph& g : graphs) closed.push_back(complement(g));
    closed = dedup_up_to_iso(closed);
    REQUIRE(closed.size() == 656);
    auto set = build_set({5, 5}, 42, std::move(closed));
    REQUIRE(set.size() == 656);
  }
}
