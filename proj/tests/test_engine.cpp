#include "ramsey/engine.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "util.hpp"

using namespace ramsey;
using namespace testutil;

namespace {

CounterexampleSet r334() {
  return build_set({3, 3}, 4,
                   {path_graph(4), cycle_graph(4),
                    disjoint_union(complete_graph(2), complete_graph(2))});
}

std::vector<std::uint64_t> masks(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool sets_iso_equal(const std::vector<Graph>& a, const std::vector<Graph>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Graph& g : a) {
    bool matched = false;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!used[i] && isomorphic(g, b[i])) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("build_psi on R(3,3,4)") {
  auto src = r334();
  PsiMap psi = build_psi(src);

  REQUIRE(psi.keys.size() == 2);
  REQUIRE(psi.key_order == 3);

  // first-seen representatives with the construction order above:
  // deleting vertex 0 of P4 gives the path 0-1-2; deleting vertex 1 gives
  // the isolated-0 + edge(1,2) form of K2+K1
  Graph p3 = path_graph(3);
  Graph k2k1 = set_edge(Graph::empty(3), 1, 2, true);
  REQUIRE(psi.keys[0] == p3);
  REQUIRE(psi.keys[1] == k2k1);

  // Ψ(P3): both endpoints separately (P4 minus an end, Aut-closed) and both
  // endpoints together (C4 minus a vertex)
  REQUIRE(masks(psi.entries[0]) ==
          std::vector<std::uint64_t>{0b001, 0b100, 0b101});
  // Ψ(K2+K1): the isolated vertex alone (2K2 minus an end) and the isolated
  // vertex plus either edge endpoint (P4 minus an inner vertex, Aut-closed)
  REQUIRE(masks(psi.entries[1]) ==
          std::vector<std::uint64_t>{0b001, 0b011, 0b101});

  SECTION("every key class has the right contributors") {
    REQUIRE(psi.contributors[0].size() == 2);  // P4 and C4 share P3
    REQUIRE(psi.contributors[1].size() == 2);  // P4 and 2K2 share K2+K1
  }
}

TEST_CASE("build_psi structural cases") {
  SECTION("single K2") {
    auto src = build_set({3, 3}, 2, {complete_graph(2)});
    PsiMap psi = build_psi(src);
    REQUIRE(psi.keys.size() == 1);
    REQUIRE(psi.keys[0].n == 1);
    REQUIRE(psi.entries[0] == std::vector<std::uint64_t>{0b1});
  }
  SECTION("empty source gives empty map") {
    auto src = build_set({3, 3}, 4, {});
    PsiMap psi = build_psi(src);
    REQUIRE(psi.keys.empty());
    REQUIRE(psi.total_entries() == 0);
  }
  SECTION("order below 2 rejected") {
    auto src = build_set({3, 3}, 1, {Graph::empty(1)});
    REQUIRE_THROWS_AS(build_psi(src), std::invalid_argument);
  }
}

TEST_CASE("psi_attach_check") {
  auto src = r334();
  PsiMap psi = build_psi(src);
  Graph p3 = path_graph(3);

  SECTION("reconstructing C4 from P3 plus both endpoints") {
    REQUIRE(psi_attach_check(psi, p3, VertexSet(0b101)));
  }
  SECTION("attaching to the center makes a claw, not a counterexample") {
    REQUIRE(!psi_attach_check(psi, p3, VertexSet(0b010)));
  }
  SECTION("robust to relabeling of the probe graph") {
    // path 2-0-1: center is vertex 0, endpoints are {1,2}
    Graph relabeled = set_edge(set_edge(Graph::empty(3), 0, 2, true), 0, 1, true);
    REQUIRE(psi_attach_check(psi, relabeled, VertexSet(0b110)));
    REQUIRE(!psi_attach_check(psi, relabeled, VertexSet(0b001)));
  }
  SECTION("graph with no isomorphic key") {
    REQUIRE(!psi_attach_check(psi, complete_graph(3), VertexSet(0b001)));
  }
  SECTION("argument errors") {
    REQUIRE_THROWS_AS(psi_attach_check(psi, path_graph(4), VertexSet(0b1)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(psi_attach_check(psi, p3, VertexSet(0b1000)),
                      std::invalid_argument);
  }
}

TEST_CASE("build_psi completeness invariant") {
  std::vector<CounterexampleSet> sources;
  sources.push_back(r334());
  sources.push_back(build_set({3, 4}, 5, enumerate_counterexamples({3, 4}, 5)));
  sources.push_back(build_set({3, 4}, 6, enumerate_counterexamples({3, 4}, 6)));
  for (const auto& src : sources) {
    PsiMap psi = build_psi(src);
    for (const Graph& member : src.members) {
      for (int i = 0; i < src.order; ++i) {
        VertexSet m(compact_bit(member.adj[i], i));
        REQUIRE(psi_attach_check(psi, delete_vertex(member, i), m));
      }
    }
  }
}

TEST_CASE("check_candidate") {
  auto src = r334();
  SECTION("C5 passes") {
    std::size_t iso_calls = 0;
    REQUIRE(check_candidate(cycle_graph(5), src, &iso_calls));
    REQUIRE(iso_calls >= 4);
  }
  SECTION("C5 plus a chord fails") {
    Graph chord = set_edge(cycle_graph(5), 0, 2, true);
    REQUIRE(!check_candidate(chord, src));
  }
  SECTION("empty source rejects everything") {
    auto empty = build_set({3, 3}, 4, {});
    REQUIRE(!check_candidate(cycle_graph(5), empty));
  }
  SECTION("order mismatch") {
    REQUIRE_THROWS_AS(check_candidate(cycle_graph(6), src), std::invalid_argument);
  }
  SECTION("theorem precondition unavailable") {
    auto tiny = build_set({3, 3}, 2, {complete_graph(2)});
    REQUIRE_THROWS_AS(check_candidate(path_graph(3), tiny), std::invalid_argument);
  }
}

TEST_CASE("check_candidate agrees with the oracle on complete sets") {
  std::mt19937_64 rng(404);
  for (RamseyParams p : {RamseyParams{3, 3}, RamseyParams{3, 4}, RamseyParams{4, 3}}) {
    for (int n = 5; n <= 6; ++n) {
      auto src = build_set(p, n, enumerate_counterexamples(p, n));
      for (int iter = 0; iter < 150; ++iter) {
        // bias toward sparse-ish graphs so positives actually occur
        Graph g = random_graph(rng, n + 1, 0.25 + 0.2 * double(rng() % 3));
        REQUIRE(check_candidate(g, src) == is_counterexample(g, p));
      }
    }
  }
}

TEST_CASE("extend_set on complete R(3,3,4) finds exactly C5") {
  auto src = r334();
  for (ExtendMode mode : {ExtendMode::highlevel, ExtendMode::psi}) {
    auto [out, stats] = extend_set(src, mode);
    INFO("mode " << to_string(mode));
    REQUIRE(out.size() == 1);
    REQUIRE(isomorphic(out.members[0], cycle_graph(5)));
    REQUIRE(out.order == 5);
    REQUIRE(stats.counterexamples_found == 1);
    REQUIRE(stats.candidate_bound == 2 * 3 * 3 * 4);
    // 2K2 is skipped as C4's complement, so 2 members × 4 deletions × 2|Ψ| = 48
    REQUIRE(stats.candidates_examined == 48);
    REQUIRE(stats.bound_satisfied());
    REQUIRE(stats.wall_time.count() >= 0.0);
  }
}

TEST_CASE("extend_set on complete R(3,3,5) is empty, witnessing R(3,3)=6") {
  auto src = build_set({3, 3}, 5, {cycle_graph(5)});
  for (ExtendMode mode : {ExtendMode::highlevel, ExtendMode::psi}) {
    auto [out, stats] = extend_set(src, mode);
    REQUIRE(out.empty());
    REQUIRE(stats.candidates_examined == 10);  // again exactly 2k²n
    REQUIRE(stats.bound_satisfied());
  }
}

TEST_CASE("extend_set complement closure when s=t") {
  // R(3,3,3) = {P3, K2+K1}; complement(P4) = P4 but complement(C4) = 2K2,
  // so the closure step has real work to do at order 4
  auto src = build_set({3, 3}, 3,
                       {path_graph(3), set_edge(Graph::empty(3), 1, 2, true)});
  for (ExtendMode mode : {ExtendMode::highlevel, ExtendMode::psi}) {
    auto [out, stats] = extend_set(src, mode);
    REQUIRE(out.size() == 3);
    REQUIRE(sets_iso_equal(out.members, r334().members));
  }
}

TEST_CASE("extend_set argument errors") {
  REQUIRE_THROWS_AS(extend_set(build_set({3, 3}, 4, {})), std::invalid_argument);
  // max{s,t} exceeds the source order: theorem precondition unavailable
  auto tiny = build_set({3, 3}, 2, {complete_graph(2)});
  REQUIRE_THROWS_AS(extend_set(tiny), std::invalid_argument);
  REQUIRE_THROWS_AS(extend_set(r334(), ExtendMode::psi, 0), std::invalid_argument);
}

TEST_CASE("extension chain for R(3,4) matches the oracle and the census") {
  auto r345 = build_set({3, 4}, 5, enumerate_counterexamples({3, 4}, 5));
  REQUIRE(r345.size() == 9);

  std::vector<CounterexampleSet> sets;
  ChainReport report = verify_chain(r345, 9, ExtendMode::psi, 1, &sets);

  REQUIRE(report.steps.size() == 5);  // orders 5..9
  REQUIRE(report.at_order(5)->classes == 9);
  REQUIRE(report.at_order(6)->classes == 15);
  REQUIRE(report.at_order(7)->classes == 9);
  REQUIRE(report.at_order(8)->classes == 3);
  REQUIRE(report.at_order(9)->classes == 0);

  SECTION("chain sets equal oracle enumerations up to isomorphism") {
    auto oracle6 = enumerate_counterexamples({3, 4}, 6);
    auto oracle7 = enumerate_counterexamples({3, 4}, 7);
    REQUIRE(sets_iso_equal(sets[1].members, oracle6));
    REQUIRE(sets_iso_equal(sets[2].members, oracle7));
  }
  SECTION("order-8 classes match the published census") {
    auto lines = read_lines(data_dir() + "/golden/r34_8.g6");
    std::vector<Graph> published;
    for (const auto& line : lines) published.push_back(graph6_decode(line));
    REQUIRE(sets_iso_equal(sets[3].members, published));
  }
  SECTION("bound holds on every chain step") {
    for (const auto& step : report.steps)
      if (step.extended) REQUIRE(step.stats.bound_satisfied());
  }
}

TEST_CASE("modes agree on complete inputs") {
  auto r345 = build_set({3, 4}, 5, enumerate_counterexamples({3, 4}, 5));
  auto hl = extend_set(r345, ExtendMode::highlevel);
  auto ps = extend_set(r345, ExtendMode::psi);
  REQUIRE(sets_iso_equal(hl.set.members, ps.set.members));
  REQUIRE(hl.stats.candidates_examined == ps.stats.candidates_examined);
}

TEST_CASE("extension is deterministic across worker counts") {
  auto src = build_set({3, 4}, 6, enumerate_counterexamples({3, 4}, 6));
  auto w1 = extend_set(src, ExtendMode::psi, 1);
  auto w4 = extend_set(src, ExtendMode::psi, 4);
  REQUIRE(w1.set.size() == w4.set.size());
  for (std::size_t i = 0; i < w1.set.size(); ++i)
    REQUIRE(w1.set.members[i] == w4.set.members[i]);
  REQUIRE(w1.stats.candidates_examined == w4.stats.candidates_examined);
}

TEST_CASE("every extension output passes the oracle") {
  // extend_set oracle-checks its output internally (build_set), so surviving
  // this call is itself the assertion; verify explicitly anyway
  auto src = build_set({3, 4}, 5, enumerate_counterexamples({3, 4}, 5));
  auto [out, stats] = extend_set(src);
  for (const Graph& g : out.members) REQUIRE(is_counterexample(g, {3, 4}));
}

TEST_CASE("decrement_set") {
  SECTION("C5 decrements to P4") {
    auto src = build_set({3, 3}, 5, {cycle_graph(5)});
    auto out = decrement_set(src);
    REQUIRE(out.size() == 1);
    REQUIRE(isomorphic(out.members[0], path_graph(4)));
  }
  SECTION("R(3,3,4) decrements to two classes") {
    auto out = decrement_set(r334());
    REQUIRE(out.size() == 2);
    REQUIRE(out.order == 3);
  }
  SECTION("order too small") {
    auto k1 = build_set({3, 3}, 1, {Graph::empty(1)});
    REQUIRE_THROWS_AS(decrement_set(k1), std::invalid_argument);
  }
  SECTION("decrement then extend recovers R(3,3,4)") {
    auto down = decrement_set(r334());
    auto [up, stats] = extend_set(down);
    REQUIRE(up.size() == 3);
    REQUIRE(sets_iso_equal(up.members, r334().members));
  }
}

TEST_CASE("verify_chain for R(3,3)") {
  auto report = verify_chain(r334(), 6);
  REQUIRE(report.steps.size() == 3);
  REQUIRE(report.at_order(4)->classes == 3);
  REQUIRE(report.at_order(5)->classes == 1);
  REQUIRE(report.at_order(6)->classes == 0);
  REQUIRE(report.at_order(7) == nullptr);
  REQUIRE_THROWS_AS(verify_chain(r334(), 4), std::invalid_argument);
}

TEST_CASE("extension with an incomplete source stays sound") {
  // {P4} alone: extension may only emit genuine counterexamples (the subgraph
  // criterion needs nothing about completeness), and C5 must be among them
  // since all its order-4 deletions are P4
  auto src = build_set({3, 3}, 4, {path_graph(4)});
  for (ExtendMode mode : {ExtendMode::highlevel, ExtendMode::psi}) {
    auto [out, stats] = extend_set(src, mode);
    INFO("mode " << to_string(mode));
    bool has_c5 = false;
    for (const Graph& g : out.members) {
      REQUIRE(is_counterexample(g, {3, 3}));
      if (isomorphic(g, cycle_graph(5))) has_c5 = true;
    }
    REQUIRE(has_c5);
  }
}
