#pragma once

// Shared test helpers: deterministic random graphs, tiny named graphs,
// brute-force reference implementations, fixture paths.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ramsey/graph.hpp"

namespace testutil {

using ramsey::Graph;

inline std::string data_dir() {
  if (const char* env = std::getenv("RAMSEY_TEST_DATA")) return env;
  return "data";
}

inline Graph path_graph(int n) {
  Graph g = Graph::empty(n);
  for (int v = 0; v + 1 < n; ++v) ramsey::add_edge_inplace(g, v, v + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  ramsey::add_edge_inplace(g, 0, n - 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g = Graph::empty(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) ramsey::add_edge_inplace(g, u, v);
  return g;
}

inline Graph empty_graph(int n) { return Graph::empty(n); }

// Disjoint union, relabeling b's vertices after a's.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g = Graph::empty(a.n + b.n);
  for (int u = 0; u < a.n; ++u)
    for (int v = u + 1; v < a.n; ++v)
      if (a.has_edge(u, v)) ramsey::add_edge_inplace(g, u, v);
  for (int u = 0; u < b.n; ++u)
    for (int v = u + 1; v < b.n; ++v)
      if (b.has_edge(u, v)) ramsey::add_edge_inplace(g, a.n + u, a.n + v);
  return g;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p = 0.5) {
  Graph g = Graph::empty(n);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) ramsey::add_edge_inplace(g, u, v);
  return g;
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
  Graph out = Graph::empty(g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.has_edge(u, v)) ramsey::add_edge_inplace(out, perm[u], perm[v]);
  return out;
}

inline Graph random_relabeling(std::mt19937_64& rng, const Graph& g) {
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(g, perm);
}

// Exhaustive isomorphism test over all n! permutations; n small.
inline bool brute_isomorphic(const Graph& a, const Graph& b) {
  if (a.n != b.n) return false;
  std::vector<int> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < a.n && ok; ++u)
      for (int v = u + 1; v < a.n && ok; ++v)
        if (a.has_edge(u, v) != b.has_edge(perm[u], perm[v])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace testutil
