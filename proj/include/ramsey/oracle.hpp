#pragma once

// Independent ground truth: direct clique / independent-set tests and
// exhaustive enumeration of counterexample sets for small orders. Nothing
// here shares logic with the engine; that is the point.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/iso.hpp"

namespace ramsey {

struct RamseyParams {
  int s = 3;
  int t = 3;

  void validate() const {
    if (s < 2 || t < 2) throw std::invalid_argument("s and t must be at least 2");
  }
  friend bool operator==(RamseyParams a, RamseyParams b) {
    return a.s == b.s && a.t == b.t;
  }
};

namespace detail {

inline bool clique_rec(const Graph& g, std::uint64_t cand, int need) {
  if (need == 0) return true;
  while (std::popcount(cand) >= need) {
    int v = first_vertex(cand);
    cand &= cand - 1;
    if (clique_rec(g, cand & g.adj[v], need - 1)) return true;
  }
  return false;
}

}  // namespace detail

inline bool has_clique(const Graph& g, int s) {
  if (s < 1) throw std::invalid_argument("clique size must be at least 1");
  return detail::clique_rec(g, all_vertices_mask(g.n), s);
}

inline bool has_independent_set(const Graph& g, int t) {
  if (t < 1) throw std::invalid_argument("independent set size must be at least 1");
  return has_clique(complement(g), t);
}

inline bool is_counterexample(const Graph& g, RamseyParams p) {
  p.validate();
  return !has_clique(g, p.s) && !has_independent_set(g, p.t);
}

// ---- exhaustive enumeration ----

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 1ull << 30;

// All counterexample graphs of order n up to isomorphism, by scanning every
// labeled graph (one bit per vertex pair). Refuses when 2^C(n,2) exceeds the
// budget. Workers partition the mask space; the merged result is independent
// of worker count (ascending mask order, then first-seen dedup).
inline std::vector<Graph> enumerate_counterexamples(
    RamseyParams p, int n, std::uint64_t budget = kDefaultOracleBudget,
    int workers = 1) {
  p.validate();
  if (n < 1 || n > kMaxVertices) throw std::invalid_argument("order must be in [1,64]");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  int npairs = n * (n - 1) / 2;
  if (npairs >= 64 || (npairs > 0 && (1ull << npairs) > budget))
    throw BudgetError("enumeration at order " + std::to_string(n) + " needs 2^" +
                      std::to_string(npairs) + " graph tests, over the budget of " +
                      std::to_string(budget));

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(npairs);
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);

  auto decode_mask = [&](std::uint64_t mask) {
    Graph g = Graph::empty(n);
    for (std::uint64_t m = mask; m; m &= m - 1) {
      auto [u, v] = pairs[first_vertex(m)];
      g.adj[u] |= 1ull << v;
      g.adj[v] |= 1ull << u;
    }
    return g;
  };

  std::uint64_t total = 1ull << npairs;
  int nthreads = int(std::min<std::uint64_t>(workers, total));
  std::vector<std::vector<std::uint64_t>> found(nthreads);
  auto scan = [&](int tid) {
    std::uint64_t lo = total / nthreads * tid;
    std::uint64_t hi = (tid == nthreads - 1) ? total : total / nthreads * (tid + 1);
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      Graph g = decode_mask(mask);
      if (is_counterexample(g, p)) found[tid].push_back(mask);
    }
  };
  if (nthreads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(scan, tid);
    for (auto& th : pool) th.join();
  }

  std::vector<Graph> reps;
  std::unordered_map<HashKey, std::vector<std::size_t>, HashKeyHasher> buckets;
  for (int tid = 0; tid < nthreads; ++tid) {
    for (std::uint64_t mask : found[tid]) {
      Graph g = decode_mask(mask);
      auto& bucket = buckets[hash_graph(g, HashScheme::triangles)];
      bool dup = false;
      for (std::size_t idx : bucket)
        if (isomorphic(g, reps[idx])) {
          dup = true;
          break;
        }
      if (!dup) {
        bucket.push_back(reps.size());
        reps.push_back(g);
      }
    }
  }
  return reps;
}

}  // namespace ramsey
