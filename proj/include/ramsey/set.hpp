#pragma once

// Deduplicated counterexample collections with a hash-bucket index, plus
// graph6 file I/O with line-number diagnostics.

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/iso.hpp"
#include "ramsey/oracle.hpp"

namespace ramsey {

struct CounterexampleSet {
  RamseyParams params;
  int order = 0;
  HashScheme scheme = HashScheme::triangles;
  std::vector<Graph> members;
  std::unordered_map<HashKey, std::vector<std::size_t>, HashKeyHasher> index;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }

  const std::vector<std::size_t>* bucket(const HashKey& key) const {
    auto it = index.find(key);
    return it == index.end() ? nullptr : &it->second;
  }

  std::size_t max_bucket_size() const {
    std::size_t mx = 0;
    for (const auto& [key, bucket] : index) mx = std::max(mx, bucket.size());
    return mx;
  }

  // bucket-filtered membership test; returns the matching member index
  std::optional<std::size_t> find_isomorphic_member(
      const Graph& g, std::size_t* iso_calls = nullptr) const {
    if (g.n != order) return std::nullopt;
    const auto* bucket_ptr = bucket(hash_graph(g, scheme));
    if (!bucket_ptr) return std::nullopt;
    for (std::size_t idx : *bucket_ptr) {
      if (iso_calls) ++*iso_calls;
      if (isomorphic(g, members[idx])) return idx;
    }
    return std::nullopt;
  }
};

// Assembles a set and enforces the container invariants: uniform order,
// oracle-verified members (optional), pairwise non-isomorphic members.
inline CounterexampleSet build_set(RamseyParams params, int order,
                                   std::vector<Graph> graphs,
                                   HashScheme scheme = HashScheme::triangles,
                                   bool oracle_check = true) {
  params.validate();
  if (order < 1 || order > kMaxVertices)
    throw std::invalid_argument("set order must be in [1,64]");
  CounterexampleSet set;
  set.params = params;
  set.order = order;
  set.scheme = scheme;
  for (Graph& g : graphs) {
    if (g.n != order)
      throw std::invalid_argument("member order mismatch: expected " +
                                  std::to_string(order) + ", got " +
                                  std::to_string(g.n));
    if (oracle_check && !is_counterexample(g, params))
      throw std::invalid_argument("graph " + graph6_encode(g) +
                                  " is not a counterexample for the given s,t");
    HashKey key = hash_graph(g, scheme);
    auto& bucket = set.index[key];
    for (std::size_t idx : bucket)
      if (isomorphic(g, set.members[idx]))
        throw std::invalid_argument("duplicate member (isomorphic to an earlier graph): " +
                                    graph6_encode(g));
    bucket.push_back(set.members.size());
    set.members.push_back(std::move(g));
  }
  return set;
}

// ---- graph6 files ----

inline std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::vector<Graph> graphs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      graphs.push_back(graph6_decode(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ": line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return graphs;
}

inline void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (const Graph& g : graphs) out << graph6_encode(g) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

inline std::vector<Graph> sorted_by_graph6(std::vector<Graph> graphs) {
  std::sort(graphs.begin(), graphs.end(), [](const Graph& a, const Graph& b) {
    return graph6_encode(a) < graph6_encode(b);
  });
  return graphs;
}

}  // namespace ramsey
