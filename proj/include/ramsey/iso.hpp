#pragma once

// Isomorphism search and invariant hashing.
//
// The matcher is a plain backtracking search over vertex assignments with
// forward checking, pruned by a color partition computed jointly on both
// graphs (degree + per-vertex triangle count, refined WL-style until stable).
// Any complete search with sound pruning qualifies here; colors are assigned
// from signatures sorted across both graphs, so equal structure gets equal
// color on both sides.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

// ---- per-vertex invariants ----

inline int triangles_through(const Graph& g, int v) {
  int total = 0;
  for (std::uint64_t m = g.adj[v]; m; m &= m - 1)
    total += std::popcount(g.adj[v] & g.adj[first_vertex(m)]);
  return total / 2;
}

inline std::vector<int> triangle_counts(const Graph& g) {
  std::vector<int> t(g.n);
  for (int v = 0; v < g.n; ++v) t[v] = triangles_through(g, v);
  return t;
}

// ---- hashing ----

enum class HashScheme { degree, triangles, k3profile };

inline const char* to_string(HashScheme s) {
  switch (s) {
    case HashScheme::degree: return "degree";
    case HashScheme::triangles: return "triangles";
    case HashScheme::k3profile: return "k3profile";
  }
  return "?";
}

inline std::optional<HashScheme> hash_scheme_from_string(const std::string& s) {
  if (s == "degree") return HashScheme::degree;
  if (s == "triangles") return HashScheme::triangles;
  if (s == "k3profile") return HashScheme::k3profile;
  return std::nullopt;
}

struct HashKey {
  HashScheme scheme = HashScheme::degree;
  std::string bytes;  // length-prefixed big-endian u32 list

  friend bool operator==(const HashKey& a, const HashKey& b) {
    return a.scheme == b.scheme && a.bytes == b.bytes;
  }
  friend bool operator<(const HashKey& a, const HashKey& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    return a.bytes < b.bytes;
  }
};

inline void append_be32(std::string& out, std::uint32_t v) {
  out.push_back(char((v >> 24) & 0xff));
  out.push_back(char((v >> 16) & 0xff));
  out.push_back(char((v >> 8) & 0xff));
  out.push_back(char(v & 0xff));
}

inline std::string serialize_u32_list(const std::vector<std::uint32_t>& vals) {
  std::string out;
  append_be32(out, std::uint32_t(vals.size()));
  for (auto v : vals) append_be32(out, v);
  return out;
}

inline HashKey hash_graph(const Graph& g, HashScheme scheme) {
  std::vector<std::uint32_t> vals;
  switch (scheme) {
    case HashScheme::degree: {
      for (int d : sorted_degree_sequence(g)) vals.push_back(std::uint32_t(d));
      break;
    }
    case HashScheme::triangles: {
      auto t = triangle_counts(g);
      std::sort(t.begin(), t.end());
      for (int c : t) vals.push_back(std::uint32_t(c));
      break;
    }
    case HashScheme::k3profile: {
      // per vertex: (#triangles through v, #induced 2-paths centered at v),
      // the two informative 3-vertex subgraph types containing v
      std::vector<std::pair<std::uint32_t, std::uint32_t>> prof(g.n);
      for (int v = 0; v < g.n; ++v) {
        std::uint32_t tri = std::uint32_t(triangles_through(g, v));
        std::uint32_t deg = std::uint32_t(g.degree(v));
        std::uint32_t pairs = deg * (deg - 1) / 2;
        prof[v] = {tri, pairs - tri};
      }
      std::sort(prof.begin(), prof.end());
      for (auto [a, b] : prof) {
        vals.push_back(a);
        vals.push_back(b);
      }
      break;
    }
  }
  return HashKey{scheme, serialize_u32_list(vals)};
}

struct HashKeyHasher {
  std::size_t operator()(const HashKey& k) const {
    return std::hash<std::string>()(k.bytes) * 3 + std::size_t(k.scheme);
  }
};

// ---- color partition (joint refinement) ----

struct JointColoring {
  std::vector<int> color_a, color_b;
  int num_colors = 0;
  bool histograms_match = false;
};

inline JointColoring joint_coloring(const Graph& a, const Graph& b) {
  JointColoring jc;
  int na = a.n, nb = b.n;
  std::vector<std::int64_t> sig_a(na), sig_b(nb);
  auto ta = triangle_counts(a);
  auto tb = triangle_counts(b);
  for (int v = 0; v < na; ++v) sig_a[v] = (std::int64_t(a.degree(v)) << 32) | ta[v];
  for (int v = 0; v < nb; ++v) sig_b[v] = (std::int64_t(b.degree(v)) << 32) | tb[v];

  std::vector<int> ca(na), cb(nb);
  auto assign = [&](auto& sigs_a, auto& sigs_b) {
    std::vector<std::decay_t<decltype(sigs_a[0])>> all;
    all.reserve(na + nb);
    for (auto& s : sigs_a) all.push_back(s);
    for (auto& s : sigs_b) all.push_back(s);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (int v = 0; v < na; ++v)
      ca[v] = int(std::lower_bound(all.begin(), all.end(), sigs_a[v]) - all.begin());
    for (int v = 0; v < nb; ++v)
      cb[v] = int(std::lower_bound(all.begin(), all.end(), sigs_b[v]) - all.begin());
    return int(all.size());
  };
  int ncolors = assign(sig_a, sig_b);

  // refine: signature = (own color, sorted neighbor colors); stop at fixpoint
  while (true) {
    std::vector<std::vector<int>> ra(na), rb(nb);
    for (int v = 0; v < na; ++v) {
      ra[v].push_back(ca[v]);
      for (std::uint64_t m = a.adj[v]; m; m &= m - 1) ra[v].push_back(ca[first_vertex(m)]);
      std::sort(ra[v].begin() + 1, ra[v].end());
    }
    for (int v = 0; v < nb; ++v) {
      rb[v].push_back(cb[v]);
      for (std::uint64_t m = b.adj[v]; m; m &= m - 1) rb[v].push_back(cb[first_vertex(m)]);
      std::sort(rb[v].begin() + 1, rb[v].end());
    }
    int next = assign(ra, rb);
    if (next == ncolors) break;
    ncolors = next;
  }

  std::vector<int> hist_a(ncolors, 0), hist_b(ncolors, 0);
  for (int v = 0; v < na; ++v) ++hist_a[ca[v]];
  for (int v = 0; v < nb; ++v) ++hist_b[cb[v]];
  jc.color_a = std::move(ca);
  jc.color_b = std::move(cb);
  jc.num_colors = ncolors;
  jc.histograms_match = (na == nb) && (hist_a == hist_b);
  return jc;
}

// ---- isomorphism search ----

struct Isomorphism {
  std::vector<int> map;  // map[v] = image vertex

  VertexSet apply(VertexSet s) const {
    std::uint64_t out = 0;
    for (std::uint64_t m = s.bits; m; m &= m - 1) out |= 1ull << map[first_vertex(m)];
    return VertexSet(out);
  }
  Isomorphism inverse() const {
    Isomorphism inv;
    inv.map.resize(map.size());
    for (std::size_t v = 0; v < map.size(); ++v) inv.map[map[v]] = int(v);
    return inv;
  }
};

inline bool is_valid_isomorphism(const Graph& a, const Graph& b, const Isomorphism& iso) {
  if (a.n != b.n || int(iso.map.size()) != a.n) return false;
  std::uint64_t seen = 0;
  for (int v = 0; v < a.n; ++v) {
    int x = iso.map[v];
    if (x < 0 || x >= b.n || (seen >> x) & 1) return false;
    seen |= 1ull << x;
  }
  for (int u = 0; u < a.n; ++u)
    for (int v = u + 1; v < a.n; ++v)
      if (a.has_edge(u, v) != b.has_edge(iso.map[u], iso.map[v])) return false;
  return true;
}

namespace detail {

struct IsoSearch {
  const Graph& a;
  const Graph& b;
  bool find_all;
  std::vector<Isomorphism>* out;
  std::optional<Isomorphism>* first;

  std::vector<int> order;                    // a-vertices in match order
  std::array<std::uint64_t, 64> cand{};      // per a-vertex candidate mask
  std::array<int, 64> map{};
  std::uint64_t used = 0;
  std::uint64_t unplaced = 0;                // a-vertices not yet matched

  IsoSearch(const Graph& a_, const Graph& b_) : a(a_), b(b_), find_all(false), out(nullptr), first(nullptr) {}

  bool prepare() {
    if (a.n != b.n) return false;
    JointColoring jc = joint_coloring(a, b);
    if (!jc.histograms_match) return false;

    std::vector<std::uint64_t> class_mask_b(jc.num_colors, 0);
    for (int x = 0; x < b.n; ++x) class_mask_b[jc.color_b[x]] |= 1ull << x;
    std::vector<int> class_size(jc.num_colors, 0);
    for (int v = 0; v < a.n; ++v) ++class_size[jc.color_a[v]];
    for (int v = 0; v < a.n; ++v) cand[v] = class_mask_b[jc.color_a[v]];

    // static order: most placed neighbors first, then rarest class
    std::vector<bool> placed(a.n, false);
    order.reserve(a.n);
    for (int step = 0; step < a.n; ++step) {
      int best = -1, best_nbrs = -1, best_size = 1 << 30;
      for (int v = 0; v < a.n; ++v) {
        if (placed[v]) continue;
        int nbrs = 0;
        for (std::uint64_t m = a.adj[v]; m; m &= m - 1)
          if (placed[first_vertex(m)]) ++nbrs;
        int size = class_size[jc.color_a[v]];
        if (nbrs > best_nbrs || (nbrs == best_nbrs && size < best_size)) {
          best = v;
          best_nbrs = nbrs;
          best_size = size;
        }
      }
      placed[best] = true;
      order.push_back(best);
    }
    unplaced = all_vertices_mask(a.n);
    return true;
  }

  // returns true to stop the whole search (find-one satisfied)
  bool run(int depth) {
    if (depth == a.n) {
      Isomorphism iso;
      iso.map.assign(map.begin(), map.begin() + a.n);
      if (find_all) {
        out->push_back(std::move(iso));
        return false;
      }
      *first = std::move(iso);
      return true;
    }
    int u = order[depth];
    std::uint64_t full = all_vertices_mask(b.n);
    std::uint64_t options = cand[u] & ~used;
    if (!options) return false;

    std::array<std::uint64_t, 64> saved;
    for (std::uint64_t opts = options; opts; opts &= opts - 1) {
      int x = first_vertex(opts);
      map[u] = x;
      used |= 1ull << x;
      unplaced &= ~(1ull << u);

      std::uint64_t rest = unplaced;
      for (std::uint64_t m = rest; m; m &= m - 1) saved[first_vertex(m)] = cand[first_vertex(m)];
      bool feasible = true;
      std::uint64_t allowed_adj = b.adj[x];
      std::uint64_t allowed_non = ~b.adj[x] & full;
      for (std::uint64_t m = rest; m; m &= m - 1) {
        int w = first_vertex(m);
        cand[w] &= a.has_edge(u, w) ? allowed_adj : allowed_non;
        if (!(cand[w] & ~used)) {
          feasible = false;
          break;
        }
      }
      if (feasible && run(depth + 1)) return true;

      for (std::uint64_t m = rest; m; m &= m - 1) cand[first_vertex(m)] = saved[first_vertex(m)];
      unplaced |= 1ull << u;
      used &= ~(1ull << map[u]);
    }
    return false;
  }
};

}  // namespace detail

inline std::optional<Isomorphism> find_isomorphism(const Graph& a, const Graph& b) {
  detail::IsoSearch s(a, b);
  if (!s.prepare()) return std::nullopt;
  std::optional<Isomorphism> result;
  s.find_all = false;
  s.first = &result;
  s.run(0);
  return result;
}

inline std::vector<Isomorphism> all_isomorphisms(const Graph& a, const Graph& b) {
  detail::IsoSearch s(a, b);
  std::vector<Isomorphism> result;
  if (!s.prepare()) return result;
  s.find_all = true;
  s.out = &result;
  s.run(0);
  return result;
}

inline std::vector<Isomorphism> automorphisms(const Graph& g) {
  return all_isomorphisms(g, g);
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  return find_isomorphism(a, b).has_value();
}

// ---- dedup ----

inline std::vector<Graph> dedup_up_to_iso(const std::vector<Graph>& graphs,
                                          HashScheme scheme = HashScheme::triangles) {
  std::vector<Graph> reps;
  if (graphs.empty()) return reps;
  int order = graphs.front().n;
  std::unordered_map<HashKey, std::vector<std::size_t>, HashKeyHasher> buckets;
  for (const Graph& g : graphs) {
    if (g.n != order) throw std::invalid_argument("dedup requires uniform order");
    HashKey key = hash_graph(g, scheme);
    auto& bucket = buckets[key];
    bool dup = false;
    for (std::size_t idx : bucket) {
      if (isomorphic(g, reps[idx])) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      bucket.push_back(reps.size());
      reps.push_back(g);
    }
  }
  return reps;
}

}  // namespace ramsey
