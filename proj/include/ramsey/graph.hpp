#pragma once

// Fixed-capacity simple undirected graphs over indexed vertices.
// Adjacency is one 64-bit mask per vertex, so every vertex operation is a few
// word ops. Graphs are values: every "mutation" returns a new Graph.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

inline constexpr int kMaxVertices = 64;

// ---- VertexSet ----

struct VertexSet {
  std::uint64_t bits = 0;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t b) : bits(b) {}

  bool contains(int v) const { return (bits >> v) & 1u; }
  int count() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }

  VertexSet with(int v) const { return VertexSet(bits | (1ull << v)); }
  VertexSet without(int v) const { return VertexSet(bits & ~(1ull << v)); }

  friend bool operator==(VertexSet a, VertexSet b) { return a.bits == b.bits; }
  friend bool operator!=(VertexSet a, VertexSet b) { return a.bits != b.bits; }
  friend bool operator<(VertexSet a, VertexSet b) { return a.bits < b.bits; }
};

// Lowest set bit as a vertex index; mask must be nonzero.
inline int first_vertex(std::uint64_t mask) { return std::countr_zero(mask); }

inline std::uint64_t all_vertices_mask(int n) {
  return n >= 64 ? ~0ull : (1ull << n) - 1;
}

// Remove bit i from a mask and shift higher bits down by one.
inline std::uint64_t compact_bit(std::uint64_t mask, int i) {
  std::uint64_t low = mask & ((1ull << i) - 1);
  std::uint64_t high = (i == 63) ? 0 : (mask >> (i + 1)) << i;
  return low | high;
}

// Inverse of compact_bit: open a gap at position i (bit i becomes 0).
inline std::uint64_t expand_bit(std::uint64_t mask, int i) {
  std::uint64_t low = mask & ((1ull << i) - 1);
  std::uint64_t high = (mask >> i) << (i + 1);
  return low | high;
}

// ---- Graph ----

struct Graph {
  int n = 0;
  std::array<std::uint64_t, kMaxVertices> adj{};

  static Graph empty(int order) {
    if (order < 1 || order > kMaxVertices)
      throw std::invalid_argument("graph order must be in [1,64]");
    Graph g;
    g.n = order;
    return g;
  }

  bool has_edge(int u, int v) const { return (adj[u] >> v) & 1u; }
  int degree(int v) const { return std::popcount(adj[v]); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (int v = 0; v < n; ++v) total += degree(v);
    return total / 2;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.n != b.n) return false;
    for (int v = 0; v < a.n; ++v)
      if (a.adj[v] != b.adj[v]) return false;
    return true;
  }
};

// Construction helper; u == v is rejected like set_edge.
inline void add_edge_inplace(Graph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("self loop");
  if (u < 0 || v < 0 || u >= g.n || v >= g.n)
    throw std::invalid_argument("vertex out of range");
  g.adj[u] |= 1ull << v;
  g.adj[v] |= 1ull << u;
}

inline Graph set_edge(const Graph& g, int u, int v, bool present) {
  if (u == v) throw std::invalid_argument("self loop");
  if (u < 0 || v < 0 || u >= g.n || v >= g.n)
    throw std::invalid_argument("vertex out of range");
  Graph out = g;
  if (present) {
    out.adj[u] |= 1ull << v;
    out.adj[v] |= 1ull << u;
  } else {
    out.adj[u] &= ~(1ull << v);
    out.adj[v] &= ~(1ull << u);
  }
  return out;
}

inline VertexSet neighbor_set(const Graph& g, int v) {
  if (v < 0 || v >= g.n) throw std::invalid_argument("vertex out of range");
  return VertexSet(g.adj[v]);
}

inline Graph delete_vertex(const Graph& g, int i) {
  if (i < 0 || i >= g.n) throw std::invalid_argument("vertex out of range");
  if (g.n < 2) throw std::invalid_argument("cannot delete from order-1 graph");
  Graph out;
  out.n = g.n - 1;
  for (int v = 0; v < g.n; ++v) {
    if (v == i) continue;
    int nv = v < i ? v : v - 1;
    out.adj[nv] = compact_bit(g.adj[v], i);
  }
  return out;
}

inline Graph add_isolated_vertex(const Graph& g) {
  if (g.n >= kMaxVertices) throw std::length_error("vertex capacity exceeded");
  Graph out = g;
  out.n = g.n + 1;
  out.adj[out.n - 1] = 0;
  return out;
}

inline Graph induced_subgraph(const Graph& g, VertexSet keep) {
  if (keep.empty()) throw std::invalid_argument("empty vertex set");
  if (keep.bits & ~all_vertices_mask(g.n))
    throw std::invalid_argument("vertex set exceeds graph order");
  Graph out;
  out.n = keep.count();
  int new_idx[kMaxVertices];
  int next = 0;
  for (std::uint64_t m = keep.bits; m; m &= m - 1)
    new_idx[first_vertex(m)] = next++;
  for (std::uint64_t m = keep.bits; m; m &= m - 1) {
    int v = first_vertex(m);
    std::uint64_t row = g.adj[v] & keep.bits;
    std::uint64_t packed = 0;
    for (std::uint64_t r = row; r; r &= r - 1)
      packed |= 1ull << new_idx[first_vertex(r)];
    out.adj[new_idx[v]] = packed;
  }
  return out;
}

inline Graph complement(const Graph& g) {
  Graph out;
  out.n = g.n;
  std::uint64_t full = all_vertices_mask(g.n);
  for (int v = 0; v < g.n; ++v) out.adj[v] = (~g.adj[v] & full) & ~(1ull << v);
  return out;
}

// Attach one new vertex adjacent to exactly `nbrs` (subset of g's vertices).
inline Graph attach_vertex(const Graph& g, VertexSet nbrs) {
  if (nbrs.bits & ~all_vertices_mask(g.n))
    throw std::invalid_argument("neighbor set exceeds graph order");
  Graph out = add_isolated_vertex(g);
  int w = out.n - 1;
  out.adj[w] = nbrs.bits;
  for (std::uint64_t m = nbrs.bits; m; m &= m - 1)
    out.adj[first_vertex(m)] |= 1ull << w;
  return out;
}

inline std::vector<int> sorted_degree_sequence(const Graph& g) {
  std::vector<int> deg(g.n);
  for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  std::sort(deg.begin(), deg.end());
  return deg;
}

// ---- graph6 ----

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Graph graph6_decode(const std::string& line) {
  if (line.empty()) throw ParseError("empty graph6 line");
  for (char c : line)
    if (c < 63 || c > 126) throw ParseError("invalid graph6 character");
  std::size_t pos = 0;
  long n;
  if (line[0] == '~') {
    if (line.size() >= 2 && line[1] == '~')
      throw ParseError("graph6 order exceeds capacity (64)");
    if (line.size() < 4) throw ParseError("truncated graph6 header");
    n = (long(line[1] - 63) << 12) | (long(line[2] - 63) << 6) |
        long(line[3] - 63);
    pos = 4;
  } else {
    n = line[0] - 63;
    pos = 1;
  }
  if (n < 1) throw ParseError("graph6 order must be at least 1");
  if (n > kMaxVertices) throw ParseError("graph6 order exceeds capacity (64)");
  std::size_t nbits = std::size_t(n) * (n - 1) / 2;
  std::size_t nbytes = (nbits + 5) / 6;
  if (line.size() != pos + nbytes)
    throw ParseError("graph6 length mismatch for stated order");
  Graph g = Graph::empty(int(n));
  std::size_t bit = 0;
  int col = 1, row = 0;
  for (std::size_t k = 0; k < nbytes; ++k) {
    int val = line[pos + k] - 63;
    for (int shift = 5; shift >= 0; --shift, ++bit) {
      int b = (val >> shift) & 1;
      if (bit >= nbits) {
        if (b) throw ParseError("nonzero graph6 padding bits");
        continue;
      }
      if (b) add_edge_inplace(g, row, col);
      if (++row == col) {
        ++col;
        row = 0;
      }
    }
  }
  return g;
}

inline std::string graph6_encode(const Graph& g) {
  std::string out;
  if (g.n <= 62) {
    out.push_back(char(63 + g.n));
  } else {
    out.push_back('~');
    out.push_back(char(63 + ((g.n >> 12) & 63)));
    out.push_back(char(63 + ((g.n >> 6) & 63)));
    out.push_back(char(63 + (g.n & 63)));
  }
  int val = 0, nb = 0;
  for (int col = 1; col < g.n; ++col) {
    for (int row = 0; row < col; ++row) {
      val = (val << 1) | (g.has_edge(row, col) ? 1 : 0);
      if (++nb == 6) {
        out.push_back(char(63 + val));
        val = 0;
        nb = 0;
      }
    }
  }
  if (nb > 0) out.push_back(char(63 + (val << (6 - nb))));
  return out;
}

}  // namespace ramsey
