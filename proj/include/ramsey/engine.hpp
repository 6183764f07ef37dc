#pragma once

// Core machinery: Ψ-map construction, subgraph-membership checking, one-vertex
// extension and decrementing of counterexample sets.
//
// The Ψ map sends each isomorphism class of order-(n−1) deletions of the
// source members to every neighbor assignment whose attachment reproduces a
// member. Entries are folded through ALL isomorphisms to the class
// representative, so every entry set is closed under the representative's
// automorphism group — that closure is what makes single-isomorphism
// membership tests below exact instead of false-negative-prone.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/iso.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/set.hpp"

namespace ramsey {

enum class ExtendMode { highlevel, psi };

inline const char* to_string(ExtendMode m) {
  return m == ExtendMode::highlevel ? "highlevel" : "psi";
}

// ---- PsiMap ----

struct PsiMap {
  int key_order = 0;  // n−1
  int src_order = 0;  // n
  HashScheme scheme = HashScheme::triangles;
  std::vector<Graph> keys;  // one representative per iso class, first seen
  std::vector<std::vector<std::uint64_t>> entries;  // sorted neighbor masks per key
  std::vector<std::vector<std::size_t>> contributors;  // member indices per key
  std::unordered_map<HashKey, std::vector<std::size_t>, HashKeyHasher> index;

  // per (member, deletion index): resolved key and one iso (deletion → key)
  std::vector<int> del_key;
  std::vector<Isomorphism> del_iso;

  std::size_t slot(std::size_t member, int i) const {
    return member * std::size_t(src_order) + std::size_t(i);
  }
  bool has_entry(std::size_t key_id, std::uint64_t neighbor_bits) const {
    const auto& v = entries[key_id];
    return std::binary_search(v.begin(), v.end(), neighbor_bits);
  }
  std::size_t total_entries() const {
    std::size_t total = 0;
    for (const auto& v : entries) total += v.size();
    return total;
  }

  // bucket-filtered search for the key class of g; at most one can match
  std::optional<std::pair<std::size_t, Isomorphism>> find_key(
      const Graph& g, std::size_t* iso_calls = nullptr) const {
    auto it = index.find(hash_graph(g, scheme));
    if (it == index.end()) return std::nullopt;
    for (std::size_t key_id : it->second) {
      if (iso_calls) ++*iso_calls;
      if (auto iso = find_isomorphism(g, keys[key_id]))
        return std::make_pair(key_id, std::move(*iso));
    }
    return std::nullopt;
  }
};

inline PsiMap build_psi(const CounterexampleSet& src, std::size_t* iso_calls = nullptr) {
  if (src.order < 2) throw std::invalid_argument("build_psi requires source order >= 2");
  PsiMap psi;
  psi.key_order = src.order - 1;
  psi.src_order = src.order;
  psi.scheme = src.scheme;
  psi.del_key.assign(src.size() * std::size_t(src.order), -1);
  psi.del_iso.resize(src.size() * std::size_t(src.order));

  for (std::size_t mi = 0; mi < src.size(); ++mi) {
    const Graph& member = src.members[mi];
    for (int i = 0; i < src.order; ++i) {
      Graph deleted = delete_vertex(member, i);
      std::uint64_t m_bits = compact_bit(member.adj[i], i);

      HashKey hk = hash_graph(deleted, psi.scheme);
      auto& bucket = psi.index[hk];
      int found = -1;
      Isomorphism rep_iso;
      for (std::size_t key_id : bucket) {
        if (iso_calls) ++*iso_calls;
        auto isos = all_isomorphisms(deleted, psi.keys[key_id]);
        if (isos.empty()) continue;
        found = int(key_id);
        for (const Isomorphism& phi : isos)
          psi.entries[key_id].push_back(phi.apply(VertexSet(m_bits)).bits);
        rep_iso = std::move(isos.front());
        break;
      }
      if (found < 0) {
        found = int(psi.keys.size());
        bucket.push_back(psi.keys.size());
        psi.keys.push_back(deleted);
        psi.entries.emplace_back();
        psi.contributors.emplace_back();
        if (iso_calls) ++*iso_calls;
        auto auts = automorphisms(deleted);
        for (const Isomorphism& phi : auts)
          psi.entries[found].push_back(phi.apply(VertexSet(m_bits)).bits);
        rep_iso = std::move(auts.front());  // any self-isomorphism serves
      }
      auto& contrib = psi.contributors[found];
      if (contrib.empty() || contrib.back() != mi) contrib.push_back(mi);
      psi.del_key[psi.slot(mi, i)] = found;
      psi.del_iso[psi.slot(mi, i)] = std::move(rep_iso);
    }
  }
  for (auto& v : psi.entries) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return psi;
}

// Does attaching a vertex adjacent to exactly `neighbors` onto g reproduce a
// member of the Ψ source set? Exact because entry sets are Aut-closed.
inline bool psi_attach_check(const PsiMap& psi, const Graph& g, VertexSet neighbors,
                             std::size_t* iso_calls = nullptr) {
  if (g.n != psi.key_order)
    throw std::invalid_argument("psi_attach_check: graph order does not match key order");
  if (neighbors.bits & ~all_vertices_mask(g.n))
    throw std::invalid_argument("psi_attach_check: neighbor set exceeds graph order");
  auto hit = psi.find_key(g, iso_calls);
  if (!hit) return false;
  return psi.has_entry(hit->first, hit->second.apply(neighbors).bits);
}

// ---- checking (high-level form) ----

// True iff the first max{s,t}+1 single-vertex deletions of g are all
// isomorphic to members of src. Sound whenever src members are genuine
// counterexamples; complete when src is the full R(s,t,n).
inline bool check_candidate(const Graph& g, const CounterexampleSet& src,
                            std::size_t* iso_calls = nullptr) {
  if (g.n != src.order + 1)
    throw std::invalid_argument("check_candidate: candidate order must be source order + 1");
  int m = std::max(src.params.s, src.params.t);
  if (m + 1 > g.n)
    throw std::invalid_argument("check_candidate: candidate order too small for max{s,t}+1 deletions");
  for (int i = 0; i <= m; ++i) {
    if (!src.find_isomorphic_member(delete_vertex(g, i), iso_calls)) return false;
  }
  return true;
}

// ---- extension ----

struct ExtensionStats {
  std::uint64_t candidates_examined = 0;  // candidate graphs constructed
  std::uint64_t iso_calls = 0;
  std::size_t max_bucket = 0;
  std::size_t counterexamples_found = 0;
  std::chrono::duration<double> wall_time{0};

  // extra instrumentation
  std::uint64_t pair_candidates = 0;  // 2·(member,i,sharing member) tuples
  std::uint64_t psi_keys = 0;
  std::uint64_t psi_entries = 0;
  std::uint64_t candidate_bound = 0;  // 2·k²·n for this run

  bool bound_satisfied() const { return candidates_examined <= candidate_bound; }
};

struct ExtensionResult {
  CounterexampleSet set;
  ExtensionStats stats;
};

namespace detail {

// Ψ membership test for the deletion G_{n+1} − {v_x}: is the candidate's
// neighbor set, restricted to member − v_x and mapped onto v_x's key, stored?
inline bool psi_deletion_ok(const PsiMap& psi, std::size_t mi, int x, std::uint64_t p_bits) {
  std::size_t s = psi.slot(mi, x);
  std::uint64_t shifted = compact_bit(p_bits & ~(1ull << x), x);
  return psi.has_entry(std::size_t(psi.del_key[s]),
                       psi.del_iso[s].apply(VertexSet(shifted)).bits);
}

}  // namespace detail

inline ExtensionResult extend_set(const CounterexampleSet& src,
                                  ExtendMode mode = ExtendMode::psi,
                                  int workers = 1) {
  src.params.validate();
  if (src.empty()) throw std::invalid_argument("extend_set: source set is empty");
  if (src.order < 2) throw std::invalid_argument("extend_set: source order must be >= 2");
  if (src.order >= kMaxVertices)
    throw std::invalid_argument("extend_set: cannot extend past the 64-vertex capacity");
  int n = src.order;
  int m = std::max(src.params.s, src.params.t);
  if (m > n)
    throw std::invalid_argument("extend_set: source order too small for max{s,t}+1 verified subgraphs");
  if (workers < 1) throw std::invalid_argument("extend_set: workers must be >= 1");

  auto t0 = std::chrono::steady_clock::now();
  ExtensionStats stats;
  std::size_t k = src.size();
  stats.candidate_bound = 2 * std::uint64_t(k) * std::uint64_t(k) * std::uint64_t(n);
  stats.max_bucket = src.max_bucket_size();

  std::size_t psi_iso_calls = 0;
  PsiMap psi = build_psi(src, &psi_iso_calls);
  stats.iso_calls += psi_iso_calls;
  stats.psi_keys = psi.keys.size();
  stats.psi_entries = psi.total_entries();

  // complement duplicates are skipped when s = t (closure restored at the end)
  std::vector<char> skip(k, 0);
  if (src.params.s == src.params.t) {
    for (std::size_t mi = 0; mi < k; ++mi) {
      auto idx = src.find_isomorphic_member(complement(src.members[mi]), &stats.iso_calls);
      if (idx && *idx < mi) skip[mi] = 1;
    }
  }

  struct SlotOut {
    std::vector<Graph> found;
    std::uint64_t candidates = 0;
    std::uint64_t pair_candidates = 0;
    std::uint64_t iso_calls = 0;
  };
  std::size_t nslots = k * std::size_t(n);
  std::vector<SlotOut> slots(nslots);

  auto run_slot = [&](std::size_t slot_idx) {
    std::size_t mi = slot_idx / std::size_t(n);
    if (skip[mi]) return;
    int i = int(slot_idx % std::size_t(n));
    int j = (i + 1) % n;
    SlotOut& out = slots[slot_idx];
    const Graph& member = src.members[mi];

    std::size_t si = psi.slot(mi, i);
    std::size_t key_i = std::size_t(psi.del_key[si]);
    Isomorphism phi_inv = psi.del_iso[si].inverse();
    out.pair_candidates = 2 * std::uint64_t(psi.contributors[key_i].size());

    for (std::uint64_t m_bits : psi.entries[key_i]) {
      std::uint64_t base = expand_bit(phi_inv.apply(VertexSet(m_bits)).bits, i);
      for (int variant = 0; variant < 2; ++variant) {
        std::uint64_t p_bits = variant ? (base | (1ull << i)) : base;
        ++out.candidates;
        bool ok;
        if (mode == ExtendMode::psi) {
          // deletion i holds by construction; test j, then the remaining
          // max{s,t}−1 cyclic indices (tested subgraph count starts at 2)
          ok = detail::psi_deletion_ok(psi, mi, j, p_bits);
          int kk = j;
          for (int step = 1; ok && step < m; ++step) {
            kk = (kk + 1) % n;
            ok = detail::psi_deletion_ok(psi, mi, kk, p_bits);
          }
        } else {
          Graph candidate = attach_vertex(member, VertexSet(p_bits));
          ok = check_candidate(candidate, src, &out.iso_calls);
        }
        if (ok) out.found.push_back(attach_vertex(member, VertexSet(p_bits)));
      }
    }
  };

  if (workers == 1 || nslots <= 1) {
    for (std::size_t idx = 0; idx < nslots; ++idx) run_slot(idx);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= nslots) return;
        run_slot(idx);
      }
    };
    std::vector<std::thread> pool;
    int nthreads = int(std::min<std::size_t>(workers, nslots));
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<Graph> raw;
  for (const SlotOut& out : slots) {
    stats.candidates_examined += out.candidates;
    stats.pair_candidates += out.pair_candidates;
    stats.iso_calls += out.iso_calls;
    raw.insert(raw.end(), out.found.begin(), out.found.end());
  }
  if (src.params.s == src.params.t) {
    std::size_t found_count = raw.size();
    for (std::size_t idx = 0; idx < found_count; ++idx)
      raw.push_back(complement(raw[idx]));
  }
  raw = dedup_up_to_iso(sorted_by_graph6(std::move(raw)), src.scheme);

  ExtensionResult result{
      build_set(src.params, n + 1, std::move(raw), src.scheme, /*oracle_check=*/true),
      stats};
  result.stats.counterexamples_found = result.set.size();
  result.stats.wall_time = std::chrono::steady_clock::now() - t0;
  return result;
}

// ---- decrementing ----

inline CounterexampleSet decrement_set(const CounterexampleSet& src) {
  src.params.validate();
  if (src.order < 2) throw std::invalid_argument("decrement_set: source order must be >= 2");
  std::vector<Graph> deletions;
  deletions.reserve(src.size() * std::size_t(src.order));
  for (const Graph& member : src.members)
    for (int i = 0; i < src.order; ++i) deletions.push_back(delete_vertex(member, i));
  deletions = dedup_up_to_iso(sorted_by_graph6(std::move(deletions)), src.scheme);
  for (const Graph& g : deletions) {
    if (!is_counterexample(g, src.params))
      throw std::logic_error("hereditary property violated; this is a bug");
  }
  return build_set(src.params, src.order - 1, std::move(deletions), src.scheme,
                   /*oracle_check=*/false);
}

// ---- chain driver ----

struct ChainStep {
  int order = 0;
  std::size_t classes = 0;
  bool extended = false;  // false for the starting set
  ExtensionStats stats;
};

struct ChainReport {
  std::vector<ChainStep> steps;

  const ChainStep* at_order(int order) const {
    for (const auto& s : steps)
      if (s.order == order) return &s;
    return nullptr;
  }
};

inline ChainReport verify_chain(const CounterexampleSet& start, int target_order,
                                ExtendMode mode = ExtendMode::psi, int workers = 1,
                                std::vector<CounterexampleSet>* keep_sets = nullptr) {
  if (target_order <= start.order)
    throw std::invalid_argument("verify_chain: target order must exceed start order");
  ChainReport report;
  report.steps.push_back({start.order, start.size(), false, {}});
  CounterexampleSet current = start;
  if (keep_sets) keep_sets->push_back(current);
  while (current.order < target_order && !current.empty()) {
    ExtensionResult r = extend_set(current, mode, workers);
    report.steps.push_back({r.set.order, r.set.size(), true, r.stats});
    current = std::move(r.set);
    if (keep_sets) keep_sets->push_back(current);
  }
  return report;
}

}  // namespace ramsey
