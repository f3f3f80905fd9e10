#pragma once

// Exhaustive small-n machinery: every graph up to isomorphism for n <= 7,
// a full sweep checking that all class members are uniquely determined by
// their decks, and a randomized generator of class members for larger n.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "recon/canon.hpp"
#include "recon/deck.hpp"
#include "recon/graph.hpp"
#include "recon/membership.hpp"
#include "recon/reconstruct.hpp"

namespace recon {

struct EnumerationRange {
  int n = 0;
  std::optional<int> edge_count_filter;
  std::optional<std::pair<int, int>> shard;  // (index, total) over the labeled space
};

/// One representative per isomorphism class, sorted by certificate. The
/// labeled space 2^(n(n-1)/2) is scanned in full (n <= 7) and deduplicated
/// by certificate; with a shard, only that slice of the labeled space is
/// scanned and the dedup is local to it.
inline std::vector<Graph> enumerate_graphs(const EnumerationRange& range, int jobs = 1) {
  const int n = range.n;
  if (n < 1 || n > 7)
    throw search_bound_exceeded("full enumeration requires 1 <= n <= 7, got " + std::to_string(n));
  int shard_index = 0, shard_total = 1;
  if (range.shard) {
    shard_index = range.shard->first;
    shard_total = range.shard->second;
    if (shard_total < 1 || shard_index < 0 || shard_index >= shard_total)
      throw invalid_argument("shard must satisfy 0 <= index < total");
  }

  const detail::PairTable table(n);
  const std::uint64_t space = std::uint64_t{1} << table.bits;
  const std::uint64_t lo = space * static_cast<std::uint64_t>(shard_index) /
                           static_cast<std::uint64_t>(shard_total);
  const std::uint64_t hi = space * static_cast<std::uint64_t>(shard_index + 1) /
                           static_cast<std::uint64_t>(shard_total);

  const int nthreads = std::max(1, jobs);
  std::vector<std::unordered_set<Certificate>> local(static_cast<std::size_t>(nthreads));
  auto scan = [&](int t) {
    auto& certs = local[static_cast<std::size_t>(t)];
    for (std::uint64_t mask = lo + static_cast<std::uint64_t>(t); mask < hi;
         mask += static_cast<std::uint64_t>(nthreads)) {
      if (range.edge_count_filter && std::popcount(mask) != *range.edge_count_filter) continue;
      certs.insert(certificate(detail::graph_from_mask(n, mask, table)));
    }
  };
  if (nthreads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) threads.emplace_back(scan, t);
    for (auto& th : threads) th.join();
  }

  std::set<Certificate> merged;
  for (auto& s : local) merged.insert(s.begin(), s.end());
  std::vector<Graph> out;
  out.reserve(merged.size());
  for (const Certificate& c : merged) out.push_back(decode_graph6(c));
  return out;
}

struct VerificationSummary {
  int n = 0;
  long graphs_scanned = 0;
  long class_members_found = 0;
  long members_with_unique_mate = 0;
  std::vector<Certificate> counterexamples;  // members whose deck admits another mate
};

/// Scan all isomorphism classes on n vertices (3 <= n <= 7). For each class
/// member, its deck's mate set must be exactly its own certificate, and
/// reconstruction from the deck must return that unique mate.
inline VerificationSummary verify_theorem_exhaustive(
    int n, int jobs = 1, std::optional<std::pair<int, int>> shard = std::nullopt) {
  if (n < 3 || n > 7)
    throw search_bound_exceeded("exhaustive verification requires 3 <= n <= 7, got " +
                                std::to_string(n));
  const std::vector<Graph> reps = enumerate_graphs({n, std::nullopt, shard}, jobs);

  VerificationSummary summary;
  summary.n = n;
  summary.graphs_scanned = static_cast<long>(reps.size());

  const int nthreads = std::max(1, jobs);
  std::atomic<std::size_t> next{0};
  std::vector<VerificationSummary> local(static_cast<std::size_t>(nthreads));
  auto worker = [&](int t) {
    auto& acc = local[static_cast<std::size_t>(t)];
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= reps.size()) return;
      const Graph& g = reps[i];
      if (!is_class_member(g)) continue;
      ++acc.class_members_found;
      const Certificate cert = certificate(g);
      const Deck deck = Deck::of(g);
      const std::set<Certificate> mates = hypomorphic_mates(deck, n, 1);
      const ReconstructionReport report = reconstruct_from_deck(deck);
      const bool mates_ok = mates.size() == 1 && *mates.begin() == cert;
      const bool recon_ok = report.unique && *report.survivors.begin() == cert;
      if (mates_ok && recon_ok)
        ++acc.members_with_unique_mate;
      else
        acc.counterexamples.push_back(cert);
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker, t);
    for (auto& th : threads) th.join();
  }
  for (const auto& acc : local) {
    summary.class_members_found += acc.class_members_found;
    summary.members_with_unique_mate += acc.members_with_unique_mate;
    summary.counterexamples.insert(summary.counterexamples.end(), acc.counterexamples.begin(),
                                   acc.counterexamples.end());
  }
  std::sort(summary.counterexamples.begin(), summary.counterexamples.end());
  return summary;
}

/// Fixed-order key:value block.
inline std::string format_summary(const VerificationSummary& s) {
  std::string out;
  out += "n: " + std::to_string(s.n) + "\n";
  out += "graphs_scanned: " + std::to_string(s.graphs_scanned) + "\n";
  out += "class_members_found: " + std::to_string(s.class_members_found) + "\n";
  out += "members_with_unique_mate: " + std::to_string(s.members_with_unique_mate) + "\n";
  out += "counterexamples: " + std::to_string(s.counterexamples.size()) + "\n";
  for (const Certificate& c : s.counterexamples) out += "counterexample: " + c + "\n";
  return out;
}

namespace detail {

// Scratch adjacency for the generator: degree-capped random edge placement.
struct GenBuild {
  int n;
  std::vector<std::uint64_t> adj;
  std::vector<int> deg;
  std::vector<int> cap;  // max allowed degree per vertex; -1 = frozen (specials)

  explicit GenBuild(int size)
      : n(size),
        adj(static_cast<std::size_t>(size), 0),
        deg(static_cast<std::size_t>(size), 0),
        cap(static_cast<std::size_t>(size), -1) {}

  bool adjacent(int u, int v) const { return adj[static_cast<std::size_t>(u)] >> v & 1; }

  void link(int u, int v) {
    adj[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }

  bool has_spare(int v) const {
    return cap[static_cast<std::size_t>(v)] >= 0 &&
           deg[static_cast<std::size_t>(v)] < cap[static_cast<std::size_t>(v)];
  }

  Graph to_graph() const {
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (adjacent(u, v)) g.add_edge(u, v);
    return g;
  }
};

// Raise every vertex below `floor` to at least that degree by linking it to
// spare-capacity partners. Returns false when stuck.
inline bool raise_to_floor(GenBuild& b, int floor, std::mt19937_64& rng) {
  for (int pass = 0; pass < 4 * b.n; ++pass) {
    int v = -1;
    for (int u = 0; u < b.n; ++u)
      if (b.cap[static_cast<std::size_t>(u)] >= 0 && b.deg[static_cast<std::size_t>(u)] < floor) {
        v = u;
        break;
      }
    if (v == -1) return true;
    std::vector<int> partners;
    for (int u = 0; u < b.n; ++u)
      if (u != v && b.has_spare(u) && !b.adjacent(u, v)) partners.push_back(u);
    if (partners.empty()) return false;
    b.link(v, partners[std::uniform_int_distribution<std::size_t>(0, partners.size() - 1)(rng)]);
  }
  return false;
}

// Random extra edges between capped vertices, respecting the caps.
inline void sprinkle(GenBuild& b, std::mt19937_64& rng, int attempts) {
  std::uniform_int_distribution<int> pick(0, b.n - 1);
  for (int t = 0; t < attempts; ++t) {
    const int u = pick(rng), v = pick(rng);
    if (u == v || b.adjacent(u, v) || !b.has_spare(u) || !b.has_spare(v)) continue;
    b.link(u, v);
  }
}

}  // namespace detail

/// Randomized construction of a class member on n vertices, or nullopt when
/// the retry budget runs out (in particular for n where none exists).
/// Construction favors disjoint witness blocks -- an isolated vertex or a
/// small star for v1, plus one or two dominating hubs -- then fills in
/// degree-capped random edges; the membership checker is the arbiter.
inline std::optional<Graph> generate_class_member(int n, std::uint64_t seed) {
  if (n < 5)
    throw invalid_argument("class members need at least 5 vertices, got " + std::to_string(n));
  std::mt19937_64 rng(seed);

  std::vector<int> families;  // 0 = isolated + hub, 1 = two stars, 2 = isolated + two hubs
  if (n >= 6) families.push_back(0);
  if (n >= 10) families.push_back(1);
  if (n >= 9) families.push_back(2);
  if (families.empty()) return std::nullopt;

  for (int attempt = 0; attempt < 400; ++attempt) {
    detail::GenBuild b(n);
    const int family = families[std::uniform_int_distribution<std::size_t>(0, families.size() - 1)(rng)];

    if (family == 0) {
      // vertex 0 isolated, vertex 1 adjacent to all others; the rest sit in
      // the hub's neighborhood with degrees in [2, n-4]
      for (int v = 2; v < n; ++v) {
        b.link(1, v);
        b.cap[static_cast<std::size_t>(v)] = n - 4;
      }
      sprinkle(b, rng, 3 * n);
      if (!detail::raise_to_floor(b, 2, rng)) continue;
    } else if (family == 1) {
      // two stars K_{1,a} and K_{1,b} with b - a >= 2; leaf degrees up to a-2
      const int a_max = (n - 4) / 2;
      const int a = std::uniform_int_distribution<int>(3, a_max)(rng);
      const int b_deg = n - 2 - a;
      int v = 2;
      for (int i = 0; i < a; ++i, ++v) b.link(0, v);
      for (int i = 0; i < b_deg; ++i, ++v) b.link(1, v);
      for (int u = 2; u < n; ++u) b.cap[static_cast<std::size_t>(u)] = a - 2;
      sprinkle(b, rng, 2 * n);
    } else {
      // vertex 0 isolated; hubs 1 and 2 of degree a and b_deg = n-3-a+t,
      // sharing t leaves; every leaf needs degree in [2, a-2]
      const int a = std::uniform_int_distribution<int>(4, std::max(4, (n - 3) / 2))(rng);
      const int t_lo = std::max(1, 2 * a + 5 - n);  // keeps b_deg >= a+2
      if (t_lo > a) continue;
      const int t = std::uniform_int_distribution<int>(t_lo, a)(rng);
      const int b_deg = n - 3 - a + t;
      int v = 3;
      for (int i = 0; i < t; ++i, ++v) {
        b.link(1, v);
        b.link(2, v);
        b.cap[static_cast<std::size_t>(v)] = a - 2;
      }
      for (int i = 0; i < a - t; ++i, ++v) {
        b.link(1, v);
        b.cap[static_cast<std::size_t>(v)] = a - 2;
      }
      for (int i = 0; i < b_deg - t; ++i, ++v) {
        b.link(2, v);
        b.cap[static_cast<std::size_t>(v)] = a - 2;
      }
      sprinkle(b, rng, 2 * n);
      if (!detail::raise_to_floor(b, 2, rng)) continue;
    }

    Graph g = b.to_graph();
    Perm shuffle(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) shuffle[static_cast<std::size_t>(i)] = i;
    std::shuffle(shuffle.begin(), shuffle.end(), rng);
    g = g.relabel(shuffle);
    if (is_class_member(g)) return g;
  }
  return std::nullopt;
}

}  // namespace recon
