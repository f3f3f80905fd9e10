#pragma once

// Canonical labeling by partition refinement plus backtracking, and the
// isomorphism tests built on top of it. The certificate of a graph is the
// graph6 encoding of its canonical relabeling; two graphs are isomorphic
// exactly when their certificates are byte-equal.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "recon/graph.hpp"

namespace recon {

/// Canonical byte string; equal for two graphs iff they are isomorphic.
using Certificate = std::string;

/// mapping[u] = image of vertex u; edge-preserving when used as an IsoMap.
using IsoMap = Perm;

struct CanonicalForm {
  Perm to_canonical;  // original index -> canonical index
  Certificate cert;
};

namespace detail {

// Ordered partition of 0..n-1. Cells are kept in a deterministic,
// label-invariant order: splits are ordered by (parent cell, neighbor-count
// signature), so the search tree shape depends only on the isomorphism type.
using Cells = std::vector<std::vector<int>>;

inline std::uint64_t cell_mask(const std::vector<int>& cell) {
  std::uint64_t m = 0;
  for (int v : cell) m |= std::uint64_t{1} << v;
  return m;
}

// Refine to an equitable partition: every vertex in a cell has the same
// number of neighbors in every cell.
inline void refine(const Graph& g, Cells& cells) {
  const int n = g.vertex_count();
  std::vector<std::uint64_t> masks;
  for (;;) {
    masks.clear();
    for (const auto& cell : cells) masks.push_back(cell_mask(cell));

    Cells next;
    next.reserve(cells.size());
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      // signature = counts of neighbors in each current cell
      std::vector<std::pair<std::vector<int>, int>> sigs;
      sigs.reserve(cell.size());
      for (int v : cell) {
        std::vector<int> sig;
        sig.reserve(masks.size());
        const std::uint64_t r = g.row(v);
        for (std::uint64_t m : masks) sig.push_back(std::popcount(r & m));
        sigs.emplace_back(std::move(sig), v);
      }
      std::sort(sigs.begin(), sigs.end());
      std::vector<int> sub{sigs[0].second};
      for (std::size_t i = 1; i < sigs.size(); ++i) {
        if (sigs[i].first != sigs[i - 1].first) {
          next.push_back(std::move(sub));
          sub.clear();
        }
        sub.push_back(sigs[i].second);
      }
      next.push_back(std::move(sub));
    }
    const bool split = next.size() > cells.size();
    cells = std::move(next);
    if (!split || static_cast<int>(cells.size()) == n) return;
  }
}

// After refine the partition is equitable: neighbor counts toward any cell
// are uniform inside a cell. When every such count is also all-or-nothing,
// adjacency depends only on cell membership, so every completion of the
// node encodes to the same string and one leaf represents the subtree.
// This keeps fully symmetric graphs (empty, complete, complete
// multipartite) linear instead of factorial.
inline bool homogeneous(const Graph& g, const Cells& cells) {
  std::vector<std::uint64_t> masks;
  masks.reserve(cells.size());
  for (const auto& cell : cells) masks.push_back(cell_mask(cell));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::uint64_t r = g.row(cells[i][0]);
    for (std::size_t j = i; j < cells.size(); ++j) {
      const int count = std::popcount(r & masks[j]);
      const int full = static_cast<int>(cells[j].size()) - (i == j ? 1 : 0);
      if (count != 0 && count != full) return false;
    }
  }
  return true;
}

// Encode the relabeling where position i holds original vertex order[i].
inline void encode_ordered(const Graph& g, const std::vector<int>& order, std::string& out) {
  const int n = g.vertex_count();
  out.clear();
  out.push_back(static_cast<char>(63 + n));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = acc << 1 | (g.has_edge(order[i], order[j]) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
}

struct CanonSearch {
  const Graph& g;
  std::string best;
  std::vector<int> best_order;
  std::string scratch;

  explicit CanonSearch(const Graph& graph) : g(graph) {}

  void run(Cells cells) {
    refine(g, cells);
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1) {
        target = i;
        break;
      }
    if (target == cells.size() || homogeneous(g, cells)) {
      std::vector<int> order;
      order.reserve(static_cast<std::size_t>(g.vertex_count()));
      for (const auto& cell : cells)
        for (int v : cell) order.push_back(v);
      encode_ordered(g, order, scratch);
      if (best.empty() || scratch < best) {
        best = scratch;
        best_order = std::move(order);
      }
      return;
    }
    for (int v : cells[target]) {
      Cells next;
      next.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != target) {
          next.push_back(cells[i]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        rest.reserve(cells[i].size() - 1);
        for (int u : cells[i])
          if (u != v) rest.push_back(u);
        next.push_back(std::move(rest));
      }
      run(std::move(next));
    }
  }
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
  const int n = g.vertex_count();
  // initial partition: cells by ascending degree
  std::vector<std::pair<int, int>> by_deg;
  by_deg.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) by_deg.emplace_back(g.degree(v), v);
  std::sort(by_deg.begin(), by_deg.end());
  detail::Cells cells;
  for (auto [d, v] : by_deg) {
    if (cells.empty() || g.degree(cells.back().back()) != d) cells.push_back({});
    cells.back().push_back(v);
  }

  detail::CanonSearch search(g);
  search.run(std::move(cells));

  CanonicalForm out;
  out.cert = std::move(search.best);
  out.to_canonical.assign(static_cast<std::size_t>(n), 0);
  for (int pos = 0; pos < n; ++pos)
    out.to_canonical[static_cast<std::size_t>(search.best_order[static_cast<std::size_t>(pos)])] = pos;
  return out;
}

inline Certificate certificate(const Graph& g) { return canonical_form(g).cert; }

/// Direct edge-preservation check in both directions.
inline bool is_isomorphism(const Graph& g, const Graph& h, const Perm& f) {
  const int n = g.vertex_count();
  if (h.vertex_count() != n || static_cast<int>(f.size()) != n) return false;
  std::uint64_t seen = 0;
  for (int v : f) {
    if (v < 0 || v >= n || (seen >> v & 1)) return false;
    seen |= std::uint64_t{1} << v;
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.has_edge(u, v) != h.has_edge(f[static_cast<std::size_t>(u)], f[static_cast<std::size_t>(v)]))
        return false;
  return true;
}

/// Edge-preserving bijection g -> h, or nullopt. Routed through the two
/// canonical relabelings and verified by direct adjacency check.
inline std::optional<IsoMap> find_isomorphism(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count()) return std::nullopt;
  const CanonicalForm cg = canonical_form(g);
  const CanonicalForm ch = canonical_form(h);
  if (cg.cert != ch.cert) return std::nullopt;
  const int n = g.vertex_count();
  Perm from_canonical_h(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    from_canonical_h[static_cast<std::size_t>(ch.to_canonical[static_cast<std::size_t>(v)])] = v;
  IsoMap f(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    f[static_cast<std::size_t>(v)] =
        from_canonical_h[static_cast<std::size_t>(cg.to_canonical[static_cast<std::size_t>(v)])];
  if (!is_isomorphism(g, h, f))
    throw theorem_violation("canonical relabelings disagree with certificate equality");
  return f;
}

inline bool are_isomorphic(const Graph& g, const Graph& h) {
  return find_isomorphism(g, h).has_value();
}

}  // namespace recon
