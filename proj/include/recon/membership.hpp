#pragma once

// Membership test for the class of graphs carrying a special-vertex witness
// (v1, {v2..vk}), 1 < k < n, where
//   cover:      the union of the members' closed neighborhoods is V,
//   degree gap: each member's degree differs by more than 1 from every
//               other vertex's degree,
//   separation: N[v1] is disjoint from the other members' closed
//               neighborhoods.
// Every graph with such a witness is uniquely determined by its deck.

#include <cstdlib>
#include <string>
#include <vector>

#include "recon/graph.hpp"

namespace recon {

/// Witness (v1, {v2..vk}); k = 1 + |others|.
struct SpecialSet {
  int v1 = 0;
  VertexSet others;

  int k() const { return 1 + others.count(); }

  friend bool operator==(const SpecialSet& a, const SpecialSet& b) {
    return a.v1 == b.v1 && a.others == b.others;
  }
};

/// Vertices whose degree differs by more than 1 from every other vertex's.
/// The degree-gap condition holds for a set exactly when every member is
/// gap-isolated, since it quantifies over all other vertices.
inline VertexSet gap_isolated_vertices(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  VertexSet out;
  for (int v = 0; v < n; ++v) {
    bool isolated = true;
    for (int u = 0; u < n && isolated; ++u)
      if (u != v && std::abs(deg[static_cast<std::size_t>(v)] - deg[static_cast<std::size_t>(u)]) <= 1)
        isolated = false;
    if (isolated) out.add(v);
  }
  return out;
}

/// Re-check all witness invariants directly from the definitions.
inline bool check_special_set(const Graph& g, const SpecialSet& s) {
  const int n = g.vertex_count();
  if (s.v1 < 0 || s.v1 >= n) return false;
  if ((s.others.bits & ~g.full_mask()) != 0) return false;
  if (s.others.contains(s.v1)) return false;
  const int k = s.k();
  if (k <= 1 || k >= n) return false;

  const VertexSet gi = gap_isolated_vertices(g);
  if (!gi.contains(s.v1)) return false;

  std::uint64_t others_closed = 0;
  for (int v : s.others.to_vector()) {
    if (!gi.contains(v)) return false;
    others_closed |= g.closed_neighborhood(v).bits;
  }
  const std::uint64_t v1_closed = g.closed_neighborhood(s.v1).bits;
  if ((v1_closed | others_closed) != g.full_mask()) return false;  // cover
  if ((v1_closed & others_closed) != 0) return false;              // separation
  return true;
}

/// All witnesses, sorted by (v1, others bit mask). Enumeration runs over
/// subsets of the gap-isolated set only; the degree-gap condition for a set
/// is equivalent to each member being gap-isolated.
inline std::vector<SpecialSet> find_special_sets(const Graph& g) {
  std::vector<SpecialSet> out;
  const int n = g.vertex_count();
  const VertexSet gi = gap_isolated_vertices(g);
  if (gi.count() < 2) return out;

  const std::vector<int> gi_list = gi.to_vector();
  std::vector<std::uint64_t> closed;
  closed.reserve(gi_list.size());
  for (int v : gi_list) closed.push_back(g.closed_neighborhood(v).bits);

  const std::size_t m = gi_list.size();
  for (std::size_t a = 0; a < m; ++a) {
    const int v1 = gi_list[a];
    const std::uint64_t v1_closed = closed[a];
    // subsets of the remaining gap-isolated vertices, in bit-mask order
    const std::size_t rest = m - 1;
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << rest); ++sub) {
      SpecialSet s;
      s.v1 = v1;
      std::uint64_t others_closed = 0;
      std::size_t idx = 0;
      for (std::size_t b = 0; b < m; ++b) {
        if (b == a) continue;
        if (sub >> idx & 1) {
          s.others.add(gi_list[b]);
          others_closed |= closed[b];
        }
        ++idx;
      }
      if (s.k() >= n) continue;
      if ((v1_closed | others_closed) != g.full_mask()) continue;
      if ((v1_closed & others_closed) != 0) continue;
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const SpecialSet& x, const SpecialSet& y) {
    return x.v1 != y.v1 ? x.v1 < y.v1 : x.others.bits < y.others.bits;
  });
  return out;
}

inline bool is_class_member(const Graph& g) { return !find_special_sets(g).empty(); }

/// CLI rendering: "v1=<index> others={<indices>} k=<k>"
inline std::string format_special_set(const SpecialSet& s) {
  std::string out = "v1=" + std::to_string(s.v1) + " others={";
  bool first = true;
  for (int v : s.others.to_vector()) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  out += "} k=" + std::to_string(s.k());
  return out;
}

}  // namespace recon
