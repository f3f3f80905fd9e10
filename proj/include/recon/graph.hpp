#pragma once

// Simple undirected graphs on up to 62 vertices, stored as one 64-bit
// adjacency row per vertex. Values are cheap to copy and all operations
// return new graphs, so instances can be shared freely across threads.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace recon {

inline constexpr int kMaxVertices = 62;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_vertex : error {
  using error::error;
};
struct invalid_permutation : error {
  using error::error;
};
struct invalid_argument : error {
  using error::error;
};
struct parse_error : error {
  std::size_t offset;
  parse_error(const std::string& msg, std::size_t off)
      : error(msg + " (byte " + std::to_string(off) + ")"), offset(off) {}
};
struct deck_undefined : error {
  using error::error;
};
struct illegitimate_deck : error {
  using error::error;
};
struct search_bound_exceeded : error {
  using error::error;
};
struct invalid_trial : error {
  using error::error;
};
// Raised when a step the theory guarantees fails; always an implementation bug.
struct theorem_violation : std::logic_error {
  using std::logic_error::logic_error;
};

using Perm = std::vector<int>;

/// Set of vertex indices as a bit mask.
struct VertexSet {
  std::uint64_t bits = 0;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t b) : bits(b) {}

  bool contains(int v) const { return bits >> v & 1; }
  void add(int v) { bits |= std::uint64_t{1} << v; }
  void remove(int v) { bits &= ~(std::uint64_t{1} << v); }
  int count() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::uint64_t b = bits; b != 0; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet{a.bits | b.bits}; }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet{a.bits & b.bits}; }
  friend bool operator==(VertexSet a, VertexSet b) { return a.bits == b.bits; }
};

class Graph {
 public:
  /// Edgeless graph on n vertices, 1 <= n <= 62.
  explicit Graph(int n) : n_(checked_order(n)), adj_(static_cast<std::size_t>(n), 0) {}

  static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  int vertex_count() const { return n_; }

  /// Mask with one bit per vertex.
  std::uint64_t full_mask() const {
    return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  std::uint64_t row(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[static_cast<std::size_t>(u)] >> v & 1;
  }

  /// Construction-time mutator; everything downstream treats graphs as immutable.
  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw invalid_argument("loops are not allowed");
    adj_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    adj_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }

  int degree(int v) const { return std::popcount(row(v)); }

  int edge_count() const {
    int twice = 0;
    for (auto r : adj_) twice += std::popcount(r);
    return twice / 2;
  }

  std::vector<int> degree_sequence_sorted() const {
    std::vector<int> d;
    d.reserve(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) d.push_back(std::popcount(adj_[static_cast<std::size_t>(v)]));
    std::sort(d.begin(), d.end());
    return d;
  }

  /// N(v)
  VertexSet neighborhood(int v) const { return VertexSet{row(v)}; }

  /// N[v]
  VertexSet closed_neighborhood(int v) const {
    return VertexSet{row(v) | std::uint64_t{1} << v};
  }

  /// Graph on n-1 vertices; surviving indices shift down past v.
  Graph delete_vertex(int v) const {
    check_vertex(v);
    if (n_ == 1) throw error("cannot delete the last vertex");
    Graph out(n_ - 1);
    const std::uint64_t low_mask = (std::uint64_t{1} << v) - 1;
    int w = 0;
    for (int u = 0; u < n_; ++u) {
      if (u == v) continue;
      const std::uint64_t r = adj_[static_cast<std::size_t>(u)];
      out.adj_[static_cast<std::size_t>(w++)] = (r & low_mask) | (r >> (v + 1) << v);
    }
    return out;
  }

  /// Edge (perm[u], perm[v]) in the result iff edge (u, v) here.
  Graph relabel(const Perm& perm) const {
    if (static_cast<int>(perm.size()) != n_)
      throw invalid_permutation("permutation size " + std::to_string(perm.size()) +
                                " does not match vertex count " + std::to_string(n_));
    std::uint64_t seen = 0;
    for (int p : perm) {
      if (p < 0 || p >= n_ || (seen >> p & 1))
        throw invalid_permutation("not a bijection on 0.." + std::to_string(n_ - 1));
      seen |= std::uint64_t{1} << p;
    }
    Graph out(n_);
    for (int u = 0; u < n_; ++u) {
      std::uint64_t r = adj_[static_cast<std::size_t>(u)];
      std::uint64_t mapped = 0;
      while (r != 0) {
        mapped |= std::uint64_t{1} << perm[static_cast<std::size_t>(std::countr_zero(r))];
        r &= r - 1;
      }
      out.adj_[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])] = mapped;
    }
    return out;
  }

  /// Labeled equality, not isomorphism.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  // Runs in the mem-initializer so the adjacency vector never sees a bad size.
  static int checked_order(int n) {
    if (n < 1 || n > kMaxVertices)
      throw invalid_argument("vertex count must be in [1, 62], got " + std::to_string(n));
    return n;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw invalid_vertex("vertex " + std::to_string(v) + " out of range [0, " +
                           std::to_string(n_) + ")");
  }

  int n_;
  std::vector<std::uint64_t> adj_;
};

// graph6, single-byte size form: byte 0 is chr(63+n); then the upper
// triangle read column by column -- for column j, bits (0,j)..(j-1,j) --
// packed big-endian into 6-bit groups, zero padded, each emitted as
// chr(group+63).

inline std::string encode_graph6(const Graph& g) {
  const int n = g.vertex_count();
  std::string out;
  out.push_back(static_cast<char>(63 + n));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = acc << 1 | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
  return out;
}

inline Graph decode_graph6(std::string_view s) {
  if (s.empty()) throw parse_error("empty graph6 string", 0);
  const unsigned char c0 = static_cast<unsigned char>(s[0]);
  if (c0 == 126) throw parse_error("multi-byte size form not supported (n > 62)", 0);
  if (c0 < 63 || c0 > 125) throw parse_error("size byte outside graph6 range", 0);
  const int n = c0 - 63;
  if (n < 1) throw parse_error("graph must have at least one vertex", 0);
  const int nbits = n * (n - 1) / 2;
  const std::size_t need = 1 + static_cast<std::size_t>((nbits + 5) / 6);
  if (s.size() < need) throw parse_error("truncated graph6 string", s.size());
  if (s.size() > need) throw parse_error("trailing garbage after graph6 data", need);

  Graph g(n);
  int bit = 0, i = 0, j = 1;
  for (std::size_t p = 1; p < s.size(); ++p) {
    const unsigned char c = static_cast<unsigned char>(s[p]);
    if (c < 63 || c > 126) throw parse_error("edge byte outside graph6 range", p);
    const int group = c - 63;
    for (int k = 5; k >= 0; --k, ++bit) {
      const int b = group >> k & 1;
      if (bit >= nbits) {
        if (b != 0) throw parse_error("nonzero padding bits", p);
        continue;
      }
      if (b != 0) g.add_edge(i, j);
      if (++i == j) i = 0, ++j;
    }
  }
  return g;
}

}  // namespace recon
