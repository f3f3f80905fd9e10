#pragma once

// Vertex-deleted decks: construction, order-free comparison through card
// certificates, degree recovery via the edge-count identity
// |E(G)|*(n-2) = sum over cards of |E(card)|, and exhaustive search for
// hypomorphic mates at small n.

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include "recon/canon.hpp"
#include "recon/graph.hpp"

namespace recon {

/// Multiset of the n vertex-deleted cards of a graph on n vertices.
class Deck {
 public:
  /// Cards delete_vertex(g, v) for v = 0..n-1. Requires g.n >= 3.
  static Deck of(const Graph& g) {
    if (g.vertex_count() < 3)
      throw deck_undefined("deck is defined only for graphs with at least 3 vertices");
    Deck d;
    d.n_ = g.vertex_count();
    d.cards_.reserve(static_cast<std::size_t>(d.n_));
    for (int v = 0; v < d.n_; ++v) d.cards_.push_back(g.delete_vertex(v));
    d.finish();
    return d;
  }

  /// Adopt a list of cards (e.g. read from a file); n is the card count.
  static Deck from_cards(std::vector<Graph> cards) {
    Deck d;
    d.n_ = static_cast<int>(cards.size());
    if (d.n_ < 3) throw illegitimate_deck("a deck has at least 3 cards");
    for (const Graph& c : cards)
      if (c.vertex_count() != d.n_ - 1)
        throw illegitimate_deck("card has " + std::to_string(c.vertex_count()) +
                                " vertices, expected " + std::to_string(d.n_ - 1));
    d.cards_ = std::move(cards);
    d.finish();
    return d;
  }

  /// Original vertex count n (one more than each card's).
  int original_vertex_count() const { return n_; }

  const std::vector<Graph>& cards() const { return cards_; }

  /// Certificate of card i (cards in construction order).
  const Certificate& card_certificate(int i) const {
    return certs_[static_cast<std::size_t>(i)];
  }

  /// Certificate multiset, ascending.
  const std::vector<Certificate>& sorted_certificates() const { return sorted_certs_; }

 private:
  void finish() {
    certs_.reserve(cards_.size());
    for (const Graph& c : cards_) certs_.push_back(certificate(c));
    sorted_certs_ = certs_;
    std::sort(sorted_certs_.begin(), sorted_certs_.end());
  }

  int n_ = 0;
  std::vector<Graph> cards_;
  std::vector<Certificate> certs_;
  std::vector<Certificate> sorted_certs_;
};

/// Order-free equality: the certificate multisets coincide.
inline bool decks_equal(const Deck& a, const Deck& b) {
  return a.original_vertex_count() == b.original_vertex_count() &&
         a.sorted_certificates() == b.sorted_certificates();
}

struct DegreeRecovery {
  int total_edges;                 // |E(G)| for any G with this deck
  std::vector<int> deleted_degrees;  // per card, degree of the deleted vertex
};

/// Edge count and deleted degrees from card edge counts alone. The multiset
/// of deleted degrees is the degree multiset of any graph with this deck.
inline DegreeRecovery recover_degrees(const Deck& d) {
  const int n = d.original_vertex_count();
  long sum = 0;
  std::vector<int> card_edges;
  card_edges.reserve(d.cards().size());
  for (const Graph& c : d.cards()) {
    card_edges.push_back(c.edge_count());
    sum += card_edges.back();
  }
  if (sum % (n - 2) != 0)
    throw illegitimate_deck("total card edge count " + std::to_string(sum) +
                            " is not divisible by n-2 = " + std::to_string(n - 2));
  DegreeRecovery out;
  out.total_edges = static_cast<int>(sum / (n - 2));
  out.deleted_degrees.reserve(card_edges.size());
  for (int e : card_edges) {
    const int dd = out.total_edges - e;
    if (dd < 0)
      throw illegitimate_deck("card has more edges than the recovered total");
    if (dd > n - 1)
      throw illegitimate_deck("recovered deleted degree " + std::to_string(dd) +
                              " exceeds n-1 = " + std::to_string(n - 1));
    out.deleted_degrees.push_back(dd);
  }
  return out;
}

namespace detail {

// The labeled graphs on n vertices are indexed by edge-subset masks over the
// n(n-1)/2 vertex pairs (column-by-column upper triangle, matching graph6).
struct PairTable {
  int bits;
  std::array<std::pair<int, int>, kMaxVertices*(kMaxVertices - 1) / 2> pair_of;

  explicit PairTable(int n) : bits(n * (n - 1) / 2) {
    int b = 0;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) pair_of[static_cast<std::size_t>(b++)] = {i, j};
  }
};

inline Graph graph_from_mask(int n, std::uint64_t mask, const PairTable& table) {
  Graph g(n);
  while (mask != 0) {
    const auto [i, j] = table.pair_of[static_cast<std::size_t>(std::countr_zero(mask))];
    g.add_edge(i, j);
    mask &= mask - 1;
  }
  return g;
}

inline std::vector<int> degrees_from_mask(int n, std::uint64_t mask, const PairTable& table) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  while (mask != 0) {
    const auto [i, j] = table.pair_of[static_cast<std::size_t>(std::countr_zero(mask))];
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
    mask &= mask - 1;
  }
  return deg;
}

}  // namespace detail

/// Certificates of every graph H on d.n vertices with deck_of(H) equal to d,
/// by exhaustive scan of the labeled space (d.n <= search_n_max <= 7).
/// Candidates are pruned by total edge count and degree multiset, both of
/// which are determined by any matching deck.
inline std::set<Certificate> hypomorphic_mates(const Deck& d, int search_n_max, int jobs = 1) {
  const int n = d.original_vertex_count();
  if (search_n_max > 7 || n > search_n_max)
    throw search_bound_exceeded("hypomorphic mate search requires n <= bound <= 7, got n = " +
                                std::to_string(n) + ", bound = " + std::to_string(search_n_max));
  DegreeRecovery rec;
  try {
    rec = recover_degrees(d);
  } catch (const illegitimate_deck&) {
    return {};  // no graph's deck fails the edge-count identity
  }
  std::vector<int> target_degrees = rec.deleted_degrees;
  std::sort(target_degrees.begin(), target_degrees.end());
  const std::vector<Certificate>& target_certs = d.sorted_certificates();

  const detail::PairTable table(n);
  const std::uint64_t total = std::uint64_t{1} << table.bits;
  const int nthreads = std::max(1, jobs);

  std::vector<std::set<Certificate>> found(static_cast<std::size_t>(nthreads));
  auto scan = [&](int t) {
    std::unordered_set<Certificate> seen;
    std::vector<int> deg;
    for (std::uint64_t mask = static_cast<std::uint64_t>(t); mask < total;
         mask += static_cast<std::uint64_t>(nthreads)) {
      if (std::popcount(mask) != rec.total_edges) continue;
      deg = detail::degrees_from_mask(n, mask, table);
      std::sort(deg.begin(), deg.end());
      if (deg != target_degrees) continue;
      const Graph h = detail::graph_from_mask(n, mask, table);
      Certificate cert = certificate(h);
      if (!seen.insert(cert).second) continue;
      if (Deck::of(h).sorted_certificates() == target_certs)
        found[static_cast<std::size_t>(t)].insert(std::move(cert));
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

  std::set<Certificate> out;
  for (auto& s : found) out.merge(s);
  return out;
}

/// One graph6 card per line, certificate-sorted, newline-terminated.
inline std::string write_deck(const Deck& d) {
  std::string out;
  for (const Certificate& c : d.sorted_certificates()) {
    out += c;
    out.push_back('\n');
  }
  return out;
}

/// Parse a deck file: one graph6 card per line.
inline Deck read_deck(std::string_view text) {
  std::vector<Graph> cards;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) cards.push_back(decode_graph6(line));
    pos = eol + 1;
  }
  return Deck::from_cards(std::move(cards));
}

}  // namespace recon
