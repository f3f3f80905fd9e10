#pragma once

// Rebuilding a graph from its unlabeled deck, and verifiers for the labeled
// argument behind it (degree-forced images, condition transfer, and the
// one-vertex isomorphism extension).
//
// The reconstruction rule: in a card that arose by deleting v1, the
// remaining witness vertices keep their full closed neighborhoods, and the
// neighborhood of the missing vertex is exactly the card's vertex set minus
// the union of those closed neighborhoods. Candidates built this way are
// accepted only after full deck comparison, so pruning never affects
// correctness.

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "recon/canon.hpp"
#include "recon/deck.hpp"
#include "recon/graph.hpp"
#include "recon/membership.hpp"

namespace recon {

struct ReconstructionReport {
  long candidates_tried = 0;
  std::set<Certificate> survivors;  // decks verified equal to the input
  bool unique = false;              // exactly one survivor
};

namespace detail {

// Index of vertex v after deleting vertex `deleted` (v != deleted).
inline int compact_index(int v, int deleted) { return v < deleted ? v : v - 1; }

// Inverse: card index back to the original graph's index.
inline int uncompact_index(int v, int deleted) { return v < deleted ? v : v + 1; }

// Degree values that pin a vertex down across the whole degree multiset:
// they occur once and differ by more than 1 from every other value.
inline std::vector<int> gap_isolated_values(const std::vector<int>& sorted_degrees) {
  std::vector<int> out;
  const std::size_t n = sorted_degrees.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int d = sorted_degrees[i];
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j)
      if (j != i && std::abs(d - sorted_degrees[j]) <= 1) ok = false;
    if (ok) out.push_back(d);
  }
  return out;
}

}  // namespace detail

/// Try every (card, witness-subset) attachment and keep the candidates whose
/// deck matches. max_specials caps the per-card subset enumeration.
inline ReconstructionReport reconstruct_from_deck(const Deck& d, int max_specials = 20) {
  const DegreeRecovery rec = recover_degrees(d);
  const int n = d.original_vertex_count();

  std::vector<int> degrees = rec.deleted_degrees;
  std::sort(degrees.begin(), degrees.end());
  const std::vector<int> pinned = detail::gap_isolated_values(degrees);

  const std::vector<Certificate>& target = d.sorted_certificates();
  ReconstructionReport report;

  for (std::size_t c = 0; c < d.cards().size(); ++c) {
    const Graph& card = d.cards()[c];
    const int missing_degree = rec.deleted_degrees[c];

    // candidates for the surviving witness vertices: card degree is a pinned
    // value, hence unchanged from the full graph by the separation condition
    std::vector<int> specials;
    for (int u = 0; u < card.vertex_count(); ++u) {
      const int du = card.degree(u);
      for (int p : pinned)
        if (du == p) {
          specials.push_back(u);
          break;
        }
    }
    if (specials.empty()) continue;
    if (static_cast<int>(specials.size()) > max_specials)
      throw search_bound_exceeded("card has " + std::to_string(specials.size()) +
                                  " special candidates, cap is " + std::to_string(max_specials));

    const std::uint64_t card_mask = card.full_mask();
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << specials.size()); ++sub) {
      ++report.candidates_tried;
      std::uint64_t covered = 0;
      for (std::size_t b = 0; b < specials.size(); ++b)
        if (sub >> b & 1) covered |= card.closed_neighborhood(specials[b]).bits;
      const std::uint64_t attach = card_mask & ~covered;
      if (std::popcount(attach) != missing_degree) continue;

      Graph h(n);
      for (int u = 0; u < card.vertex_count(); ++u)
        for (int v = u + 1; v < card.vertex_count(); ++v)
          if (card.has_edge(u, v)) h.add_edge(u, v);
      for (std::uint64_t a = attach; a != 0; a &= a - 1) h.add_edge(std::countr_zero(a), n - 1);

      if (Deck::of(h).sorted_certificates() == target) report.survivors.insert(certificate(h));
    }
  }
  report.unique = report.survivors.size() == 1;
  return report;
}

/// A labeled hypomorphism instance: gprime = relabel(g, pi) together with a
/// per-vertex family of card isomorphisms f_maps[j] : g - j -> gprime - pi(j).
struct LabeledMateTrial {
  Graph g;
  Perm pi;
  Graph gprime;
  std::vector<IsoMap> f_maps;
};

/// Build a trial with solver-produced card isomorphisms.
inline LabeledMateTrial make_trial(const Graph& g, const Perm& pi) {
  LabeledMateTrial trial{g, pi, g.relabel(pi), {}};
  const int n = g.vertex_count();
  trial.f_maps.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto f = find_isomorphism(g.delete_vertex(j), trial.gprime.delete_vertex(pi[static_cast<std::size_t>(j)]));
    if (!f) throw theorem_violation("cards of a relabeled copy must be isomorphic");
    trial.f_maps.push_back(std::move(*f));
  }
  return trial;
}

namespace detail {

inline void validate_trial(const LabeledMateTrial& trial, const SpecialSet& special) {
  const int n = trial.g.vertex_count();
  if (static_cast<int>(trial.pi.size()) != n) throw invalid_trial("pi has wrong size");
  try {
    if (!(trial.g.relabel(trial.pi) == trial.gprime))
      throw invalid_trial("gprime is not relabel(g, pi)");
  } catch (const invalid_permutation&) {
    throw invalid_trial("pi is not a permutation");
  }
  if (static_cast<int>(trial.f_maps.size()) != n)
    throw invalid_trial("expected one card isomorphism per vertex");
  for (int j = 0; j < n; ++j) {
    const Graph gj = trial.g.delete_vertex(j);
    const Graph hj = trial.gprime.delete_vertex(trial.pi[static_cast<std::size_t>(j)]);
    if (!is_isomorphism(gj, hj, trial.f_maps[static_cast<std::size_t>(j)]))
      throw invalid_trial("f_maps[" + std::to_string(j) + "] is not a verified card isomorphism");
  }
  if (!check_special_set(trial.g, special))
    throw invalid_trial("special set is not a witness for g");
}

}  // namespace detail

/// For every witness vertex i and every j != i: the card isomorphism f_j is
/// forced to send i to pi(i), and the edge i~j transfers to pi(i)~pi(j).
inline bool verify_lemma1(const LabeledMateTrial& trial, const SpecialSet& special) {
  detail::validate_trial(trial, special);
  const int n = trial.g.vertex_count();
  std::vector<int> members = special.others.to_vector();
  members.push_back(special.v1);
  for (int i : members) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const IsoMap& fj = trial.f_maps[static_cast<std::size_t>(j)];
      const int pi_i = trial.pi[static_cast<std::size_t>(i)];
      const int pi_j = trial.pi[static_cast<std::size_t>(j)];
      const int image = fj[static_cast<std::size_t>(detail::compact_index(i, j))];
      if (image != detail::compact_index(pi_i, pi_j)) return false;
      if (trial.g.has_edge(i, j) != trial.gprime.has_edge(pi_i, pi_j)) return false;
    }
  }
  return true;
}

/// The image witness (pi(v1), {pi(v_i)}) satisfies cover, degree gap and
/// separation in gprime.
inline bool verify_lemma2(const LabeledMateTrial& trial, const SpecialSet& special) {
  detail::validate_trial(trial, special);
  SpecialSet image;
  image.v1 = trial.pi[static_cast<std::size_t>(special.v1)];
  for (int v : special.others.to_vector()) image.others.add(trial.pi[static_cast<std::size_t>(v)]);
  return check_special_set(trial.gprime, image);
}

/// Extend the card isomorphism f_{v1} : g - v1 -> gprime - pi(v1) by
/// v1 -> pi(v1) and verify the result is an isomorphism g -> gprime. Also
/// asserts the identity f_{v1}(N(v1)) = N(pi(v1)) that makes the extension
/// work.
inline IsoMap extend_f1(const LabeledMateTrial& trial, const SpecialSet& special) {
  detail::validate_trial(trial, special);
  const int n = trial.g.vertex_count();
  const int v1 = special.v1;
  const int v1_image = trial.pi[static_cast<std::size_t>(v1)];
  const IsoMap& f1 = trial.f_maps[static_cast<std::size_t>(v1)];

  IsoMap f(static_cast<std::size_t>(n));
  f[static_cast<std::size_t>(v1)] = v1_image;
  for (int u = 0; u < n; ++u) {
    if (u == v1) continue;
    const int image_in_card = f1[static_cast<std::size_t>(detail::compact_index(u, v1))];
    f[static_cast<std::size_t>(u)] = detail::uncompact_index(image_in_card, v1_image);
  }

  std::uint64_t image_of_nv1 = 0;
  for (int u : trial.g.neighborhood(v1).to_vector())
    image_of_nv1 |= std::uint64_t{1} << f[static_cast<std::size_t>(u)];
  if (image_of_nv1 != trial.gprime.neighborhood(v1_image).bits)
    throw theorem_violation("f1 does not map N(v1) onto N(pi(v1))");

  if (!is_isomorphism(trial.g, trial.gprime, f))
    throw theorem_violation("extended map is not an isomorphism");
  return f;
}

}  // namespace recon
