#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "recon/canon.hpp"
#include "recon/deck.hpp"
#include "recon/enumerate.hpp"
#include "recon/graph.hpp"
#include "recon/membership.hpp"
#include "recon/reconstruct.hpp"

using recon::Deck;
using recon::Graph;
using recon::LabeledMateTrial;
using recon::Perm;
using recon::SpecialSet;

namespace {

// Isolated vertex, dominating hub, rim matched in pairs: the unique class
// member on six vertices.
Graph six_vertex_member() {
  return Graph::from_edges(6, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {4, 5}});
}

SpecialSet first_witness(const Graph& g) { return recon::find_special_sets(g).front(); }

}  // namespace

TEST_CASE("index compaction round-trips around a deleted vertex") {
  for (int deleted = 0; deleted < 6; ++deleted)
    for (int v = 0; v < 6; ++v) {
      if (v == deleted) continue;
      const int c = recon::detail::compact_index(v, deleted);
      REQUIRE(c >= 0);
      REQUIRE(c < 5);
      REQUIRE(recon::detail::uncompact_index(c, deleted) == v);
    }
}

TEST_CASE("pinned degree values") {
  REQUIRE(recon::detail::gap_isolated_values({0, 3, 3, 3, 3, 3, 5}) == std::vector<int>{0, 5});
  REQUIRE(recon::detail::gap_isolated_values({2, 2, 2}).empty());
  REQUIRE(recon::detail::gap_isolated_values({0, 2}) == std::vector<int>{0, 2});
  REQUIRE(recon::detail::gap_isolated_values({1, 1}).empty());
  REQUIRE(recon::detail::gap_isolated_values({0, 1, 3}) == std::vector<int>{3});
}

TEST_CASE("class members are rebuilt uniquely from their decks") {
  for (const Graph& g : {oracle::isolated_plus_wheel(), oracle::two_stars(), six_vertex_member()}) {
    const recon::ReconstructionReport report = recon::reconstruct_from_deck(Deck::of(g));
    REQUIRE(report.unique);
    REQUIRE(report.survivors.size() == 1);
    REQUIRE(*report.survivors.begin() == recon::certificate(g));
    REQUIRE(report.candidates_tried >= 1);
  }
}

TEST_CASE("reconstruction survives relabeling of the input") {
  std::mt19937_64 rng(51);
  const Graph g = oracle::isolated_plus_wheel();
  for (int trial = 0; trial < 20; ++trial) {
    const Graph h = g.relabel(oracle::random_perm(7, rng));
    const recon::ReconstructionReport report = recon::reconstruct_from_deck(Deck::of(h));
    REQUIRE(report.unique);
    REQUIRE(*report.survivors.begin() == recon::certificate(g));
  }
}

TEST_CASE("non-member decks yield a report, not an error") {
  const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const recon::ReconstructionReport report = recon::reconstruct_from_deck(Deck::of(c4));
  REQUIRE(report.survivors.empty());
  REQUIRE_FALSE(report.unique);
  REQUIRE(report.candidates_tried == 0);
}

TEST_CASE("every survivor's deck matches the input deck") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    const Graph g = oracle::random_graph(n, std::uniform_real_distribution<double>(0.1, 0.9)(rng),
                                         rng);
    const Deck d = Deck::of(g);
    for (const recon::Certificate& c : recon::reconstruct_from_deck(d).survivors)
      REQUIRE(recon::decks_equal(Deck::of(recon::decode_graph6(c)), d));
  }
}

TEST_CASE("for members the survivors equal the exhaustive mate set") {
  std::mt19937_64 rng(53);
  std::vector<Graph> members{six_vertex_member(), oracle::isolated_plus_wheel()};
  for (int i = 0; i < 3; ++i) {
    const auto g = recon::generate_class_member(7, 530 + static_cast<std::uint64_t>(i));
    REQUIRE(g.has_value());
    members.push_back(*g);
  }
  for (const Graph& g : members) {
    const Deck d = Deck::of(g);
    REQUIRE(recon::reconstruct_from_deck(d).survivors == recon::hypomorphic_mates(d, 7));
  }
}

TEST_CASE("the special-candidate cap trips") {
  REQUIRE_THROWS_AS(recon::reconstruct_from_deck(Deck::of(oracle::isolated_plus_wheel()), 0),
                    recon::search_bound_exceeded);
}

TEST_CASE("attachment identity: the missing neighborhood is the uncovered card remainder") {
  std::mt19937_64 rng(54);
  std::vector<Graph> members{six_vertex_member(), oracle::isolated_plus_wheel(),
                             oracle::two_stars()};
  for (int i = 0; i < 5; ++i) {
    const auto g =
        recon::generate_class_member(8 + i % 5, 540 + static_cast<std::uint64_t>(i));
    REQUIRE(g.has_value());
    members.push_back(*g);
  }
  for (const Graph& g : members) {
    for (const SpecialSet& s : recon::find_special_sets(g)) {
      const Graph card = g.delete_vertex(s.v1);
      std::uint64_t covered = 0;
      for (int v : s.others.to_vector())
        covered |= card.closed_neighborhood(recon::detail::compact_index(v, s.v1)).bits;
      const std::uint64_t attach = card.full_mask() & ~covered;
      std::uint64_t expected = 0;
      for (int u : g.neighborhood(s.v1).to_vector())
        expected |= std::uint64_t{1} << recon::detail::compact_index(u, s.v1);
      REQUIRE(attach == expected);
    }
  }
}

TEST_CASE("labeled mate trials verify both lemmas and extend to a full isomorphism") {
  std::mt19937_64 rng(55);
  for (const Graph& g : {oracle::isolated_plus_wheel(), oracle::two_stars(),
                         six_vertex_member()}) {
    const int n = g.vertex_count();
    for (int trial = 0; trial < 25; ++trial) {
      const Perm pi = oracle::random_perm(n, rng);
      const LabeledMateTrial t = recon::make_trial(g, pi);
      REQUIRE(t.gprime == g.relabel(pi));
      REQUIRE(t.f_maps.size() == static_cast<std::size_t>(n));
      for (const SpecialSet& s : recon::find_special_sets(g)) {
        REQUIRE(recon::verify_lemma1(t, s));
        REQUIRE(recon::verify_lemma2(t, s));
        const recon::IsoMap f = recon::extend_f1(t, s);
        REQUIRE(recon::is_isomorphism(g, t.gprime, f));
        REQUIRE(f[static_cast<std::size_t>(s.v1)] == pi[static_cast<std::size_t>(s.v1)]);
      }
    }
  }
}

TEST_CASE("tampered trials are rejected before any lemma logic runs") {
  std::mt19937_64 rng(56);
  const Graph g = oracle::isolated_plus_wheel();
  const SpecialSet w = first_witness(g);
  const Perm pi = oracle::random_perm(7, rng);
  const LabeledMateTrial good = recon::make_trial(g, pi);
  REQUIRE(recon::verify_lemma1(good, w));

  LabeledMateTrial bad = good;
  bad.pi.pop_back();
  REQUIRE_THROWS_AS(recon::verify_lemma1(bad, w), recon::invalid_trial);

  bad = good;
  bad.pi[0] = bad.pi[1];  // not a bijection
  REQUIRE_THROWS_AS(recon::verify_lemma2(bad, w), recon::invalid_trial);

  bad = good;
  bad.gprime = Graph(7);  // not relabel(g, pi)
  REQUIRE_THROWS_AS(recon::extend_f1(bad, w), recon::invalid_trial);

  bad = good;
  bad.f_maps.pop_back();
  REQUIRE_THROWS_AS(recon::verify_lemma1(bad, w), recon::invalid_trial);

  bad = good;
  std::swap(bad.f_maps[0][0], bad.f_maps[0][1]);  // no longer edge-preserving
  REQUIRE_THROWS_AS(recon::verify_lemma1(bad, w), recon::invalid_trial);

  SpecialSet not_a_witness;
  not_a_witness.v1 = 0;
  not_a_witness.others.add(2);
  REQUIRE_THROWS_AS(recon::verify_lemma1(good, not_a_witness), recon::invalid_trial);
}
