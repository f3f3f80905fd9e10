// Command-line front end. Exit codes: 0 success (or positive answer),
// 1 domain-negative (non-member, non-unique reconstruction, failed lemma
// trial, illegitimate deck, generator exhausted), 2 usage or parse errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "recon/canon.hpp"
#include "recon/deck.hpp"
#include "recon/enumerate.hpp"
#include "recon/graph.hpp"
#include "recon/membership.hpp"
#include "recon/reconstruct.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw recon::invalid_argument("cannot open input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// First nonempty line, CR stripped.
std::string first_line(const std::string& text) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
    pos = end + 1;
  }
  throw recon::parse_error("empty input", 0);
}

std::optional<std::pair<int, int>> parse_shard(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
    throw recon::invalid_argument("--shard expects INDEX/TOTAL");
  try {
    std::size_t used = 0;
    const int index = std::stoi(text.substr(0, slash), &used);
    if (used != slash) throw recon::invalid_argument("--shard expects INDEX/TOTAL");
    const std::string rest = text.substr(slash + 1);
    const int total = std::stoi(rest, &used);
    if (used != rest.size()) throw recon::invalid_argument("--shard expects INDEX/TOTAL");
    return std::make_pair(index, total);
  } catch (const std::logic_error&) {
    throw recon::invalid_argument("--shard expects INDEX/TOTAL");
  }
}

int run_check(const std::string& input, bool porcelain) {
  const recon::Graph g = recon::decode_graph6(first_line(slurp(input)));
  const std::vector<recon::SpecialSet> sets = recon::find_special_sets(g);
  if (sets.empty()) {
    if (!porcelain) std::cout << "not a class member\n";
    return 1;
  }
  for (const recon::SpecialSet& s : sets) std::cout << recon::format_special_set(s) << "\n";
  return 0;
}

int run_deck(const std::string& input) {
  const recon::Graph g = recon::decode_graph6(first_line(slurp(input)));
  std::cout << recon::write_deck(recon::Deck::of(g));
  return 0;
}

int run_reconstruct(const std::string& input) {
  const recon::Deck d = recon::read_deck(slurp(input));
  const recon::ReconstructionReport report = recon::reconstruct_from_deck(d);
  std::cout << "candidates_tried: " << report.candidates_tried << "\n";
  std::cout << "survivors: " << report.survivors.size() << "\n";
  for (const recon::Certificate& c : report.survivors) std::cout << "survivor: " << c << "\n";
  std::cout << "unique: " << (report.unique ? "true" : "false") << "\n";
  return report.unique ? 0 : 1;
}

int run_verify(int n, int jobs, const std::string& shard_text) {
  const recon::VerificationSummary summary =
      recon::verify_theorem_exhaustive(n, jobs, parse_shard(shard_text));
  std::cout << recon::format_summary(summary);
  return summary.counterexamples.empty() ? 0 : 1;
}

int run_lemmas(const std::string& input, int trials, std::uint64_t seed, bool porcelain) {
  const recon::Graph g = recon::decode_graph6(first_line(slurp(input)));
  const std::vector<recon::SpecialSet> sets = recon::find_special_sets(g);
  if (sets.empty()) {
    if (!porcelain) std::cout << "not in class\n";
    return 1;
  }
  if (trials < 0) throw recon::invalid_argument("--trials must be nonnegative");
  if (trials == 0) std::cerr << "warning: 0 trials requested, passing vacuously\n";

  const int n = g.vertex_count();
  std::mt19937_64 rng(seed);
  bool lemma1 = true, lemma2 = true, extension = true;
  for (int t = 0; t < trials; ++t) {
    recon::Perm pi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = i;
    std::shuffle(pi.begin(), pi.end(), rng);
    const recon::LabeledMateTrial trial = recon::make_trial(g, pi);
    for (const recon::SpecialSet& s : sets) {
      if (!recon::verify_lemma1(trial, s)) lemma1 = false;
      if (!recon::verify_lemma2(trial, s)) lemma2 = false;
      try {
        recon::extend_f1(trial, s);
      } catch (const recon::theorem_violation&) {
        extension = false;
      }
    }
  }
  std::cout << "trials: " << trials << "\n";
  std::cout << "witnesses: " << sets.size() << "\n";
  std::cout << "lemma1: " << (lemma1 ? "pass" : "fail") << "\n";
  std::cout << "lemma2: " << (lemma2 ? "pass" : "fail") << "\n";
  std::cout << "extension: " << (extension ? "pass" : "fail") << "\n";
  return (lemma1 && lemma2 && extension) ? 0 : 1;
}

int run_generate(int n, int count, std::uint64_t seed) {
  if (count < 1) throw recon::invalid_argument("--count must be positive");
  int misses = 0;
  for (int i = 0; i < count; ++i) {
    const std::optional<recon::Graph> g =
        recon::generate_class_member(n, seed + static_cast<std::uint64_t>(i));
    if (!g) {
      ++misses;
      std::cerr << "no class member found for n=" << n << " (seed " << seed + i << ")\n";
      continue;
    }
    std::cout << recon::encode_graph6(*g) << "\n";
  }
  return misses == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex-deleted deck toolkit: membership, decks, reconstruction"};
  app.require_subcommand(1);

  bool porcelain = false;
  std::uint64_t seed = 0;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_flag("--porcelain", porcelain, "suppress prose; emit only stable line-oriented fields");
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--jobs", jobs, "worker thread cap")->check(CLI::PositiveNumber);

  std::string input = "-";
  int n = 0;
  int trials = 100;
  int count = 1;
  std::string shard_text;
  int rc = 0;

  CLI::App* check = app.add_subcommand("check", "list class witnesses of a graph6 graph");
  check->add_option("input", input, "graph6 file, or - for standard input");
  check->fallthrough();
  check->callback([&] { rc = run_check(input, porcelain); });

  CLI::App* deck = app.add_subcommand("deck", "print the certificate-sorted deck of a graph");
  deck->add_option("input", input, "graph6 file, or - for standard input");
  deck->fallthrough();
  deck->callback([&] { rc = run_deck(input); });

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "rebuild graphs from a deck file (one card per line)");
  reconstruct->add_option("input", input, "deck file, or - for standard input");
  reconstruct->fallthrough();
  reconstruct->callback([&] { rc = run_reconstruct(input); });

  CLI::App* verify =
      app.add_subcommand("verify", "exhaustively verify unique reconstructibility at size n");
  verify->add_option("n", n, "vertex count, 3..7")->required();
  verify->add_option("--shard", shard_text, "INDEX/TOTAL slice of the labeled space");
  verify->fallthrough();
  verify->callback([&] { rc = run_verify(n, jobs, shard_text); });

  CLI::App* lemmas =
      app.add_subcommand("lemmas", "randomized verification of the supporting lemmas");
  lemmas->add_option("input", input, "graph6 file, or - for standard input");
  lemmas->add_option("--trials", trials, "random permutations per witness (default 100)");
  lemmas->fallthrough();
  lemmas->callback([&] { rc = run_lemmas(input, trials, seed, porcelain); });

  CLI::App* generate = app.add_subcommand("generate", "emit random class members as graph6");
  generate->add_option("n", n, "vertex count, at least 5")->required();
  generate->add_option("--count", count, "graphs to emit (default 1)");
  generate->fallthrough();
  generate->callback([&] { rc = run_generate(n, count, seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const recon::illegitimate_deck& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const recon::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
