#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "recon/canon.hpp"
#include "recon/deck.hpp"
#include "recon/graph.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
};

fs::path scratch_file(const std::string& tag) {
  static int counter = 0;
  return fs::temp_directory_path() /
         ("recon_cli_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
}

std::string write_scratch(const std::string& tag, const std::string& text) {
  const fs::path p = scratch_file(tag);
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  const fs::path out = scratch_file("out");
  std::string cmd = std::string(RECON_CLI_PATH) + " " + args + " >" + out.string() + " 2>/dev/null";
  fs::path in;
  if (!stdin_text.empty()) {
    in = write_scratch("in", stdin_text);
    cmd += " <" + in.string();
  } else {
    cmd += " </dev/null";
  }
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ostringstream buf;
  buf << std::ifstream(out, std::ios::binary).rdbuf();
  r.out = buf.str();
  fs::remove(out);
  if (!in.empty()) fs::remove(in);
  return r;
}

const std::string kWheel = recon::encode_graph6(oracle::isolated_plus_wheel());

}  // namespace

TEST_CASE("cli check") {
  RunResult r = run("check -", kWheel + "\n");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "v1=0 others={1} k=2\nv1=1 others={0} k=2\n");

  r = run("check -", "Cl\n");  // a 4-cycle
  REQUIRE(r.code == 1);
  REQUIRE(r.out == "not a class member\n");

  r = run("check --porcelain -", "Cl\n");
  REQUIRE(r.code == 1);
  REQUIRE(r.out.empty());

  r = run("check -", "%%garbage\n");
  REQUIRE(r.code == 2);

  r = run("check -", "");
  REQUIRE(r.code == 2);
}

TEST_CASE("cli check reads files and rejects missing ones") {
  const std::string path = write_scratch("g6", kWheel + "\n");
  REQUIRE(run("check " + path).code == 0);
  fs::remove(path);
  REQUIRE(run("check /nonexistent/input.g6").code == 2);
}

TEST_CASE("cli deck") {
  RunResult r = run("deck -", "Bw\n");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "A_\nA_\nA_\n");

  r = run("deck -", "Bg\n");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "A?\nA_\nA_\n");

  REQUIRE(run("deck -", "@\n").code == 2);  // single vertex has no deck
}

TEST_CASE("cli reconstruct") {
  const recon::Graph wheel = oracle::isolated_plus_wheel();
  const std::string deck_text = recon::write_deck(recon::Deck::of(wheel));

  RunResult r = run("reconstruct -", deck_text);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("survivors: 1\n") != std::string::npos);
  REQUIRE(r.out.find("survivor: " + recon::certificate(wheel) + "\n") != std::string::npos);
  REQUIRE(r.out.find("unique: true\n") != std::string::npos);

  r = run("reconstruct -", "A?\nA_\nA_\nA_\n");  // four cards but each has only 2 vertices
  REQUIRE(r.code == 1);

  REQUIRE(run("reconstruct -", "A?\nA_\nBw\n").code == 1);  // inconsistent card sizes
  REQUIRE(run("reconstruct -", "A?\nA_\n%%\n").code == 2);  // parse failure
  REQUIRE(run("reconstruct -", "").code == 1);              // no cards
}

TEST_CASE("cli reconstruct is exit-1 on non-unique decks") {
  const std::string c4_deck =
      recon::write_deck(recon::Deck::of(recon::decode_graph6("Cl")));
  const RunResult r = run("reconstruct -", c4_deck);
  REQUIRE(r.code == 1);
  REQUIRE(r.out.find("unique: false\n") != std::string::npos);
}

TEST_CASE("cli verify") {
  RunResult r = run("verify 3");
  REQUIRE(r.code == 0);
  REQUIRE(r.out ==
          "n: 3\n"
          "graphs_scanned: 4\n"
          "class_members_found: 0\n"
          "members_with_unique_mate: 0\n"
          "counterexamples: 0\n");

  r = run("verify 6 --jobs 2");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("class_members_found: 1\n") != std::string::npos);

  REQUIRE(run("verify 9").code == 2);
  REQUIRE(run("verify 2").code == 2);
  REQUIRE(run("verify 5 --shard 0/2").code == 0);
  REQUIRE(run("verify 5 --shard 2/2").code == 2);
  REQUIRE(run("verify 5 --shard nope").code == 2);
  REQUIRE(run("verify 5 --shard 1/").code == 2);
}

TEST_CASE("cli lemmas") {
  RunResult r = run("lemmas --trials 5 --seed 3 -", kWheel + "\n");
  REQUIRE(r.code == 0);
  REQUIRE(r.out ==
          "trials: 5\n"
          "witnesses: 2\n"
          "lemma1: pass\n"
          "lemma2: pass\n"
          "extension: pass\n");

  r = run("lemmas -", "Cl\n");
  REQUIRE(r.code == 1);
  REQUIRE(r.out == "not in class\n");

  REQUIRE(run("lemmas --trials 0 -", kWheel + "\n").code == 0);
}

TEST_CASE("cli generate") {
  const RunResult r = run("generate 8 --count 3 --seed 9");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int produced = 0;
  while (std::getline(lines, line)) {
    const recon::Graph g = recon::decode_graph6(line);
    REQUIRE(g.vertex_count() == 8);
    ++produced;
  }
  REQUIRE(produced == 3);

  REQUIRE(run("generate 5").code == 1);  // nothing exists on 5 vertices
  REQUIRE(run("generate 4").code == 2);
  REQUIRE(run("generate 8 --count 0").code == 2);
}

TEST_CASE("cli usage errors") {
  REQUIRE(run("").code == 2);
  REQUIRE(run("frobnicate").code == 2);
  REQUIRE(run("check --no-such-flag -", "Bw\n").code == 2);
  REQUIRE(run("--help").code == 0);
  REQUIRE(run("verify").code == 2);  // missing n
}
