#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "ac/grammars.hpp"
#include "ac/parser.hpp"

using namespace ac;

namespace {

// one brain per language for the whole suite; parse() resets learning
ParserRuntime& english_rt() {
  static ParserRuntime rt(english_reference_grammar(), BrainConfig{});
  return rt;
}

ParserRuntime& russian_rt() {
  static ParserRuntime rt(russian_reference_grammar(), BrainConfig{});
  return rt;
}

std::vector<std::string> words_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> ws;
  for (std::string w; in >> w;) ws.push_back(w);
  return ws;
}

std::set<std::string> dep_set(const ParseResult& r) {
  std::set<std::string> out;
  for (const Dependency& d : r.deps)
    out.insert(d.head + "|" + d.label + "|" + d.dependent);
  return out;
}

std::set<std::string> dep_set(const std::string& gold) {
  std::set<std::string> out;
  std::istringstream in(gold);
  for (std::string tok; std::getline(in, tok, ';');)
    if (!tok.empty()) out.insert(tok);
  return out;
}

const ParseResult& parse_ok(ParserRuntime& rt, const std::string& sentence) {
  static ParseOutcome out;
  out = rt.parse(words_of(sentence));
  INFO(sentence);
  REQUIRE(ok(out));
  return result(out);
}

void expect_deps(ParserRuntime& rt, const std::string& sentence,
                 const std::string& root, const std::string& gold) {
  const ParseResult& r = parse_ok(rt, sentence);
  INFO(sentence);
  CHECK(r.root == root);
  CHECK(dep_set(r) == dep_set(gold));
}

void expect_error(ParserRuntime& rt, const std::string& sentence,
                  ParseErrorKind kind, std::size_t word_index) {
  ParseOutcome out = rt.parse(words_of(sentence));
  INFO(sentence);
  REQUIRE_FALSE(ok(out));
  CHECK(error(out).kind == kind);
  CHECK(error(out).word_index == word_index);
}

}  // namespace

TEST_CASE("the worked example parses to its full tree") {
  const ParseResult& r = parse_ok(english_rt(), "the man saw a woman");
  CHECK(r.root == "saw");
  CHECK(dep_set(r) ==
        dep_set("saw|SUBJ|man;man|DET|the;saw|OBJ|woman;woman|DET|a"));

  // per-word cost: exactly `rounds` firing epochs per word, a bounded
  // command budget, and readout adds no steps at all
  const BrainConfig& cfg = english_rt().config();
  CHECK(r.steps == r.words.size() * cfg.rounds);
  REQUIRE(r.reports.size() == r.words.size());
  for (const ProjectReport& rep : r.reports) CHECK(rep.rounds == cfg.rounds);
  REQUIRE(r.commands_per_word.size() == r.words.size());
  for (std::uint32_t c : r.commands_per_word) {
    CHECK(c >= 3);
    CHECK(c <= 64);
  }
  for (const ProjectReport& rep : r.reports) CHECK(rep.all_converged());
}

TEST_CASE("simple clauses") {
  expect_deps(english_rt(), "people died", "died", "died|SUBJ|people");
  expect_deps(english_rt(), "dogs chased cats", "chased",
              "chased|SUBJ|dogs;chased|OBJ|cats");
  expect_deps(english_rt(), "the dog ran", "ran", "ran|SUBJ|dog;dog|DET|the");
}

TEST_CASE("adjectives attach to their own noun") {
  expect_deps(english_rt(), "the big dog chased a small cat", "chased",
              "chased|SUBJ|dog;dog|DET|the;dog|ADJ|big;"
              "chased|OBJ|cat;cat|DET|a;cat|ADJ|small");
  expect_deps(english_rt(), "dogs chased big cats", "chased",
              "chased|SUBJ|dogs;chased|OBJ|cats;cats|ADJ|big");
}

TEST_CASE("adverbs attach to the verb from either side") {
  expect_deps(english_rt(), "the dog ran quickly", "ran",
              "ran|SUBJ|dog;dog|DET|the;ran|ADV|quickly");
  expect_deps(english_rt(), "dogs quickly ran", "ran",
              "ran|SUBJ|dogs;ran|ADV|quickly");
}

TEST_CASE("phrase attachment follows the active side") {
  // post-verb phrase binds the verb
  expect_deps(english_rt(), "the dog ran in a park", "ran",
              "ran|SUBJ|dog;dog|DET|the;ran|PREPP|park;"
              "park|PREP|in;park|DET|a");
  // pre-verb phrase binds the still-active subject
  expect_deps(english_rt(), "the dog in a park saw my cat", "saw",
              "saw|SUBJ|dog;dog|DET|the;dog|PREPP|park;park|PREP|in;"
              "park|DET|a;saw|OBJ|cat;cat|DET|my");
  // 'of' binds the object noun
  expect_deps(english_rt(), "the dogs ate dinner of tuna", "ate",
              "ate|SUBJ|dogs;dogs|DET|the;ate|OBJ|dinner;"
              "dinner|PREPP|tuna;tuna|PREP|of");
  // a chained second phrase binds the first phrase noun
  expect_deps(english_rt(), "he went to school with a backpack", "went",
              "went|SUBJ|he;went|PREPP|school;school|PREP|to;"
              "school|COMP1|backpack;backpack|PREP|with;backpack|DET|a");
}

TEST_CASE("copular clauses and stacked modifiers") {
  expect_deps(english_rt(), "the child is a king", "is",
              "is|SUBJ|child;child|DET|the;is|OBJ|king;king|DET|a");
  expect_deps(english_rt(), "big dogs are scary", "are",
              "are|SUBJ|dogs;dogs|ADJ|big;are|ADJ|scary");
  expect_deps(english_rt(), "the big bad problem is scary", "is",
              "is|SUBJ|problem;problem|DET|the;problem|ADJ|big;"
              "problem|COMP1|bad;is|ADJ|scary");
}

TEST_CASE("rejected inputs") {
  expect_error(english_rt(), "the dogs lived cats", ParseErrorKind::EmptyProject, 4);
  expect_error(english_rt(), "died dogs", ParseErrorKind::EmptyProject, 2);
  expect_error(english_rt(), "dogs died cats", ParseErrorKind::EmptyProject, 3);
  expect_error(english_rt(), "dogs chased saw", ParseErrorKind::NonsenseAssembly, 0);
  expect_error(english_rt(), "dogs are is", ParseErrorKind::NonsenseAssembly, 0);
  expect_error(english_rt(), "dogs chased glorple", ParseErrorKind::UnknownWord, 3);

  // the matching well-formed sentences stay parseable
  expect_deps(english_rt(), "the dogs lived", "lived",
              "lived|SUBJ|dogs;dogs|DET|the");
  expect_deps(english_rt(), "dogs died", "died", "died|SUBJ|dogs");
}

TEST_CASE("state is fully reset between parses") {
  // an error parse must not leak state into the next sentence
  expect_error(english_rt(), "dogs chased saw", ParseErrorKind::NonsenseAssembly, 0);
  const ParseResult& r1 = parse_ok(english_rt(), "the man saw a woman");
  const auto deps1 = dep_set(r1);
  const std::string root1 = r1.root;
  const ParseResult& r2 = parse_ok(english_rt(), "the man saw a woman");
  CHECK(dep_set(r2) == deps1);
  CHECK(r2.root == root1);
  CHECK(deps1 ==
        dep_set("saw|SUBJ|man;man|DET|the;saw|OBJ|woman;woman|DET|a"));
}

TEST_CASE("identical seeds give identical parses across runtimes") {
  // brains are ~1.6 GB at defaults; keep at most one extra alive
  BrainConfig cfg;
  cfg.seed = 21;
  std::vector<Dependency> deps1;
  std::string root1;
  {
    ParserRuntime a(english_reference_grammar(), cfg);
    ParseOutcome oa = a.parse(words_of("the man saw a woman"));
    REQUIRE(ok(oa));
    deps1 = result(oa).deps;
    root1 = result(oa).root;
  }
  ParserRuntime b(english_reference_grammar(), cfg);
  ParseOutcome ob = b.parse(words_of("the man saw a woman"));
  REQUIRE(ok(ob));
  CHECK(result(ob).deps == deps1);
  CHECK(result(ob).root == root1);
}

TEST_CASE("trace hook reports the word cycle") {
  std::vector<std::string> lines;
  english_rt().set_trace([&](const std::string& l) { lines.push_back(l); });
  parse_ok(english_rt(), "dogs died");
  english_rt().set_trace(nullptr);
  REQUIRE_FALSE(lines.empty());
  bool saw_word = false, saw_readout = false;
  for (const std::string& l : lines) {
    if (l.find("word 1 'dogs'") != std::string::npos) saw_word = true;
    if (l.find("readout") != std::string::npos) saw_readout = true;
  }
  CHECK(saw_word);
  CHECK(saw_readout);
}

TEST_CASE("word traces carry commands and per-round caps") {
  std::vector<WordTrace> traces;
  english_rt().set_word_trace([&](const WordTrace& t) { traces.push_back(t); });
  parse_ok(english_rt(), "the dog ran");
  english_rt().set_word_trace(nullptr);

  const BrainConfig& cfg = english_rt().config();
  REQUIRE(traces.size() == 3);
  CHECK(traces[0].word == "the");
  CHECK(traces[0].cls == "DET");
  CHECK(traces[2].word == "ran");
  for (const WordTrace& t : traces) {
    CHECK(t.converged);
    CHECK_FALSE(t.pre.empty());
    CHECK_FALSE(t.post.empty());
    REQUIRE(t.rounds.size() == cfg.rounds);
    // winners are recorded for every computed area, k of them each
    for (const auto& round : t.rounds)
      for (const auto& [area, cap] : round) {
        CHECK_FALSE(area.empty());
        CHECK(cap.size() == cfg.k);
      }
    // the last round of each word must include the area the word landed in
    CHECK_FALSE(t.rounds.back().empty());
  }
  // 'the' lands in a determiner area; 'dog' must show SUBJ activity
  bool dog_in_subj = false;
  for (const auto& [area, cap] : traces[1].rounds.back())
    if (area == "SUBJ") dog_in_subj = true;
  CHECK(dog_in_subj);
}

TEST_CASE("unknown words are rejected before any commands run") {
  ParseOutcome out = english_rt().parse(words_of("glorple"));
  REQUIRE_FALSE(ok(out));
  CHECK(error(out).kind == ParseErrorKind::UnknownWord);
  CHECK(error(out).word == "glorple");
}

TEST_CASE("russian case areas bind regardless of word order") {
  const std::string gold = "дала|NOM|женщина;дала|DAT|мужчине;дала|ACC|сумку";
  expect_deps(russian_rt(), "женщина дала мужчине сумку", "дала", gold);
  expect_deps(russian_rt(), "сумку мужчине дала женщина", "дала", gold);
  expect_deps(russian_rt(), "дала сумку женщина мужчине", "дала", gold);
  expect_deps(russian_rt(), "мужчине женщина сумку дала", "дала", gold);
}

TEST_CASE("a verbless fragment reads out as an empty parse") {
  const ParseResult& r = parse_ok(russian_rt(), "женщина мужчине");
  CHECK(r.root.empty());
  CHECK(r.deps.empty());
}

TEST_CASE("runtime rejects an invalid grammar up front") {
  GrammarModel g = english_reference_grammar();
  g.root_area = "NOPE";
  CHECK_THROWS_AS(ParserRuntime(g, BrainConfig{}), GrammarError);
}
