#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <map>

#include "ac/grammar.hpp"
#include "ac/grammars.hpp"

using namespace ac;

namespace {

GrammarModel tiny_grammar() {
  GrammarModel g;
  g.name = "tiny";
  g.lex_area = "LEX";
  g.root_area = "B";
  AreaSpec lex;
  lex.name = "LEX";
  lex.explicit_area = true;
  g.areas.push_back(lex);
  AreaSpec b;
  b.name = "B";
  b.label = "ROLE";
  g.areas.push_back(b);
  g.fibers.push_back({"LEX", "B", true});
  g.initial = {dis_area("LEX", 0), dis_area("B", 0), dis_fiber("LEX", "B", 0)};
  WordClass w;
  w.name = "W";
  w.pre = {dis_area("B", 1)};
  w.post = {inh_area("B", 1)};
  g.classes.push_back(w);
  g.lexicon = {{"x", "W"}, {"y", "W"}};
  return g;
}

}  // namespace

TEST_CASE("command json round trip") {
  for (const Command& c : {inh_area("A", 0), dis_area("B", 3),
                           inh_fiber("A", "B", 1), dis_fiber("B", "C", 2)}) {
    const Command back = command_from_json(command_to_json(c));
    CHECK(back == c);
  }
  nlohmann::json j;
  j["op"] = "open";
  j["area"] = "A";
  CHECK_THROWS_AS(command_from_json(j), GrammarError);
}

TEST_CASE("command text form") {
  CHECK(to_string(inh_area("SUBJ", 0)) == "inh(SUBJ,0)");
  CHECK(to_string(dis_fiber("LEX", "VERB", 2)) == "dis(LEX-VERB,2)");
}

TEST_CASE("model json round trip") {
  for (const GrammarModel& g :
       {tiny_grammar(), english_reference_grammar(), russian_reference_grammar()}) {
    const GrammarModel back = grammar_from_json(grammar_to_json(g));
    CHECK(back == g);
  }
}

TEST_CASE("readout label defaults to the area name") {
  const GrammarModel g = tiny_grammar();
  CHECK(g.areas[0].readout_label() == "LEX");
  CHECK(g.areas[1].readout_label() == "ROLE");
}

TEST_CASE("validation accepts the reference grammars") {
  CHECK(validate(tiny_grammar()).empty());
  CHECK(validate(english_reference_grammar()).empty());
  CHECK(validate(russian_reference_grammar()).empty());
}

TEST_CASE("validation rejects structural mistakes") {
  auto count_with = [](const GrammarModel& g) { return validate(g).size(); };

  GrammarModel g = tiny_grammar();
  g.name.clear();
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.areas.push_back(g.areas[1]);  // duplicate area
  CHECK(count_with(g) >= 1);

  g = tiny_grammar();
  g.areas[0].explicit_area = false;  // lexicon area must be explicit
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.root_area = "NOPE";
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.fibers.push_back({"B", "NOPE", true});
  CHECK(count_with(g) >= 1);

  g = tiny_grammar();
  g.fibers.push_back({"B", "B", true});
  CHECK(count_with(g) >= 1);

  g = tiny_grammar();
  g.fibers.push_back({"B", "LEX", true});  // duplicate, reversed
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.initial.push_back(dis_fiber("B", "LEX", 0));  // fine: fiber exists
  CHECK(count_with(g) == 0);
  g.initial.push_back(dis_fiber("B", "B", 0));
  CHECK(count_with(g) >= 1);

  g = tiny_grammar();
  g.classes[0].pre.push_back(inh_area("NOPE", 0));
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.classes.push_back(g.classes[0]);  // duplicate class name
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.lexicon.push_back({"z", "NOCLASS"});
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.lexicon.push_back({"x", "W"});  // duplicate word
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.lexicon.clear();
  CHECK(count_with(g) == 1);

  g = tiny_grammar();
  g.areas[1].n = 10;
  g.areas[1].k = 11;
  CHECK(count_with(g) == 1);
}

TEST_CASE("build_brain derives sizes and rejects bad grammars") {
  BrainConfig cfg;
  cfg.n = 200;
  cfg.k = 10;
  cfg.p = 0.2;
  cfg.seed = 11;

  Brain br = build_brain(tiny_grammar(), cfg);
  CHECK(br.num_areas() == 2);
  CHECK(br.area(0).n == 2 * cfg.k);  // lexicon: one block per word
  CHECK(br.area(0).k == cfg.k);
  CHECK(br.area(0).explicit_area);
  CHECK(br.area(1).n == cfg.n);
  CHECK_FALSE(br.area(1).explicit_area);

  GrammarModel bad = tiny_grammar();
  bad.root_area = "NOPE";
  CHECK_THROWS_AS(build_brain(bad, cfg), GrammarError);
}

TEST_CASE("grammar file io") {
  const std::string path = "tiny_roundtrip.grammar";
  const GrammarModel g = tiny_grammar();
  save_grammar(g, path);
  CHECK(load_grammar(path) == g);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_grammar("does_not_exist.grammar"), GrammarError);
}

TEST_CASE("shipped grammar files match the builders") {
  CHECK(load_grammar(AC_SOURCE_DIR "/grammars/english.grammar") ==
        english_reference_grammar());
  CHECK(load_grammar(AC_SOURCE_DIR "/grammars/russian.grammar") ==
        russian_reference_grammar());
}

TEST_CASE("builtin grammar lookup") {
  CHECK(builtin_grammar("english").name == "english");
  CHECK(builtin_grammar("russian").name == "russian");
  CHECK_THROWS_AS(builtin_grammar("klingon"), GrammarError);
}

TEST_CASE("english grammar glossary") {
  const GrammarModel g = english_reference_grammar();
  CHECK(g.lexicon.size() == 99);
  CHECK(g.word_index("the") >= 0);
  CHECK(g.word_index("saw") >= 0);
  CHECK(g.word_index("glorple") == -1);
  CHECK(g.find_class("NOUN") != nullptr);
  CHECK(g.find_class("NOPE") == nullptr);

  // the slot areas share readout labels with their role
  std::map<std::string, std::string> labels;
  for (const AreaSpec& a : g.areas) labels[a.name] = a.readout_label();
  CHECK(labels.at("DETS") == "DET");
  CHECK(labels.at("DETP") == "DET");
  CHECK(labels.at("DETO") == "DET");
  CHECK(labels.at("ADJS") == "ADJ");
  CHECK(labels.at("ADJO") == "ADJ");
  CHECK(labels.at("PREPC") == "PREP");
  CHECK(labels.at("SUBJ") == "SUBJ");
}
