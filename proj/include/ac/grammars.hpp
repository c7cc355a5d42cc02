#pragma once

// Built-in reference grammars. The English action tables follow four rules
// that keep readout clean:
//  * a word's own LEX fiber is open only during that word's rounds
//    (close-own-door), so a retrieved assembly round-trips to exactly one
//    word block;
//  * every merge door a noun opens is closed again in its post commands
//    (close-behind), so stale assemblies never leak into later words;
//  * an area hosts at most one assembly per sentence -- once an assembly has
//    potentiated its recurrent synapses, any later landing in the same area
//    revives it and blends the readout.  Roles that can occur twice in a
//    sentence therefore get one area per slot (DETS/DETP/DETO, ADJS/ADJO,
//    PREP/PREPC) sharing a readout label, and pop-1 blocks on the slot areas
//    route each word to the slot its sentence position calls for;
//  * preposition-class words lay one-shot pop-1 reservations over the doors
//    of roles the next noun must NOT land in; the noun's post commands lift
//    them.

#include <string>
#include <vector>

#include "ac/grammar.hpp"

namespace ac {

namespace detail {

inline void open_fibers(std::vector<Command>& out,
                        const std::vector<std::pair<std::string, std::string>>& fs,
                        std::uint32_t pop) {
  for (const auto& [a, b] : fs) out.push_back(dis_fiber(a, b, pop));
}

inline void close_fibers(std::vector<Command>& out,
                         const std::vector<std::pair<std::string, std::string>>& fs,
                         std::uint32_t pop) {
  for (const auto& [a, b] : fs) out.push_back(inh_fiber(a, b, pop));
}

}  // namespace detail

inline GrammarModel english_reference_grammar() {
  using P = std::pair<std::string, std::string>;
  GrammarModel g;
  g.name = "english";
  g.lex_area = "LEX";
  g.root_area = "VERB";

  auto area = [&](const char* name, const char* label = "") {
    AreaSpec a;
    a.name = name;
    a.label = label;
    g.areas.push_back(std::move(a));
  };
  area("LEX");
  g.areas.back().explicit_area = true;
  area("SUBJ");
  area("OBJ");
  area("VERB");
  area("PREPP");
  area("COMP1");
  area("COMP2");
  area("ADV");
  area("PREP");
  area("PREPC", "PREP");  // second preposition of a chain
  area("DETS", "DET");    // subject-side determiner
  area("DETP", "DET");    // determiner after a preposition
  area("DETO", "DET");    // object-side determiner
  area("ADJS", "ADJ");    // pre-verb adjective
  area("ADJO", "ADJ");    // post-verb adjective (object or predicate)

  for (const char* a : {"SUBJ", "OBJ", "VERB", "PREPP", "COMP1", "COMP2",
                        "ADV", "PREP", "PREPC", "DETS", "DETP", "DETO",
                        "ADJS", "ADJO"})
    g.fibers.push_back({"LEX", a, true});
  g.fibers.push_back({"DETS", "SUBJ", true});
  g.fibers.push_back({"DETO", "OBJ", true});
  g.fibers.push_back({"DETP", "PREPP", true});
  g.fibers.push_back({"DETP", "COMP1", true});
  g.fibers.push_back({"ADJS", "SUBJ", true});
  g.fibers.push_back({"ADJO", "OBJ", true});
  g.fibers.push_back({"ADJO", "VERB", true});
  g.fibers.push_back({"COMP1", "SUBJ", true});
  g.fibers.push_back({"SUBJ", "VERB", true});
  g.fibers.push_back({"VERB", "OBJ", true});
  g.fibers.push_back({"VERB", "ADV", true});
  g.fibers.push_back({"VERB", "PREPP", true});
  g.fibers.push_back({"SUBJ", "PREPP", true});
  g.fibers.push_back({"OBJ", "PREPP", true});
  g.fibers.push_back({"PREP", "PREPP", true});
  g.fibers.push_back({"PREPP", "COMP1", true});
  g.fibers.push_back({"PREPC", "COMP1", true});
  g.fibers.push_back({"COMP1", "COMP2", false});

  // determiner/adjective slot areas start blocked except the subject side;
  // verb and preposition posts move the block to route the next word.  The
  // verb-side phrase door additionally waits for a verb to land (pop 2), or
  // a pre-verb phrase noun would pour into the empty verb area and leave a
  // junk assembly there to claim the phrase at readout.
  g.initial = {dis_area("LEX", 0),  dis_area("SUBJ", 0),
               dis_area("VERB", 0), inh_area("DETP", 1),
               inh_area("DETO", 1), inh_area("ADJO", 1),
               inh_fiber("VERB", "PREPP", 2)};

  // all merge doors a landing noun may need
  const std::vector<P> noun_doors = {
      {"LEX", "SUBJ"},   {"LEX", "OBJ"},     {"LEX", "PREPP"},
      {"LEX", "COMP1"},  {"DETS", "SUBJ"},   {"DETO", "OBJ"},
      {"DETP", "PREPP"}, {"DETP", "COMP1"},  {"ADJS", "SUBJ"},
      {"ADJO", "OBJ"},   {"COMP1", "SUBJ"},  {"VERB", "OBJ"},
      {"VERB", "PREPP"}, {"SUBJ", "PREPP"},  {"OBJ", "PREPP"},
      {"PREP", "PREPP"}, {"PREPP", "COMP1"}, {"PREPC", "COMP1"}};
  // modifier areas whose word has been consumed by the landing noun
  const std::vector<const char*> noun_retires = {
      "DETS", "DETP", "DETO", "ADJS", "ADJO", "COMP1", "PREP", "PREPC"};
  // slot routing blocks; the next licensor reopens exactly one
  const std::vector<const char*> slot_areas = {"DETS", "DETP", "DETO", "ADJS",
                                               "ADJO"};
  // the phrase-landing doors stay reserved except between a preposition and
  // its noun, so an already-built phrase can't cross-wire with later words
  const std::vector<P> prepp_doors = {{"LEX", "PREPP"},
                                      {"DETP", "PREPP"},
                                      {"SUBJ", "PREPP"},
                                      {"OBJ", "PREPP"},
                                      {"VERB", "PREPP"}};
  // doors a post-preposition noun must not land in or cross-wire with
  const std::vector<P> prep_guards = {
      {"LEX", "SUBJ"},  {"LEX", "OBJ"},  {"DETS", "SUBJ"},  {"DETO", "OBJ"},
      {"ADJS", "SUBJ"}, {"ADJO", "OBJ"}, {"COMP1", "SUBJ"}, {"VERB", "OBJ"}};
  const std::vector<Command> det_route = {inh_area("DETS", 1),
                                          inh_area("DETO", 1),
                                          dis_area("DETP", 1)};

  {
    WordClass noun;
    noun.name = "NOUN";
    detail::open_fibers(noun.pre, noun_doors, 0);
    detail::close_fibers(noun.post, noun_doors, 0);
    for (const char* a : noun_retires) noun.post.push_back(inh_area(a, 0));
    for (const char* a : slot_areas) noun.post.push_back(inh_area(a, 1));
    detail::close_fibers(noun.post, prepp_doors, 1);
    detail::open_fibers(noun.post, prep_guards, 1);
    noun.post.push_back(dis_fiber("LEX", "COMP1", 1));
    g.classes.push_back(std::move(noun));
  }
  {
    WordClass det;
    det.name = "DET";
    for (const char* a : {"DETS", "DETP", "DETO"}) {
      det.pre.push_back(dis_area(a, 0));
      det.pre.push_back(dis_fiber("LEX", a, 0));
      det.post.push_back(inh_fiber("LEX", a, 0));
    }
    g.classes.push_back(std::move(det));
  }
  {
    WordClass adj;
    adj.name = "ADJ";
    for (const char* a : {"ADJS", "ADJO"}) {
      adj.pre.push_back(dis_area(a, 0));
      adj.pre.push_back(dis_fiber("LEX", a, 0));
      adj.post.push_back(inh_fiber("LEX", a, 0));
    }
    g.classes.push_back(std::move(adj));
  }
  {
    // second-position adjectives park in COMP1 and fence off its LEX door
    // until the noun arrives
    WordClass adjc;
    adjc.name = "ADJ_CHAIN";
    adjc.pre = {dis_area("COMP1", 0), dis_fiber("LEX", "COMP1", 0)};
    adjc.post = {inh_fiber("LEX", "COMP1", 0), inh_fiber("LEX", "COMP1", 1)};
    g.classes.push_back(std::move(adjc));
  }
  {
    WordClass adv;
    adv.name = "ADV";
    adv.pre = {dis_area("ADV", 0), dis_fiber("LEX", "ADV", 0)};
    adv.post = {inh_fiber("LEX", "ADV", 0)};
    g.classes.push_back(std::move(adv));
  }
  const std::vector<Command> verb_pre = {dis_fiber("LEX", "VERB", 0),
                                         dis_fiber("SUBJ", "VERB", 0),
                                         dis_fiber("VERB", "ADV", 0)};
  // retire the subject and route determiners/adjectives to the object side
  const std::vector<Command> verb_post_core = {
      inh_fiber("LEX", "VERB", 0),
      inh_fiber("SUBJ", "VERB", 0),
      inh_area("SUBJ", 0),
      inh_area("DETS", 1),
      dis_area("DETO", 1),
      inh_area("ADJS", 1),
      dis_area("ADJO", 1),
      dis_fiber("VERB", "PREPP", 2)};
  {
    WordClass vt;
    vt.name = "VERB_TRANS";
    vt.pre = verb_pre;
    vt.post = verb_post_core;
    vt.post.push_back(dis_area("OBJ", 0));
    g.classes.push_back(std::move(vt));
  }
  {
    WordClass vi;
    vi.name = "VERB_INTRANS";
    vi.pre = verb_pre;
    vi.post = verb_post_core;
    g.classes.push_back(std::move(vi));
  }
  {
    WordClass cop;
    cop.name = "COPULA";
    cop.pre = verb_pre;
    cop.post = verb_post_core;
    cop.post.push_back(dis_area("OBJ", 0));
    cop.post.push_back(dis_fiber("ADJO", "VERB", 0));
    g.classes.push_back(std::move(cop));
  }
  {
    WordClass prep;
    prep.name = "PREP";
    prep.pre = {dis_area("PREP", 0), dis_fiber("LEX", "PREP", 0)};
    prep.post = {inh_fiber("LEX", "PREP", 0), dis_area("PREPP", 0)};
    detail::close_fibers(prep.post, prep_guards, 1);
    detail::open_fibers(prep.post, prepp_doors, 1);  // next noun -> PREPP
    for (const Command& c : det_route) prep.post.push_back(c);
    g.classes.push_back(std::move(prep));
  }
  {
    // noun-attaching preposition: additionally retires the verb so the
    // phrase binds to the object noun
    WordClass ofp;
    ofp.name = "PREP_OF";
    ofp.pre = {dis_area("PREP", 0), dis_fiber("LEX", "PREP", 0)};
    ofp.post = {inh_fiber("LEX", "PREP", 0), dis_area("PREPP", 0)};
    detail::close_fibers(ofp.post, prep_guards, 1);
    detail::open_fibers(ofp.post, prepp_doors, 1);
    for (const Command& c : det_route) ofp.post.push_back(c);
    ofp.post.push_back(inh_area("VERB", 0));
    g.classes.push_back(std::move(ofp));
  }
  {
    // second preposition of a chain: it parks in PREPC and its noun lands in
    // COMP1, attached to the previous phrase noun instead of the verb; the
    // PREPP doors stay reserved so the finished phrase is left alone
    WordClass chain;
    chain.name = "PREP_CHAIN";
    chain.pre = {dis_area("PREPC", 0), dis_fiber("LEX", "PREPC", 0)};
    chain.post = {inh_fiber("LEX", "PREPC", 0), dis_area("COMP1", 0)};
    detail::close_fibers(chain.post, prep_guards, 1);
    for (const Command& c : det_route) chain.post.push_back(c);
    g.classes.push_back(std::move(chain));
  }

  auto add_words = [&](std::initializer_list<const char*> ws, const char* cls) {
    for (const char* w : ws) g.lexicon.push_back({w, cls});
  };
  add_words({"dog", "dogs", "cat", "cats", "man", "men", "woman", "women",
             "child", "children", "bird", "birds", "people", "school", "park",
             "house", "tree", "ball", "car", "city", "river", "teacher",
             "student", "doctor", "farmer", "king", "queen", "problem",
             "dinner", "salad", "tuna", "taste", "backpack"},
            "NOUN");
  add_words({"he", "she", "it", "they", "we", "you"}, "NOUN");
  add_words({"saw", "chased", "found", "loved", "liked", "helped", "carried",
             "followed", "watched", "caught", "had", "ate"},
            "VERB_TRANS");
  add_words({"ran", "slept", "jumped", "lived", "died", "walked", "smiled",
             "fell", "went", "swam"},
            "VERB_INTRANS");
  add_words({"is", "are", "was", "were"}, "COPULA");
  add_words({"the", "a", "my", "some"}, "DET");
  add_words({"big", "small", "red", "blue", "old", "young", "happy", "sad",
             "scary", "quick", "tall", "green"},
            "ADJ");
  add_words({"bad", "ugly", "fierce"}, "ADJ_CHAIN");
  add_words({"quickly", "slowly", "happily", "sadly", "quietly", "loudly",
             "gently", "badly"},
            "ADV");
  add_words({"to", "in", "at", "on"}, "PREP");
  add_words({"of"}, "PREP_OF");
  add_words({"with", "near"}, "PREP_CHAIN");
  return g;
}

inline GrammarModel russian_reference_grammar() {
  GrammarModel g;
  g.name = "russian";
  g.lex_area = "LEX";
  g.root_area = "VERB";

  auto area = [&](const char* name) {
    AreaSpec a;
    a.name = name;
    g.areas.push_back(std::move(a));
  };
  area("LEX");
  g.areas.back().explicit_area = true;
  for (const char* a : {"VERB", "NOM", "DAT", "ACC"}) area(a);
  for (const char* a : {"VERB", "NOM", "DAT", "ACC"})
    g.fibers.push_back({"LEX", a, true});
  for (const char* c : {"NOM", "DAT", "ACC"}) g.fibers.push_back({"VERB", c, true});

  g.initial = {dis_area("LEX", 0)};

  auto noun_class = [&](const char* name, const char* area) {
    WordClass c;
    c.name = name;
    c.pre = {dis_area(area, 0), dis_fiber("LEX", area, 0),
             dis_fiber("VERB", area, 0)};
    c.post = {inh_fiber("LEX", area, 0)};
    g.classes.push_back(std::move(c));
  };
  noun_class("NOUN_NOM", "NOM");
  noun_class("NOUN_DAT", "DAT");
  noun_class("NOUN_ACC", "ACC");
  {
    WordClass v;
    v.name = "VERB";
    v.pre = {dis_area("VERB", 0), dis_fiber("LEX", "VERB", 0),
             dis_fiber("VERB", "NOM", 0), dis_fiber("VERB", "DAT", 0),
             dis_fiber("VERB", "ACC", 0)};
    v.post = {inh_fiber("LEX", "VERB", 0)};
    g.classes.push_back(std::move(v));
  }

  auto add = [&](std::initializer_list<const char*> ws, const char* cls) {
    for (const char* w : ws) g.lexicon.push_back({w, cls});
  };
  add({"женщина", "мужчина", "девочка"}, "NOUN_NOM");
  add({"мужчине", "женщине", "девочке"}, "NOUN_DAT");
  add({"сумку", "книгу", "собаку"}, "NOUN_ACC");
  add({"дала", "видела"}, "VERB");
  return g;
}

inline GrammarModel builtin_grammar(std::string_view name) {
  if (name == "english") return english_reference_grammar();
  if (name == "russian") return russian_reference_grammar();
  throw GrammarError("unknown builtin grammar: " + std::string(name));
}

}  // namespace ac
