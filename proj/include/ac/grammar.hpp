#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ac/brain.hpp"
#include "ac/types.hpp"

namespace ac {

struct GrammarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AreaSpec {
  std::string name;
  std::string label;  // dependency label emitted at readout; empty = the area name
  bool explicit_area = false;
  std::uint32_t n = 0;  // 0 = derive (config n, or vocab * k for the lexicon area)
  std::uint32_t k = 0;  // 0 = config k

  const std::string& readout_label() const { return label.empty() ? name : label; }

  bool operator==(const AreaSpec&) const = default;
};

struct FiberSpec {
  std::string a, b;
  bool reciprocal = true;

  bool operator==(const FiberSpec&) const = default;
};

// Per word-class command bundles, run around the firing rounds of each word.
struct WordClass {
  std::string name;
  std::vector<Command> pre;
  std::vector<Command> post;

  bool operator==(const WordClass&) const = default;
};

struct LexEntry {
  std::string word;
  std::string cls;

  bool operator==(const LexEntry&) const = default;
};

struct GrammarModel {
  std::string name;
  std::string lex_area = "LEX";
  std::string root_area = "VERB";
  std::vector<AreaSpec> areas;
  std::vector<FiberSpec> fibers;
  std::vector<Command> initial;
  std::vector<WordClass> classes;
  std::vector<LexEntry> lexicon;  // order fixes the word -> assembly mapping

  bool operator==(const GrammarModel&) const = default;

  const WordClass* find_class(std::string_view n) const {
    for (const auto& c : classes)
      if (c.name == n) return &c;
    return nullptr;
  }

  // word -> lexicon index, or -1
  std::int64_t word_index(std::string_view w) const {
    for (std::size_t i = 0; i < lexicon.size(); ++i)
      if (lexicon[i].word == w) return static_cast<std::int64_t>(i);
    return -1;
  }
};

// ~~~~ validation ~~~~

inline std::vector<std::string> validate(const GrammarModel& g) {
  std::vector<std::string> bad;
  auto complain = [&](std::string msg) { bad.push_back(std::move(msg)); };

  if (g.name.empty()) complain("grammar has no name");
  std::set<std::string> area_names;
  for (const auto& a : g.areas) {
    if (a.name.empty()) complain("area with empty name");
    if (!area_names.insert(a.name).second) complain("duplicate area: " + a.name);
    if (a.k > 0 && a.n > 0 && a.k > a.n) complain("area " + a.name + ": k > n");
  }
  auto has_area = [&](const std::string& n) { return area_names.count(n) > 0; };

  if (!has_area(g.lex_area)) {
    complain("lexicon area missing: " + g.lex_area);
  } else {
    for (const auto& a : g.areas)
      if (a.name == g.lex_area && !a.explicit_area)
        complain("lexicon area must be explicit: " + g.lex_area);
  }
  if (!has_area(g.root_area)) complain("readout root area missing: " + g.root_area);

  std::set<std::pair<std::string, std::string>> fiber_pairs;
  for (const auto& f : g.fibers) {
    if (!has_area(f.a)) complain("fiber endpoint unknown: " + f.a);
    if (!has_area(f.b)) complain("fiber endpoint unknown: " + f.b);
    if (f.a == f.b) complain("fiber endpoints equal: " + f.a);
    auto key = std::minmax(f.a, f.b);
    if (!fiber_pairs.insert({key.first, key.second}).second)
      complain("duplicate fiber: " + f.a + "-" + f.b);
  }
  auto has_fiber = [&](const std::string& x, const std::string& y) {
    auto key = std::minmax(x, y);
    return fiber_pairs.count({key.first, key.second}) > 0;
  };

  auto check_cmds = [&](const std::vector<Command>& cmds, const std::string& where) {
    for (const auto& c : cmds) {
      if (c.on_fiber) {
        if (!has_area(c.a) || !has_area(c.b))
          complain(where + ": fiber command on unknown area " + c.a + "-" + c.b);
        else if (!has_fiber(c.a, c.b))
          complain(where + ": fiber command on missing fiber " + c.a + "-" + c.b);
      } else if (!has_area(c.a)) {
        complain(where + ": area command on unknown area " + c.a);
      }
    }
  };
  check_cmds(g.initial, "initial");

  std::set<std::string> class_names;
  for (const auto& c : g.classes) {
    if (c.name.empty()) complain("word class with empty name");
    if (!class_names.insert(c.name).second) complain("duplicate class: " + c.name);
    check_cmds(c.pre, "class " + c.name + " pre");
    check_cmds(c.post, "class " + c.name + " post");
  }

  if (g.lexicon.empty()) complain("empty lexicon");
  std::set<std::string> words;
  for (const auto& e : g.lexicon) {
    if (e.word.empty()) complain("empty word in lexicon");
    if (!words.insert(e.word).second) complain("duplicate word: " + e.word);
    if (!class_names.count(e.cls))
      complain("word '" + e.word + "' has unknown class: " + e.cls);
  }
  return bad;
}

// ~~~~ brain construction ~~~~

inline Brain build_brain(const GrammarModel& g, const BrainConfig& cfg) {
  auto bad = validate(g);
  if (!bad.empty()) throw GrammarError("invalid grammar: " + bad.front());
  Brain br(cfg);
  for (const auto& a : g.areas) {
    std::uint32_t k = a.k ? a.k : cfg.k;
    std::uint32_t n = a.n;
    if (n == 0)
      n = a.name == g.lex_area
              ? static_cast<std::uint32_t>(g.lexicon.size()) * k
              : cfg.n;
    br.add_area(a.name, n, k, a.explicit_area);
  }
  for (const auto& f : g.fibers) br.add_fiber(f.a, f.b, f.reciprocal);
  br.build();
  return br;
}

// ~~~~ JSON ~~~~

inline nlohmann::json command_to_json(const Command& c) {
  nlohmann::json j;
  j["op"] = c.op == Op::Inhibit ? "inh" : "dis";
  if (c.on_fiber)
    j["fiber"] = {c.a, c.b};
  else
    j["area"] = c.a;
  j["pop"] = c.pop;
  return j;
}

inline Command command_from_json(const nlohmann::json& j) {
  Command c;
  const std::string op = j.at("op").get<std::string>();
  if (op == "inh")
    c.op = Op::Inhibit;
  else if (op == "dis")
    c.op = Op::Disinhibit;
  else
    throw GrammarError("bad command op: " + op);
  if (j.contains("fiber")) {
    c.on_fiber = true;
    c.a = j.at("fiber").at(0).get<std::string>();
    c.b = j.at("fiber").at(1).get<std::string>();
  } else {
    c.on_fiber = false;
    c.a = j.at("area").get<std::string>();
  }
  c.pop = j.value("pop", 0u);
  return c;
}

inline nlohmann::json grammar_to_json(const GrammarModel& g) {
  nlohmann::json j;
  j["name"] = g.name;
  j["lex_area"] = g.lex_area;
  j["root_area"] = g.root_area;
  j["areas"] = nlohmann::json::array();
  for (const auto& a : g.areas) {
    nlohmann::json ja;
    ja["name"] = a.name;
    if (!a.label.empty() && a.label != a.name) ja["label"] = a.label;
    if (a.explicit_area) ja["explicit"] = true;
    if (a.n) ja["n"] = a.n;
    if (a.k) ja["k"] = a.k;
    j["areas"].push_back(ja);
  }
  j["fibers"] = nlohmann::json::array();
  for (const auto& f : g.fibers) {
    nlohmann::json jf;
    jf["between"] = {f.a, f.b};
    if (!f.reciprocal) jf["reciprocal"] = false;
    j["fibers"].push_back(jf);
  }
  j["initial"] = nlohmann::json::array();
  for (const auto& c : g.initial) j["initial"].push_back(command_to_json(c));
  j["classes"] = nlohmann::json::array();
  for (const auto& c : g.classes) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["pre"] = nlohmann::json::array();
    for (const auto& cmd : c.pre) jc["pre"].push_back(command_to_json(cmd));
    jc["post"] = nlohmann::json::array();
    for (const auto& cmd : c.post) jc["post"].push_back(command_to_json(cmd));
    j["classes"].push_back(jc);
  }
  j["lexicon"] = nlohmann::json::array();
  for (const auto& e : g.lexicon)
    j["lexicon"].push_back({{"word", e.word}, {"class", e.cls}});
  return j;
}

inline GrammarModel grammar_from_json(const nlohmann::json& j) {
  try {
    GrammarModel g;
    g.name = j.at("name").get<std::string>();
    g.lex_area = j.value("lex_area", "LEX");
    g.root_area = j.value("root_area", "VERB");
    for (const auto& ja : j.at("areas")) {
      AreaSpec a;
      a.name = ja.at("name").get<std::string>();
      a.label = ja.value("label", std::string{});
      a.explicit_area = ja.value("explicit", false);
      a.n = ja.value("n", 0u);
      a.k = ja.value("k", 0u);
      g.areas.push_back(std::move(a));
    }
    for (const auto& jf : j.at("fibers")) {
      FiberSpec f;
      f.a = jf.at("between").at(0).get<std::string>();
      f.b = jf.at("between").at(1).get<std::string>();
      f.reciprocal = jf.value("reciprocal", true);
      g.fibers.push_back(std::move(f));
    }
    if (j.contains("initial"))
      for (const auto& jc : j.at("initial")) g.initial.push_back(command_from_json(jc));
    for (const auto& jc : j.at("classes")) {
      WordClass c;
      c.name = jc.at("name").get<std::string>();
      if (jc.contains("pre"))
        for (const auto& cmd : jc.at("pre")) c.pre.push_back(command_from_json(cmd));
      if (jc.contains("post"))
        for (const auto& cmd : jc.at("post")) c.post.push_back(command_from_json(cmd));
      g.classes.push_back(std::move(c));
    }
    for (const auto& je : j.at("lexicon"))
      g.lexicon.push_back({je.at("word").get<std::string>(),
                           je.at("class").get<std::string>()});
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw GrammarError(std::string("malformed grammar json: ") + e.what());
  }
}

inline GrammarModel load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GrammarError("cannot open grammar file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw GrammarError(std::string("grammar parse error: ") + e.what());
  }
  return grammar_from_json(j);
}

inline void save_grammar(const GrammarModel& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GrammarError("cannot write grammar file: " + path);
  out << grammar_to_json(g).dump(2) << '\n';
}

}  // namespace ac
