#pragma once

// Evaluation harness: exact-match scoring against gold dependency sets,
// project* convergence accounting, the word-order invariance check, and the
// fixed error suite.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ac/corpus.hpp"
#include "ac/parser.hpp"

namespace ac {

inline std::multiset<std::string> dep_keys(const std::vector<Dependency>& ds) {
  std::multiset<std::string> keys;
  for (const Dependency& d : ds)
    keys.insert(d.head + "|" + d.label + "|" + d.dependent);
  return keys;
}

struct SentenceOutcome {
  std::string sentence;
  bool parsed = false;
  bool exact = false;
  std::string root;
  std::vector<Dependency> deps;
  std::string error;
  double ms = 0.0;
  std::size_t words = 0;
  std::size_t converged_words = 0;
  std::uint64_t steps = 0;
  std::uint64_t commands = 0;
  std::uint64_t max_word_commands = 0;
};

struct EvalReport {
  std::size_t total = 0;
  std::size_t parsed = 0;
  std::size_t exact = 0;
  std::size_t project_calls = 0;
  std::size_t project_converged = 0;
  std::uint64_t commands = 0;
  std::uint64_t max_commands_per_word = 0;
  double total_ms = 0.0;
  std::vector<SentenceOutcome> sentences;

  double exact_rate() const { return total ? double(exact) / total : 0.0; }
  double convergence_rate() const {
    return project_calls ? double(project_converged) / project_calls : 0.0;
  }
};

inline SentenceOutcome evaluate_sentence(ParserRuntime& rt, const GoldParse& g) {
  SentenceOutcome o;
  o.sentence = sentence_text(g);
  o.words = g.words.size();
  const auto t0 = std::chrono::steady_clock::now();
  ParseOutcome out = rt.parse(g.words);
  o.ms = std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
             .count();
  if (!ok(out)) {
    const ParseError& e = error(out);
    o.error = std::string(to_string(e.kind));
    if (e.word_index == 0)
      o.error += " at readout";
    else
      o.error += " at word " + std::to_string(e.word_index) + " '" + e.word + "'";
    return o;
  }
  const ParseResult& r = result(out);
  o.parsed = true;
  o.root = r.root;
  o.deps = r.deps;
  o.exact = dep_keys(r.deps) == dep_keys(g.deps);
  o.steps = r.steps;
  o.commands = r.commands;
  for (std::uint64_t c : r.commands_per_word)
    o.max_word_commands = std::max(o.max_word_commands, c);
  for (const ProjectReport& rep : r.reports)
    if (rep.all_converged()) ++o.converged_words;
  return o;
}

inline EvalReport evaluate(ParserRuntime& rt, const std::vector<GoldParse>& corpus,
                           bool keep_outcomes = true) {
  EvalReport rep;
  for (const GoldParse& g : corpus) {
    SentenceOutcome o = evaluate_sentence(rt, g);
    rep.total += 1;
    rep.parsed += o.parsed;
    rep.exact += o.exact;
    rep.project_calls += o.words;
    rep.project_converged += o.converged_words;
    rep.commands += o.commands;
    rep.max_commands_per_word =
        std::max(rep.max_commands_per_word, o.max_word_commands);
    rep.total_ms += o.ms;
    if (keep_outcomes) rep.sentences.push_back(std::move(o));
  }
  return rep;
}

inline nlohmann::json to_json(const EvalReport& rep) {
  nlohmann::json j;
  j["total"] = rep.total;
  j["parsed"] = rep.parsed;
  j["exact"] = rep.exact;
  j["exact_rate"] = rep.exact_rate();
  j["project_calls"] = rep.project_calls;
  j["project_converged"] = rep.project_converged;
  j["convergence_rate"] = rep.convergence_rate();
  j["total_ms"] = rep.total_ms;
  j["sentences"] = nlohmann::json::array();
  for (const SentenceOutcome& o : rep.sentences) {
    nlohmann::json js;
    js["sentence"] = o.sentence;
    js["parsed"] = o.parsed;
    js["exact"] = o.exact;
    js["ms"] = o.ms;
    if (o.parsed) {
      js["root"] = o.root;
      js["deps"] = nlohmann::json::array();
      for (const Dependency& d : o.deps)
        js["deps"].push_back({{"head", d.head},
                              {"label", d.label},
                              {"dependent", d.dependent}});
    } else {
      js["error"] = o.error;
    }
    j["sentences"].push_back(std::move(js));
  }
  return j;
}

// word-order invariance: every ordering must produce the same dependency set
// distribution of settling times: one entry per project* call, at the round
// where the last participating area stabilized
struct ConvergenceStats {
  std::size_t calls = 0;
  std::size_t converged = 0;
  std::vector<std::size_t> by_round;       // index = 1-based settling round
  std::vector<std::string> stragglers;     // sentences with unconverged calls
  std::size_t unparsed = 0;

  double rate() const { return calls ? double(converged) / calls : 0.0; }
};

inline ConvergenceStats convergence_stats(ParserRuntime& rt,
                                          const std::vector<GoldParse>& corpus) {
  ConvergenceStats st;
  st.by_round.assign(rt.config().rounds + 1, 0);
  for (const GoldParse& g : corpus) {
    ParseOutcome out = rt.parse(g.words);
    if (!ok(out)) {
      ++st.unparsed;
      continue;
    }
    bool flagged = false;
    for (const ProjectReport& rep : result(out).reports) {
      ++st.calls;
      if (!rep.all_converged()) {
        flagged = true;
        continue;
      }
      ++st.converged;
      std::uint32_t settle = 0;
      for (const AreaStability& a : rep.areas)
        settle = std::max(settle, a.first_converged_round + 1);
      if (settle < st.by_round.size()) ++st.by_round[settle];
    }
    if (flagged) st.stragglers.push_back(sentence_text(g));
  }
  return st;
}

struct PermutationReport {
  std::size_t total = 0;
  std::size_t matched = 0;
  std::vector<std::string> failures;
};

inline PermutationReport permutation_test(ParserRuntime& rt,
                                          const std::vector<std::vector<std::string>>& orders,
                                          const std::vector<Dependency>& gold) {
  PermutationReport rep;
  const auto want = dep_keys(gold);
  for (const auto& words : orders) {
    rep.total += 1;
    ParseOutcome out = rt.parse(words);
    std::string sent;
    for (const auto& w : words) sent += w + " ";
    if (!ok(out)) {
      rep.failures.push_back(sent + "-> " + to_string(error(out).kind));
      continue;
    }
    if (dep_keys(result(out).deps) == want)
      rep.matched += 1;
    else
      rep.failures.push_back(sent + "-> wrong dependency set");
  }
  return rep;
}

// fixed error suite: sentence, expected kind, expected 1-based word index
// (0 = detected at readout)
struct ErrorCase {
  std::string sentence;
  ParseErrorKind kind;
  std::size_t word_index;
};

inline std::vector<ErrorCase> english_error_suite() {
  return {
      {"the dogs lived cats", ParseErrorKind::EmptyProject, 4},
      {"died dogs", ParseErrorKind::EmptyProject, 2},
      {"dogs died cats", ParseErrorKind::EmptyProject, 3},
      {"dogs chased saw", ParseErrorKind::NonsenseAssembly, 0},
      {"dogs are is", ParseErrorKind::NonsenseAssembly, 0},
      {"the glorple ran", ParseErrorKind::UnknownWord, 2},
  };
}

struct ErrorSuiteReport {
  std::size_t total = 0;
  std::size_t matched = 0;
  std::vector<std::string> failures;
};

inline ErrorSuiteReport run_error_suite(ParserRuntime& rt,
                                        const std::vector<ErrorCase>& cases) {
  ErrorSuiteReport rep;
  for (const ErrorCase& c : cases) {
    rep.total += 1;
    ParseOutcome out = rt.parse(split_words(c.sentence));
    if (ok(out)) {
      rep.failures.push_back(c.sentence + " -> parsed but expected " +
                             to_string(c.kind));
      continue;
    }
    const ParseError& e = error(out);
    if (e.kind == c.kind && e.word_index == c.word_index)
      rep.matched += 1;
    else
      rep.failures.push_back(c.sentence + " -> " + to_string(e.kind) +
                             " at " + std::to_string(e.word_index) +
                             ", expected " + to_string(c.kind) + " at " +
                             std::to_string(c.word_index));
  }
  return rep;
}

}  // namespace ac
