#pragma once

// Incremental parser: each word applies its pre commands, drives its LEX
// assembly through `rounds` firing steps, then applies its post commands.
// The dependency tree is recovered afterwards by pure synapse measurements;
// the readout never fires the brain and never changes a weight.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "ac/brain.hpp"
#include "ac/grammar.hpp"

namespace ac {

struct ParseResult {
  std::vector<std::string> words;
  std::string root;  // empty when no root assembly ever formed
  std::vector<Dependency> deps;
  std::vector<ProjectReport> reports;  // one per word
  std::vector<std::uint32_t> commands_per_word;
  std::uint64_t steps = 0;     // firing rounds executed
  std::uint64_t commands = 0;  // inhibit/disinhibit/activate ops applied
};

// structured per-word record for trace export: the commands around one
// projection and the winner sets after every round
struct WordTrace {
  std::string word;
  std::string cls;
  std::vector<std::string> pre;   // commands applied before the projection
  std::vector<std::string> post;  // commands applied after it
  // rounds[t] = winner indices per computed area after round t+1
  std::vector<std::vector<std::pair<std::string, std::vector<NeuronId>>>> rounds;
  bool converged = false;
};

using ParseOutcome = std::variant<ParseResult, ParseError>;

inline bool ok(const ParseOutcome& o) {
  return std::holds_alternative<ParseResult>(o);
}
inline const ParseResult& result(const ParseOutcome& o) {
  return std::get<ParseResult>(o);
}
inline const ParseError& error(const ParseOutcome& o) {
  return std::get<ParseError>(o);
}

class ParserRuntime {
 public:
  explicit ParserRuntime(GrammarModel grammar, BrainConfig cfg = {})
      : grammar_(validated(std::move(grammar))),
        cfg_(cfg),
        brain_(build_brain(grammar_, cfg)) {
    lex_idx_ = brain_.area_index(grammar_.lex_area);
    root_idx_ = brain_.area_index(grammar_.root_area);
    for (std::uint32_t i = 0; i < grammar_.lexicon.size(); ++i) {
      const LexEntry& e = grammar_.lexicon[i];
      index_.emplace(e.word, Entry{i, grammar_.find_class(e.cls)});
    }
  }

  const GrammarModel& grammar() const { return grammar_; }
  const BrainConfig& config() const { return cfg_; }
  Brain& brain() { return brain_; }
  const Brain& brain() const { return brain_; }

  // line-based trace of commands, rounds and readout decisions
  void set_trace(std::function<void(const std::string&)> fn) {
    trace_ = std::move(fn);
  }

  // structured sink, called once per word with the full WordTrace record
  void set_word_trace(std::function<void(const WordTrace&)> fn) {
    word_trace_ = std::move(fn);
  }

  ParseOutcome parse(const std::vector<std::string>& words) {
    brain_.reset_learning();
    ParseResult res;
    res.words = words;
    const std::uint64_t step_base = brain_.steps_executed();
    for (const Command& c : grammar_.initial) apply_command(c, res);

    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::size_t wi = i + 1;
      const auto it = index_.find(words[i]);
      if (it == index_.end())
        return ParseError{ParseErrorKind::UnknownWord, wi, words[i],
                          "word is not in the lexicon"};
      const Entry& entry = it->second;
      trace("word " + std::to_string(wi) + " '" + words[i] + "' [" +
            entry.cls->name + "]");

      const std::uint64_t cmd_base = res.commands;
      WordTrace wt;
      if (word_trace_) {
        wt.word = words[i];
        wt.cls = entry.cls->name;
      }
      for (const Command& c : entry.cls->pre) {
        apply_command(c, res);
        if (word_trace_) wt.pre.push_back(to_string(c));
      }
      brain_.activate(grammar_.lex_area, entry.lex_index);
      ++res.commands;

      if (!has_projection_target())
        return ParseError{ParseErrorKind::EmptyProject, wi, words[i],
                          "no open path from " + grammar_.lex_area +
                              " into a disinhibited area"};

      ProjectReport rep =
          word_trace_ ? brain_.project_rounds(cfg_.rounds,
                                              [&](std::uint32_t) {
                                                wt.rounds.push_back(
                                                    snapshot_caps());
                                              })
                      : brain_.project_rounds(cfg_.rounds);
      if (trace_) trace(describe(rep));
      if (word_trace_) wt.converged = rep.all_converged();
      res.reports.push_back(std::move(rep));

      for (const Command& c : entry.cls->post) {
        apply_command(c, res);
        if (word_trace_) wt.post.push_back(to_string(c));
      }
      res.commands_per_word.push_back(
          static_cast<std::uint32_t>(res.commands - cmd_base));
      if (word_trace_) word_trace_(wt);
    }

    res.steps = brain_.steps_executed() - step_base;
    return read_out(std::move(res));
  }

  // --- pure measurements -------------------------------------------------

  // word whose LEX block captures the projection of `cap`; nullopt when no
  // block reaches the stability share of the LEX winners
  std::optional<std::uint32_t> lex_word(AreaIdx from,
                                        const std::vector<NeuronId>& cap) const {
    if (!brain_.bundle(from, lex_idx_)) return std::nullopt;
    const std::vector<NeuronId> lex_cap =
        brain_.cap_from_input(lex_idx_, from, cap);
    const std::uint32_t k = brain_.area(lex_idx_).k;
    std::vector<std::uint32_t> hits(grammar_.lexicon.size(), 0);
    for (NeuronId n : lex_cap) {
      const std::uint32_t block = n / k;
      if (block < hits.size()) ++hits[block];
    }
    const std::uint32_t want = need(lex_idx_);
    for (std::uint32_t b = 0; b < hits.size(); ++b)
      if (hits[b] >= want) return b;  // want > k/2, so at most one block
    return std::nullopt;
  }

  struct Retrieved {
    std::vector<NeuronId> cap;
    std::uint32_t word;
  };

  // reciprocal-projection test: the retrieved assembly must be stable under
  // one round of its own recurrent feedback and must read out to one word
  std::optional<Retrieved> try_project(AreaIdx from,
                                       const std::vector<NeuronId>& cap,
                                       AreaIdx to) const {
    if (!brain_.bundle(from, to)) return std::nullopt;
    std::vector<NeuronId> c1 = brain_.cap_from_input(to, from, cap);
    const std::uint32_t want = need(to);
    if (c1.size() < want) return std::nullopt;
    const std::array<SourceCap, 2> srcs{{{from, &cap}, {to, &c1}}};
    std::vector<NeuronId> c2 =
        brain_.cap_from_input(to, std::span<const SourceCap>(srcs));
    if (Brain::count_overlap(c1, c2) < want) return std::nullopt;
    const auto w = lex_word(to, c2);
    if (!w) return std::nullopt;
    return Retrieved{std::move(c2), *w};
  }

 private:
  struct Entry {
    std::uint32_t lex_index;
    const WordClass* cls;
  };

  static GrammarModel validated(GrammarModel g) {
    const auto issues = validate(g);
    if (!issues.empty()) throw GrammarError(issues.front());
    return g;
  }

  void trace(const std::string& msg) const {
    if (trace_) trace_(msg);
  }

  std::vector<std::pair<std::string, std::vector<NeuronId>>> snapshot_caps()
      const {
    std::vector<std::pair<std::string, std::vector<NeuronId>>> out;
    for (AreaIdx a = 0; a < brain_.num_areas(); ++a) {
      const Area& ar = brain_.area(a);
      if (ar.explicit_area || !ar.disinhibited() || ar.cap.empty()) continue;
      out.emplace_back(ar.name, ar.cap);
    }
    return out;
  }

  void apply_command(const Command& c, ParseResult& res) {
    brain_.apply(c);
    ++res.commands;
    if (trace_) trace("  " + to_string(c));
  }

  std::uint32_t need(AreaIdx a) const {
    return static_cast<std::uint32_t>(
        std::ceil(cfg_.stability * brain_.area(a).k));
  }

  // a word can only land somewhere if some disinhibited area has an open
  // fiber from the lexicon
  bool has_projection_target() const {
    for (AreaIdx b = 0; b < brain_.num_areas(); ++b) {
      if (b == lex_idx_) continue;
      if (!brain_.area(b).disinhibited()) continue;
      const Fiber* f = brain_.fiber_between(lex_idx_, b);
      if (f && f->disinhibited()) return true;
    }
    return false;
  }

  static std::string describe(const ProjectReport& rep) {
    std::string s = "  rounds=" + std::to_string(rep.rounds);
    for (const AreaStability& a : rep.areas) {
      s += ' ' + a.area + (a.converged ? "@" : "!@") +
           std::to_string(a.first_converged_round);
    }
    return s;
  }

  ParseOutcome read_out(ParseResult res) const {
    const std::vector<NeuronId>& root_cap = brain_.area(root_idx_).cap;
    if (root_cap.empty()) return res;  // nothing projected into the root area

    const auto root_word = lex_word(root_idx_, root_cap);
    if (!root_word)
      return ParseError{ParseErrorKind::NonsenseAssembly, 0, "",
                        "root assembly does not read out to a single word"};
    res.root = grammar_.lexicon[*root_word].word;
    trace("readout root '" + res.root + "'");

    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < res.words.size(); ++i)
      pos.emplace(res.words[i], i);
    const auto pos_of = [&](const std::string& w) {
      const auto it = pos.find(w);
      return it == pos.end() ? res.words.size() : it->second;
    };

    struct Node {
      AreaIdx area;
      AreaIdx parent;
      std::vector<NeuronId> cap;
      std::string word;
    };
    std::deque<Node> queue;
    std::set<std::pair<AreaIdx, std::vector<NeuronId>>> visited;
    queue.push_back({root_idx_, kNoArea, root_cap, res.root});
    visited.insert({root_idx_, root_cap});

    while (!queue.empty()) {
      Node nd = std::move(queue.front());
      queue.pop_front();
      std::vector<Node> kids;
      for (AreaIdx b = 0; b < brain_.num_areas(); ++b) {
        if (b == lex_idx_ || b == nd.area || b == nd.parent) continue;
        auto r = try_project(nd.area, nd.cap, b);
        if (!r) continue;
        if (visited.count({b, r->cap})) continue;
        kids.push_back(
            {b, nd.area, std::move(r->cap), grammar_.lexicon[r->word].word});
      }
      std::stable_sort(kids.begin(), kids.end(),
                       [&](const Node& x, const Node& y) {
                         return pos_of(x.word) < pos_of(y.word);
                       });
      for (Node& kid : kids) {
        visited.insert({kid.area, kid.cap});
        const std::string& label = grammar_.areas[kid.area].readout_label();
        res.deps.push_back({nd.word, label, kid.word});
        trace("readout " + nd.word + " -" + label + "-> " + kid.word);
        queue.push_back(std::move(kid));
      }
    }
    return res;
  }

  GrammarModel grammar_;
  BrainConfig cfg_;
  Brain brain_;
  AreaIdx lex_idx_ = 0;
  AreaIdx root_idx_ = 0;
  std::unordered_map<std::string, Entry> index_;
  std::function<void(const std::string&)> trace_;
  std::function<void(const WordTrace&)> word_trace_;
};

}  // namespace ac
