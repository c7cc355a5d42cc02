// acp — assembly-calculus parser tools
//
// Subcommands:
//   parse     parse one sentence and print its dependencies
//   corpus    evaluate a corpus file or a builtin corpus
//   validate  check a grammar file and print diagnostics
//   bench     convergence statistics over a corpus
//
// Exit codes: 0 success, 2 usage, 10 empty-project, 11 nonsense-assembly,
// 12 corpus threshold unmet. Every flag can also be set through the
// environment with the ACP_ prefix (ACP_GRAMMAR, ACP_N, ...).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ac/corpus.hpp"
#include "ac/eval.hpp"
#include "ac/grammars.hpp"
#include "ac/parser.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitEmptyProject = 10;
constexpr int kExitNonsense = 11;
constexpr int kExitThreshold = 12;

struct RunConfig {
  std::string grammar = "english";
  ac::BrainConfig cfg;
  std::string format = "text";
  std::string trace_path;
  double threshold = 1.0;
};

void add_common(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--grammar", rc.grammar,
                  "builtin grammar (english|russian) or a .grammar file")
      ->envname("ACP_GRAMMAR");
  sub->add_option("--n", rc.cfg.n, "neurons per area")->envname("ACP_N");
  sub->add_option("--k", rc.cfg.k, "assembly size")->envname("ACP_K");
  sub->add_option("--p", rc.cfg.p, "synapse probability")->envname("ACP_P");
  sub->add_option("--beta", rc.cfg.beta, "plasticity increment")
      ->envname("ACP_BETA");
  sub->add_option("--rounds", rc.cfg.rounds, "firing rounds per word")
      ->envname("ACP_ROUNDS");
  sub->add_option("--seed", rc.cfg.seed, "connectome seed")->envname("ACP_SEED");
  sub->add_option("--format", rc.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->envname("ACP_FORMAT");
  sub->add_option("--trace", rc.trace_path, "write a per-word JSON trace file")
      ->envname("ACP_TRACE");
  sub->add_option("--threshold", rc.threshold,
                  "exact-match rate required for exit 0")
      ->envname("ACP_THRESHOLD");
}

ac::GrammarModel load_model(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path))
    return ac::load_grammar(name_or_path);
  return ac::builtin_grammar(name_or_path);
}

nlohmann::json trace_json(const ac::WordTrace& t) {
  nlohmann::json j;
  j["word"] = t.word;
  j["class"] = t.cls;
  j["pre"] = t.pre;
  j["post"] = t.post;
  j["converged"] = t.converged;
  j["rounds"] = nlohmann::json::array();
  for (const auto& round : t.rounds) {
    nlohmann::json jr = nlohmann::json::object();
    for (const auto& [area, cap] : round) jr[area] = cap;
    j["rounds"].push_back(std::move(jr));
  }
  return j;
}

void print_dot(const ac::ParseResult& r) {
  std::cout << "digraph parse {\n  rankdir=TB;\n"
            << "  node [shape=ellipse];\n";
  if (!r.root.empty())
    std::cout << "  \"" << r.root << "\" [shape=box];\n";
  for (const ac::Dependency& d : r.deps)
    std::cout << "  \"" << d.head << "\" -> \"" << d.dependent
              << "\" [label=\"" << d.label << "\"];\n";
  std::cout << "}\n";
}

int cmd_parse(const std::string& sentence, const RunConfig& rc) {
  const std::vector<std::string> words = ac::split_words(sentence);
  if (words.empty()) {
    std::cerr << "usage error: empty sentence\n";
    return kExitUsage;
  }

  ac::ParserRuntime rt(load_model(rc.grammar), rc.cfg);
  nlohmann::json trace = nlohmann::json::array();
  if (!rc.trace_path.empty())
    rt.set_word_trace(
        [&](const ac::WordTrace& t) { trace.push_back(trace_json(t)); });

  ac::ParseOutcome out = rt.parse(words);

  if (!rc.trace_path.empty()) {
    std::ofstream f(rc.trace_path);
    if (!f) {
      std::cerr << "error: cannot write trace file " << rc.trace_path << "\n";
      return kExitUsage;
    }
    f << trace.dump(1) << "\n";
  }

  if (!ok(out)) {
    const ac::ParseError& e = error(out);
    switch (e.kind) {
      case ac::ParseErrorKind::UnknownWord:
        std::cerr << "usage error: unknown word '" << e.word << "' at word "
                  << e.word_index << "\n";
        return kExitUsage;
      case ac::ParseErrorKind::EmptyProject:
        std::cerr << "error: empty-project at word " << e.word_index << " ('"
                  << e.word << "'): " << e.detail << "\n";
        return kExitEmptyProject;
      case ac::ParseErrorKind::NonsenseAssembly:
        if (e.word_index == 0)
          std::cerr << "error: nonsense-assembly at readout: " << e.detail
                    << "\n";
        else
          std::cerr << "error: nonsense-assembly at word " << e.word_index
                    << ": " << e.detail << "\n";
        return kExitNonsense;
    }
    return kExitNonsense;
  }

  const ac::ParseResult& r = result(out);
  if (rc.format == "json") {
    nlohmann::json j;
    j["sentence"] = sentence;
    j["root"] = r.root;
    j["deps"] = nlohmann::json::array();
    for (const ac::Dependency& d : r.deps)
      j["deps"].push_back(
          {{"head", d.head}, {"label", d.label}, {"dependent", d.dependent}});
    j["steps"] = r.steps;
    j["commands"] = r.commands;
    bool conv = true;
    for (const ac::ProjectReport& rep : r.reports)
      conv = conv && rep.all_converged();
    j["converged"] = conv;
    std::cout << j.dump(2) << "\n";
  } else if (rc.format == "dot") {
    print_dot(r);
  } else {
    for (const ac::Dependency& d : r.deps)
      std::cout << d.head << " -" << d.label << "-> " << d.dependent << "\n";
  }
  return 0;
}

std::string default_gold_path(const std::string& text_path) {
  const std::filesystem::path p(text_path);
  if (p.extension() == ".txt") {
    std::filesystem::path q = p;
    q.replace_extension(".gold");
    return q.string();
  }
  return text_path + ".gold";
}

struct LoadedCorpus {
  ac::GrammarModel grammar;
  std::vector<ac::GoldParse> corpus;
};

LoadedCorpus load_eval_input(const RunConfig& rc, const std::string& builtin,
                             const std::string& corpus_path,
                             const std::string& gold_path) {
  if (!builtin.empty()) {
    if (builtin == "english")
      return {ac::english_reference_grammar(), ac::english_corpus(7)};
    if (builtin == "russian") {
      std::vector<ac::GoldParse> corpus;
      for (const auto& words : ac::russian_gift_permutations())
        corpus.push_back({words, ac::russian_gift_gold()});
      return {ac::russian_reference_grammar(), std::move(corpus)};
    }
    throw std::runtime_error("unknown builtin corpus: " + builtin);
  }
  if (corpus_path.empty())
    throw std::runtime_error("either a corpus file or --builtin is required");
  const std::string gold =
      gold_path.empty() ? default_gold_path(corpus_path) : gold_path;
  return {load_model(rc.grammar), ac::load_corpus(corpus_path, gold)};
}

int cmd_corpus(const RunConfig& rc, const std::string& builtin,
               const std::string& corpus_path, const std::string& gold_path,
               bool permutations) {
  LoadedCorpus in = load_eval_input(rc, builtin, corpus_path, gold_path);
  ac::ParserRuntime rt(std::move(in.grammar), rc.cfg);

  if (permutations) {
    ac::PermutationReport rep = ac::permutation_test(
        rt, ac::russian_gift_permutations(), ac::russian_gift_gold());
    std::cout << rep.matched << "/" << rep.total << " identical\n";
    for (const std::string& f : rep.failures) std::cout << "  " << f << "\n";
    return rep.matched == rep.total ? 0 : kExitThreshold;
  }

  ac::EvalReport rep = ac::evaluate(rt, in.corpus);
  if (rc.format == "json") {
    std::cout << ac::to_json(rep).dump(2) << "\n";
  } else {
    std::printf("sentences            %zu\n", rep.total);
    std::printf("parsed               %zu\n", rep.parsed);
    std::printf("exact                %zu\n", rep.exact);
    std::printf("exact rate           %.4f\n", rep.exact_rate());
    std::printf("convergence rate     %.4f\n", rep.convergence_rate());
    std::printf("max commands/word    %llu\n",
                static_cast<unsigned long long>(rep.max_commands_per_word));
    for (const ac::SentenceOutcome& o : rep.sentences) {
      if (o.exact) continue;
      std::printf("MISS  %s%s%s\n", o.sentence.c_str(),
                  o.error.empty() ? "" : " :: ", o.error.c_str());
    }
  }
  return rep.exact_rate() >= rc.threshold ? 0 : kExitThreshold;
}

int cmd_validate(const std::string& path) {
  ac::GrammarModel g;
  try {
    g = ac::load_grammar(path);
  } catch (const std::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 1;
  }
  const std::vector<std::string> issues = ac::validate(g);
  for (const std::string& s : issues) std::cout << s << "\n";
  if (issues.empty()) std::cout << "ok: " << g.name << "\n";
  return issues.empty() ? 0 : 1;
}

int cmd_bench(const RunConfig& rc, const std::string& builtin,
              const std::string& corpus_path, const std::string& gold_path) {
  LoadedCorpus in = load_eval_input(rc, builtin, corpus_path, gold_path);
  ac::ParserRuntime rt(std::move(in.grammar), rc.cfg);
  ac::ConvergenceStats st = ac::convergence_stats(rt, in.corpus);

  std::printf("project* calls       %zu\n", st.calls);
  std::printf("converged            %zu (%.2f%%)\n", st.converged,
              100.0 * st.rate());
  if (st.unparsed)
    std::printf("unparsed sentences   %zu\n", st.unparsed);
  for (std::size_t r = 1; r < st.by_round.size(); ++r) {
    if (!st.by_round[r]) continue;
    std::printf("settled at round %2zu  %zu\n", r, st.by_round[r]);
  }
  for (const std::string& s : st.stragglers)
    std::printf("UNCONVERGED  %s\n", s.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "acp — parse sentences with neural assemblies and evaluate corpora"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string sentence, builtin, corpus_path, gold_path, grammar_file;
  bool permutations = false;

  CLI::App* sp = app.add_subcommand("parse", "parse one sentence");
  sp->add_option("sentence", sentence, "sentence to parse")->required();
  add_common(sp, rc);

  CLI::App* sc = app.add_subcommand("corpus", "evaluate a corpus");
  sc->add_option("corpus", corpus_path, "corpus text file (gold sidecar: .gold)");
  sc->add_option("--gold", gold_path, "gold dependency sidecar file");
  sc->add_option("--builtin", builtin, "builtin corpus (english|russian)");
  sc->add_flag("--permutations", permutations,
               "russian word-order invariance check");
  add_common(sc, rc);

  CLI::App* sv = app.add_subcommand("validate", "validate a grammar file");
  sv->add_option("grammar", grammar_file, "grammar file to check")->required();

  CLI::App* sb = app.add_subcommand("bench", "convergence statistics");
  sb->add_option("corpus", corpus_path, "corpus text file (gold sidecar: .gold)");
  sb->add_option("--gold", gold_path, "gold dependency sidecar file");
  sb->add_option("--builtin", builtin, "builtin corpus (english|russian)");
  add_common(sb, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sp->parsed()) return cmd_parse(sentence, rc);
    if (sc->parsed())
      return cmd_corpus(rc, builtin, corpus_path, gold_path, permutations);
    if (sv->parsed()) return cmd_validate(grammar_file);
    if (sb->parsed()) return cmd_bench(rc, builtin, corpus_path, gold_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
