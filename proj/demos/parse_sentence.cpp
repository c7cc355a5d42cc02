// Parse one sentence with the built-in English grammar and print the
// dependency tree the readout recovers from the final brain state.

#include <cstdio>
#include <string>
#include <vector>

#include "ac/corpus.hpp"
#include "ac/grammars.hpp"
#include "ac/parser.hpp"

int main(int argc, char** argv) {
  std::string sentence = "the man saw a woman";
  if (argc > 1) {
    sentence.clear();
    for (int i = 1; i < argc; ++i) {
      if (i > 1) sentence += ' ';
      sentence += argv[i];
    }
  }

  std::printf("building the reference brain...\n");
  ac::ParserRuntime rt(ac::english_reference_grammar());

  ac::ParseOutcome out = rt.parse(ac::split_words(sentence));
  if (!ok(out)) {
    const ac::ParseError& e = error(out);
    std::printf("no parse: %s (word %zu): %s\n", ac::to_string(e.kind),
                e.word_index, e.detail.c_str());
    return 1;
  }

  const ac::ParseResult& r = result(out);
  std::printf("\n  %s\n\n", sentence.c_str());
  std::printf("root: %s\n", r.root.c_str());
  for (const ac::Dependency& d : r.deps)
    std::printf("  %s -%s-> %s\n", d.head.c_str(), d.label.c_str(),
                d.dependent.c_str());
  std::printf("\n%zu words, %llu firing rounds, %llu commands\n",
              r.words.size(), static_cast<unsigned long long>(r.steps),
              static_cast<unsigned long long>(r.commands));
  return 0;
}
