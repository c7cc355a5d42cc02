#pragma once

// Template corpus for the English reference grammar, with gold dependency
// sets built alongside each sentence. Sampling is hand-rolled Fisher-Yates
// over mt19937_64 so a frozen seed regenerates the identical corpus on any
// platform.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ac/types.hpp"

namespace ac {

struct GoldParse {
  std::vector<std::string> words;
  std::vector<Dependency> deps;
};

inline std::string sentence_text(const GoldParse& s) {
  std::string out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    if (i) out += ' ';
    out += s.words[i];
  }
  return out;
}

inline std::string gold_text(const GoldParse& s) {
  std::string out;
  for (std::size_t i = 0; i < s.deps.size(); ++i) {
    if (i) out += ';';
    out += s.deps[i].head + "|" + s.deps[i].label + "|" + s.deps[i].dependent;
  }
  return out;
}

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> ws;
  for (std::string w; in >> w;) ws.push_back(w);
  return ws;
}

inline std::vector<Dependency> parse_gold_line(const std::string& line) {
  std::vector<Dependency> deps;
  std::istringstream in(line);
  for (std::string tok; std::getline(in, tok, ';');) {
    if (tok.empty()) continue;
    const auto p1 = tok.find('|');
    const auto p2 = tok.find('|', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw std::runtime_error("malformed gold entry: " + tok);
    deps.push_back({tok.substr(0, p1), tok.substr(p1 + 1, p2 - p1 - 1),
                    tok.substr(p2 + 1)});
  }
  return deps;
}

namespace detail {

// word pools drawn from the reference lexicon
inline const std::vector<std::string>& sg_nouns() {
  static const std::vector<std::string> v = {
      "dog",   "cat",     "man",    "woman",  "child",   "bird",
      "school", "park",   "house",  "tree",   "ball",    "car",
      "city",  "river",   "teacher", "student", "doctor", "farmer",
      "king",  "queen",   "problem", "backpack"};
  return v;
}
inline const std::vector<std::string>& pl_nouns() {
  static const std::vector<std::string> v = {"dogs",     "cats",  "men",
                                             "women",    "children", "birds",
                                             "people"};
  return v;
}
inline const std::vector<std::string>& pronouns() {
  static const std::vector<std::string> v = {"he", "she", "it",
                                             "they", "we", "you"};
  return v;
}
inline const std::vector<std::string>& trans_verbs() {
  static const std::vector<std::string> v = {
      "saw",     "chased",   "found",  "loved", "liked",
      "helped",  "carried",  "followed", "watched", "caught"};
  return v;
}
inline const std::vector<std::string>& intrans_verbs() {
  static const std::vector<std::string> v = {"ran",    "slept",  "jumped",
                                             "lived",  "died",   "walked",
                                             "smiled", "fell",   "swam"};
  return v;
}
inline const std::vector<std::string>& sg_dets() {
  static const std::vector<std::string> v = {"the", "a", "my"};
  return v;
}
inline const std::vector<std::string>& pl_dets() {
  static const std::vector<std::string> v = {"the", "my", "some"};
  return v;
}
inline const std::vector<std::string>& adjectives() {
  static const std::vector<std::string> v = {"big",  "small", "red",
                                             "blue", "old",   "young",
                                             "happy", "sad",  "scary",
                                             "quick", "tall", "green"};
  return v;
}
inline const std::vector<std::string>& chain_adjectives() {
  static const std::vector<std::string> v = {"bad", "ugly", "fierce"};
  return v;
}
inline const std::vector<std::string>& adverbs() {
  static const std::vector<std::string> v = {"quickly", "slowly", "happily",
                                             "sadly",   "quietly", "loudly",
                                             "gently",  "badly"};
  return v;
}
inline const std::vector<std::string>& preps() {
  static const std::vector<std::string> v = {"to", "in", "at", "on"};
  return v;
}
inline const std::vector<std::string>& chain_preps() {
  static const std::vector<std::string> v = {"with", "near"};
  return v;
}

// without-replacement sampler; one used-set per sentence keeps every word
// type unique, which is what keeps readout's tree shape meaningful
class Draw {
 public:
  explicit Draw(std::mt19937_64& rng) : rng_(rng) {}

  const std::string& pick(const std::vector<std::string>& pool) {
    for (int tries = 0; tries < 64; ++tries) {
      const std::string& w = pool[rng_() % pool.size()];
      if (used_.insert(w).second) return w;
    }
    for (const std::string& w : pool)
      if (used_.insert(w).second) return w;
    throw std::runtime_error("word pool exhausted");
  }

  bool coin() { return (rng_() & 1) != 0; }

 private:
  std::mt19937_64& rng_;
  std::set<std::string> used_;
};

}  // namespace detail

// The twenty sentence shapes. An optional {D} slot flips between a
// singular determiner phrase and a bare plural on a 50/50 draw.
inline GoldParse english_template(int tmpl, std::mt19937_64& rng) {
  using namespace detail;
  Draw d(rng);
  GoldParse s;
  auto emit = [&](const std::string& head, const std::string& label,
                  const std::string& dep) { s.deps.push_back({head, label, dep}); };

  // noun phrase helpers; return the head noun
  auto np_sg = [&]() {
    const std::string det = d.pick(sg_dets());
    const std::string n = d.pick(sg_nouns());
    s.words.push_back(det);
    s.words.push_back(n);
    emit(n, "DET", det);
    return n;
  };
  auto np_bare = [&]() {
    const std::string n = d.pick(pl_nouns());
    s.words.push_back(n);
    return n;
  };
  auto np_opt = [&]() { return d.coin() ? np_sg() : np_bare(); };
  auto np_adj = [&](bool with_det) {
    std::string det;
    if (with_det) det = d.pick(sg_dets());
    const std::string adj = d.pick(adjectives());
    const std::string n = with_det ? d.pick(sg_nouns()) : d.pick(pl_nouns());
    if (with_det) s.words.push_back(det);
    s.words.push_back(adj);
    s.words.push_back(n);
    if (with_det) emit(n, "DET", det);
    emit(n, "ADJ", adj);
    return n;
  };
  auto push = [&](const std::string& w) {
    s.words.push_back(w);
    return w;
  };
  auto plural = [&](const std::string& n) {
    const auto& pl = pl_nouns();
    return std::find(pl.begin(), pl.end(), n) != pl.end() ||
           n == "they" || n == "we" || n == "you";
  };
  auto cop_for = [&](const std::string& subj) {
    return plural(subj) ? (d.coin() ? std::string("are") : std::string("were"))
                        : (d.coin() ? std::string("is") : std::string("was"));
  };

  switch (tmpl) {
    case 0: {  // N Vi
      const auto n = np_bare();
      const auto v = push(d.pick(intrans_verbs()));
      emit(v, "SUBJ", n);
      break;
    }
    case 1: {  // {D} N Vi
      const auto n = np_opt();
      const auto v = push(d.pick(intrans_verbs()));
      emit(v, "SUBJ", n);
      break;
    }
    case 2: {  // N Vt N
      const auto n1 = np_bare();
      const auto v = push(d.pick(trans_verbs()));
      const auto n2 = np_bare();
      emit(v, "SUBJ", n1);
      emit(v, "OBJ", n2);
      break;
    }
    case 3: {  // D N Vt D N
      const auto n1 = np_sg();
      const auto v = push(d.pick(trans_verbs()));
      const auto n2 = np_sg();
      emit(v, "SUBJ", n1);
      emit(v, "OBJ", n2);
      break;
    }
    case 4: {  // {D} N Vt N
      const auto n1 = np_opt();
      const auto v = push(d.pick(trans_verbs()));
      const auto n2 = np_bare();
      emit(v, "SUBJ", n1);
      emit(v, "OBJ", n2);
      break;
    }
    case 5: {  // N Vt ADJ N
      const auto n1 = np_bare();
      const auto v = push(d.pick(trans_verbs()));
      const auto n2 = np_adj(false);
      emit(v, "SUBJ", n1);
      emit(v, "OBJ", n2);
      break;
    }
    case 6: {  // D ADJ N Vt D ADJ N
      const auto n1 = np_adj(true);
      const auto v = push(d.pick(trans_verbs()));
      const auto n2 = np_adj(true);
      emit(v, "SUBJ", n1);
      emit(v, "OBJ", n2);
      break;
    }
    case 7: {  // {D} N Vi ADV
      const auto n = np_opt();
      const auto v = push(d.pick(intrans_verbs()));
      const auto adv = push(d.pick(adverbs()));
      emit(v, "SUBJ", n);
      emit(v, "ADV", adv);
      break;
    }
    case 8: {  // N ADV Vi
      const auto n = np_bare();
      const auto adv = push(d.pick(adverbs()));
      const auto v = push(d.pick(intrans_verbs()));
      emit(v, "SUBJ", n);
      emit(v, "ADV", adv);
      break;
    }
    case 9: {  // {D} N ADV Vt {D} N
      const auto n1 = np_opt();
      const auto adv = push(d.pick(adverbs()));
      const auto v = push(d.pick(trans_verbs()));
      const auto n2 = np_opt();
      emit(v, "SUBJ", n1);
      emit(v, "ADV", adv);
      emit(v, "OBJ", n2);
      break;
    }
    case 10: {  // D ADJ N Vi
      const auto n = np_adj(true);
      const auto v = push(d.pick(intrans_verbs()));
      emit(v, "SUBJ", n);
      break;
    }
    case 11: {  // PRON Vt D N
      const auto p = push(d.pick(pronouns()));
      const auto v = push(d.pick(trans_verbs()));
      const auto n = np_sg();
      emit(v, "SUBJ", p);
      emit(v, "OBJ", n);
      break;
    }
    case 12: {  // {D} N Vi P D N
      const auto n1 = np_opt();
      const auto v = push(d.pick(intrans_verbs()));
      const auto p = push(d.pick(preps()));
      const auto n2 = np_sg();
      emit(v, "SUBJ", n1);
      emit(v, "PREPP", n2);
      emit(n2, "PREP", p);
      break;
    }
    case 13: {  // PRON Vi to N PC D N
      const auto pr = push(d.pick(pronouns()));
      const auto v = push(d.pick(intrans_verbs()));
      const auto p = push("to");
      const auto n1 = np_bare();
      const auto pc = push(d.pick(chain_preps()));
      const auto n2 = np_sg();
      emit(v, "SUBJ", pr);
      emit(v, "PREPP", n1);
      emit(n1, "PREP", p);
      emit(n1, "COMP1", n2);
      emit(n2, "PREP", pc);
      break;
    }
    case 14: {  // {D} N Vt N of N
      const auto n1 = np_opt();
      const auto v = push(d.coin() ? std::string("ate") : std::string("had"));
      const std::vector<std::string> dishes = {"dinner", "salad", "taste"};
      const std::vector<std::string> stuffs = {"tuna", "salad", "dinner"};
      const auto n2 = push(d.pick(dishes));
      const auto p = push("of");
      const auto n3 = push(d.pick(stuffs));
      emit(v, "SUBJ", n1);
      emit(v, "OBJ", n2);
      emit(n2, "PREPP", n3);
      emit(n3, "PREP", p);
      break;
    }
    case 15: {  // D N P D N Vt D N
      const auto n1 = np_sg();
      const auto p = push(d.pick(preps()));
      const auto n2 = np_sg();
      const auto v = push(d.pick(trans_verbs()));
      const auto n3 = np_sg();
      emit(v, "SUBJ", n1);
      emit(n1, "PREPP", n2);
      emit(n2, "PREP", p);
      emit(v, "OBJ", n3);
      break;
    }
    case 16: {  // D N COP D N
      const auto n1 = np_sg();
      const auto v = push(cop_for(n1));
      const auto n2 = np_sg();
      emit(v, "SUBJ", n1);
      emit(v, "OBJ", n2);
      break;
    }
    case 17: {  // {D} N COP ADJ
      const auto n = np_opt();
      const auto v = push(cop_for(n));
      const auto adj = push(d.pick(adjectives()));
      emit(v, "SUBJ", n);
      emit(v, "ADJ", adj);
      break;
    }
    case 18: {  // ADJ N COP ADJ
      const auto n = np_adj(false);
      const auto v = push(cop_for(n));
      const auto adj = push(d.pick(adjectives()));
      emit(v, "SUBJ", n);
      emit(v, "ADJ", adj);
      break;
    }
    case 19: {  // D ADJ ADJC N COP ADJ
      const auto det = push(d.pick(sg_dets()));
      const auto a1 = push(d.pick(adjectives()));
      const auto a2 = push(d.pick(chain_adjectives()));
      const auto n = push(d.pick(sg_nouns()));
      const auto v = push(cop_for(n));
      const auto a3 = push(d.pick(adjectives()));
      emit(n, "DET", det);
      emit(n, "ADJ", a1);
      emit(n, "COMP1", a2);
      emit(v, "SUBJ", n);
      emit(v, "ADJ", a3);
      break;
    }
    default:
      throw std::runtime_error("no such template: " + std::to_string(tmpl));
  }
  return s;
}

constexpr int kEnglishTemplates = 20;

inline std::vector<GoldParse> english_corpus(std::uint64_t seed,
                                             int per_template = 10) {
  std::mt19937_64 rng(seed);
  std::vector<GoldParse> out;
  out.reserve(static_cast<std::size_t>(kEnglishTemplates) * per_template);
  for (int t = 0; t < kEnglishTemplates; ++t)
    for (int i = 0; i < per_template; ++i) out.push_back(english_template(t, rng));
  return out;
}

// the gift sentence in all 24 word orders, one shared gold set
inline std::vector<std::vector<std::string>> russian_gift_permutations() {
  std::vector<std::string> words = {"дала", "женщина", "мужчине", "сумку"};
  std::sort(words.begin(), words.end());
  std::vector<std::vector<std::string>> out;
  do {
    out.push_back(words);
  } while (std::next_permutation(words.begin(), words.end()));
  return out;
}

inline std::vector<Dependency> russian_gift_gold() {
  return {{"дала", "NOM", "женщина"},
          {"дала", "DAT", "мужчине"},
          {"дала", "ACC", "сумку"}};
}

inline void save_corpus(const std::vector<GoldParse>& corpus,
                        const std::string& text_path,
                        const std::string& gold_path) {
  std::ofstream txt(text_path), gold(gold_path);
  if (!txt || !gold)
    throw std::runtime_error("cannot write corpus files: " + text_path);
  for (const GoldParse& s : corpus) {
    txt << sentence_text(s) << '\n';
    gold << gold_text(s) << '\n';
  }
}

inline std::vector<GoldParse> load_corpus(const std::string& text_path,
                                          const std::string& gold_path) {
  std::ifstream txt(text_path), gold(gold_path);
  if (!txt) throw std::runtime_error("cannot open corpus: " + text_path);
  if (!gold) throw std::runtime_error("cannot open gold: " + gold_path);
  std::vector<GoldParse> out;
  std::string sline, gline;
  std::size_t line_no = 0;
  while (std::getline(txt, sline)) {
    ++line_no;
    if (!std::getline(gold, gline))
      throw std::runtime_error("gold file shorter than corpus");
    if (sline.empty()) continue;
    try {
      out.push_back({split_words(sline), parse_gold_line(gline)});
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return out;
}

}  // namespace ac
