#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ac {

using NeuronId = std::uint32_t;
using AreaIdx = std::uint32_t;

inline constexpr AreaIdx kNoArea = static_cast<AreaIdx>(-1);

struct BrainConfig {
  std::uint32_t n = 10000;  // neurons per computed area
  std::uint32_t k = 100;    // winners per firing round
  double p = 0.05;          // synapse probability
  double beta = 0.1;        // plasticity increment
  std::uint32_t rounds = 20;
  std::uint64_t seed = 7;
  double stability = 0.75;    // readout: required |c1 ∩ c2| / k
  double convergence = 0.95;  // settling: required successive overlap / k
};

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Op : std::uint8_t { Inhibit, Disinhibit };

// One inhibit/disinhibit applied to an area population or a fiber population.
struct Command {
  Op op = Op::Inhibit;
  bool on_fiber = false;
  std::string a;  // area name, or first fiber endpoint
  std::string b;  // second fiber endpoint (fiber commands only)
  std::uint32_t pop = 0;

  bool operator==(const Command&) const = default;
};

inline Command inh_area(std::string name, std::uint32_t pop) {
  return {Op::Inhibit, false, std::move(name), {}, pop};
}
inline Command dis_area(std::string name, std::uint32_t pop) {
  return {Op::Disinhibit, false, std::move(name), {}, pop};
}
inline Command inh_fiber(std::string a, std::string b, std::uint32_t pop) {
  return {Op::Inhibit, true, std::move(a), std::move(b), pop};
}
inline Command dis_fiber(std::string a, std::string b, std::uint32_t pop) {
  return {Op::Disinhibit, true, std::move(a), std::move(b), pop};
}

inline std::string to_string(const Command& c) {
  std::string s = c.op == Op::Inhibit ? "inh(" : "dis(";
  s += c.a;
  if (c.on_fiber) {
    s += '-';
    s += c.b;
  }
  s += ',';
  s += std::to_string(c.pop);
  s += ')';
  return s;
}

enum class ParseErrorKind : std::uint8_t {
  UnknownWord,
  EmptyProject,
  NonsenseAssembly,
};

inline const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::UnknownWord: return "UnknownWord";
    case ParseErrorKind::EmptyProject: return "EmptyProject";
    case ParseErrorKind::NonsenseAssembly: return "NonsenseAssembly";
  }
  return "?";
}

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::UnknownWord;
  std::size_t word_index = 0;  // 1-based; 0 = detected at readout
  std::string word;
  std::string detail;
};

struct Dependency {
  std::string head;
  std::string label;
  std::string dependent;

  auto operator<=>(const Dependency&) const = default;
};

struct AreaStability {
  std::string area;
  bool converged = false;
  std::uint32_t first_converged_round = 0;
  std::uint32_t final_overlap = 0;
};

struct ProjectReport {
  std::vector<AreaStability> areas;
  std::uint32_t rounds = 0;

  bool all_converged() const {
    for (const auto& a : areas)
      if (!a.converged) return false;
    return true;
  }
};

}  // namespace ac
