#pragma once

#include <algorithm>
#include <cstring>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ac/rng.hpp"
#include "ac/types.hpp"

namespace ac {

namespace detail {

// Row-compressed synapse bundle. Weights are stored as integer exponents m;
// the effective weight is (1+beta)^m, looked up in a shared table so that a
// weight reached by m potentiations is bit-identical to m repeated
// multiplications.
struct Csr {
  std::vector<std::uint32_t> offs;  // n_src + 1
  std::vector<NeuronId> tgt;        // ascending within each row
  std::vector<std::uint8_t> wexp;

  bool empty() const { return tgt.empty(); }
};

inline Csr sample_csr(std::uint32_t n_src, std::uint32_t n_tgt, double p,
                      std::uint64_t seed, bool skip_diag) {
  Csr c;
  c.offs.resize(n_src + 1, 0);
  const double mean = static_cast<double>(n_src) * n_tgt * p;
  c.tgt.reserve(static_cast<std::size_t>(mean + 5.0 * std::sqrt(mean + 1.0)) + 16);
  GapSampler gs(seed, p);
  for (std::uint32_t i = 0; i < n_src; ++i) {
    const std::uint64_t row_n = skip_diag ? n_tgt - 1 : n_tgt;
    std::uint64_t cur = gs.next_gap();
    while (cur < row_n) {
      auto j = static_cast<std::uint32_t>(cur);
      if (skip_diag && j >= i) ++j;  // virtual slots exclude the diagonal
      c.tgt.push_back(j);
      cur += 1 + gs.next_gap();
    }
    c.offs[i + 1] = static_cast<std::uint32_t>(c.tgt.size());
  }
  c.wexp.assign(c.tgt.size(), 0);
  return c;
}

}  // namespace detail

struct Area {
  std::string name;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  bool explicit_area = false;  // holds pinned assemblies, never recomputes
  std::vector<NeuronId> cap;   // last formed assembly (sorted); survives inhibition
  bool engaged = false;        // fires into the system while disinhibited
  std::set<std::uint32_t> pops{0};

  bool disinhibited() const { return pops.empty(); }
};

struct Fiber {
  AreaIdx a = 0;
  AreaIdx b = 0;
  bool reciprocal = true;
  std::set<std::uint32_t> pops{0};
  detail::Csr ab;  // a -> b
  detail::Csr ba;  // b -> a; stays empty when unidirectional

  bool disinhibited() const { return pops.empty(); }
};

// Named source assembly for pure cap measurements.
using SourceCap = std::pair<AreaIdx, const std::vector<NeuronId>*>;

class Brain {
 public:
  explicit Brain(BrainConfig cfg) : cfg_(cfg) {
    if (cfg_.k == 0 || cfg_.n == 0 || cfg_.k > cfg_.n)
      throw EngineError("bad config: need 0 < k <= n");
    if (cfg_.beta < 0.0) throw EngineError("bad config: beta < 0");
  }

  const BrainConfig& config() const { return cfg_; }

  // ~~~~ construction ~~~~

  AreaIdx add_area(std::string name, std::uint32_t n, std::uint32_t k,
                   bool explicit_area = false) {
    require_unbuilt();
    if (name.empty()) throw EngineError("area name empty");
    if (by_name_.count(name)) throw EngineError("duplicate area: " + name);
    if (k == 0 || k > n) throw EngineError("area " + name + ": need 0 < k <= n");
    Area ar;
    ar.name = std::move(name);
    ar.n = n;
    ar.k = k;
    ar.explicit_area = explicit_area;
    by_name_.emplace(ar.name, static_cast<AreaIdx>(areas_.size()));
    areas_.push_back(std::move(ar));
    return static_cast<AreaIdx>(areas_.size() - 1);
  }

  AreaIdx add_area(std::string name) {
    return add_area(std::move(name), cfg_.n, cfg_.k, false);
  }

  std::uint32_t add_fiber(std::string_view a, std::string_view b,
                          bool reciprocal = true) {
    require_unbuilt();
    AreaIdx ia = area_index(a), ib = area_index(b);
    if (ia == ib) throw EngineError("fiber endpoints equal");
    for (const Fiber& f : fibers_)
      if ((f.a == ia && f.b == ib) || (f.a == ib && f.b == ia))
        throw EngineError("duplicate fiber");
    Fiber f;
    f.a = ia;
    f.b = ib;
    f.reciprocal = reciprocal;
    fibers_.push_back(std::move(f));
    return static_cast<std::uint32_t>(fibers_.size() - 1);
  }

  void build() {
    require_unbuilt();
    if (areas_.empty()) throw EngineError("no areas");
    pow_.resize(256);
    pow_[0] = 1.0;
    for (int m = 1; m < 256; ++m) pow_[m] = pow_[m - 1] * (1.0 + cfg_.beta);

    const auto A = static_cast<AreaIdx>(areas_.size());
    fiber_at_.assign(A, std::vector<std::int32_t>(A, -1));
    for (std::size_t fi = 0; fi < fibers_.size(); ++fi) {
      Fiber& f = fibers_[fi];
      fiber_at_[f.a][f.b] = static_cast<std::int32_t>(fi);
      fiber_at_[f.b][f.a] = static_cast<std::int32_t>(fi);
      f.ab = detail::sample_csr(areas_[f.a].n, areas_[f.b].n, cfg_.p,
                                derive_stream(cfg_.seed, 1, fi, 0), false);
      if (f.reciprocal)
        f.ba = detail::sample_csr(areas_[f.b].n, areas_[f.a].n, cfg_.p,
                                  derive_stream(cfg_.seed, 1, fi, 1), false);
    }
    rec_.resize(A);
    std::uint32_t max_n = 0;
    for (AreaIdx i = 0; i < A; ++i) {
      if (!areas_[i].explicit_area)
        rec_[i] = detail::sample_csr(areas_[i].n, areas_[i].n, cfg_.p,
                                     derive_stream(cfg_.seed, 0, i, i), true);
      max_n = std::max(max_n, areas_[i].n);
    }
    si_.assign(max_n, 0.0);
    member_.assign(max_n, 0);
    staged_.resize(A);
    updated_.assign(A, 0);
    built_ = true;
  }

  bool built() const { return built_; }

  // ~~~~ lookup ~~~~

  AreaIdx area_index(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
      throw EngineError("unknown area: " + std::string(name));
    return it->second;
  }

  const Area& area(AreaIdx i) const { return areas_.at(i); }
  const Area& area(std::string_view name) const { return areas_[area_index(name)]; }
  std::uint32_t num_areas() const { return static_cast<std::uint32_t>(areas_.size()); }
  const std::vector<Fiber>& fibers() const { return fibers_; }

  const Fiber* fiber_between(AreaIdx a, AreaIdx b) const {
    if (!built_) return nullptr;
    std::int32_t fi = fiber_at_[a][b];
    return fi < 0 ? nullptr : &fibers_[fi];
  }

  // Bundle from s to t, or nullptr when absent (includes the silent direction
  // of a unidirectional fiber). s == t selects the recurrent bundle.
  const detail::Csr* bundle(AreaIdx s, AreaIdx t) const {
    if (s == t) {
      const detail::Csr& r = rec_[s];
      return r.offs.empty() ? nullptr : &r;
    }
    std::int32_t fi = fiber_at_[s][t];
    if (fi < 0) return nullptr;
    const Fiber& f = fibers_[fi];
    const detail::Csr& c = f.a == s ? f.ab : f.ba;
    return c.offs.empty() ? nullptr : &c;
  }

  double weight(AreaIdx s, AreaIdx t, NeuronId i, NeuronId j) const {
    const detail::Csr* c = bundle(s, t);
    if (!c) return 0.0;
    for (std::uint32_t e = c->offs[i]; e < c->offs[i + 1]; ++e)
      if (c->tgt[e] == j) return pow_[c->wexp[e]];
    return 0.0;
  }

  const std::vector<double>& pow_table() const { return pow_; }

  // ~~~~ inhibition ~~~~

  // Inhibiting an area also retires it: the assembly stays frozen in place
  // but will not fire again after release until something re-forms or
  // re-activates it.
  void inhibit(std::string_view area, std::uint32_t pop) {
    Area& ar = areas_[area_index(area)];
    ar.pops.insert(pop);
    ar.engaged = false;
  }
  void disinhibit(std::string_view area, std::uint32_t pop) {
    areas_[area_index(area)].pops.erase(pop);
  }
  void inhibit_fiber(std::string_view a, std::string_view b, std::uint32_t pop) {
    fiber_ref(a, b).pops.insert(pop);
  }
  void disinhibit_fiber(std::string_view a, std::string_view b, std::uint32_t pop) {
    fiber_ref(a, b).pops.erase(pop);
  }

  void apply(const Command& c) {
    if (c.on_fiber) {
      if (c.op == Op::Inhibit)
        inhibit_fiber(c.a, c.b, c.pop);
      else
        disinhibit_fiber(c.a, c.b, c.pop);
    } else {
      if (c.op == Op::Inhibit)
        inhibit(c.a, c.pop);
      else
        disinhibit(c.a, c.pop);
    }
  }

  // ~~~~ state control ~~~~

  // Pin assembly #idx of an explicit area. Rejected while the area is
  // inhibited.
  bool activate(std::string_view name, std::uint32_t idx) {
    Area& ar = areas_[area_index(name)];
    if (!ar.explicit_area) throw EngineError("activate: not an explicit area");
    const std::uint64_t lo = static_cast<std::uint64_t>(idx) * ar.k;
    if (lo + ar.k > ar.n) throw EngineError("activate: assembly out of range");
    if (!ar.disinhibited()) return false;
    ar.cap.resize(ar.k);
    for (std::uint32_t i = 0; i < ar.k; ++i)
      ar.cap[i] = static_cast<NeuronId>(lo + i);
    ar.engaged = true;
    return true;
  }

  // Test hook: force an arbitrary current assembly.
  void set_cap(std::string_view name, std::vector<NeuronId> cap) {
    Area& ar = areas_[area_index(name)];
    for (NeuronId j : cap)
      if (j >= ar.n) throw EngineError("set_cap: neuron out of range");
    std::sort(cap.begin(), cap.end());
    ar.cap = std::move(cap);
    ar.engaged = !ar.cap.empty();
  }

  void set_plasticity(bool on) { plasticity_ = on; }
  bool plasticity() const { return plasticity_; }
  std::uint64_t steps_executed() const { return steps_; }

  // ~~~~ dynamics ~~~~

  // One firing round. Every disinhibited engaged area fires its assembly;
  // every disinhibited computed area takes the k strongest positive inputs as
  // its new assembly; synapses from firing neurons into the new winners (or
  // into the pinned assembly of an explicit target) are potentiated.
  void step() {
    require_built();
    const auto A = static_cast<AreaIdx>(areas_.size());
    fire_.assign(A, nullptr);
    for (AreaIdx i = 0; i < A; ++i) {
      const Area& ar = areas_[i];
      if (ar.disinhibited() && ar.engaged && !ar.cap.empty()) fire_[i] = &ar.cap;
    }

    for (AreaIdx b = 0; b < A; ++b) {
      updated_[b] = 0;
      Area& B = areas_[b];
      if (B.explicit_area || !B.disinhibited()) continue;
      std::fill(si_.begin(), si_.begin() + B.n, 0.0);
      bool any = false;
      for (AreaIdx s = 0; s < A; ++s) {
        const detail::Csr* c = open_bundle(s, b);
        if (!c || !fire_[s]) continue;
        for (NeuronId i : *fire_[s])
          for (std::uint32_t e = c->offs[i]; e < c->offs[i + 1]; ++e)
            si_[c->tgt[e]] += pow_[c->wexp[e]];
        any = true;
      }
      staged_[b].clear();
      if (any) topk(B.n, B.k, staged_[b]);
      updated_[b] = 1;
    }

    if (plasticity_) {
      for (AreaIdx b = 0; b < A; ++b) {
        Area& B = areas_[b];
        if (!B.disinhibited()) continue;
        const std::vector<NeuronId>* tcap = nullptr;
        if (B.explicit_area) {
          if (B.engaged && !B.cap.empty()) tcap = &B.cap;
        } else if (updated_[b] && !staged_[b].empty()) {
          tcap = &staged_[b];
        }
        if (!tcap) continue;
        for (NeuronId j : *tcap) member_[j] = 1;
        for (AreaIdx s = 0; s < A; ++s) {
          detail::Csr* c = open_bundle_mut(s, b);
          if (!c || !fire_[s]) continue;
          for (NeuronId i : *fire_[s]) {
            bool touched = false;
            for (std::uint32_t e = c->offs[i]; e < c->offs[i + 1]; ++e) {
              if (!member_[c->tgt[e]]) continue;
              if (c->wexp[e] == 255) throw EngineError("weight exponent overflow");
              ++c->wexp[e];
              touched = true;
            }
            if (touched) dirty_.push_back({c, i});
          }
        }
        for (NeuronId j : *tcap) member_[j] = 0;
      }
    }

    for (AreaIdx b = 0; b < A; ++b) {
      if (!updated_[b]) continue;
      areas_[b].cap.swap(staged_[b]);
      areas_[b].engaged = !areas_[b].cap.empty();
    }
    ++steps_;
  }

  // Multi-round projection with a per-area settling report. The observer,
  // when given, sees the brain after each completed round.
  ProjectReport project_rounds(
      std::uint32_t rounds,
      const std::function<void(std::uint32_t)>& on_round = {}) {
    require_built();
    const auto A = static_cast<AreaIdx>(areas_.size());
    std::vector<std::vector<NeuronId>> prev(A);
    for (AreaIdx i = 0; i < A; ++i) prev[i] = areas_[i].cap;
    std::vector<std::uint32_t> first(A, 0), final_ov(A, 0);
    std::vector<char> took_part(A, 0);

    for (std::uint32_t t = 1; t <= rounds; ++t) {
      step();
      for (AreaIdx b = 0; b < A; ++b) {
        if (!updated_[b]) continue;
        took_part[b] = 1;
        const std::uint32_t ov = count_overlap(areas_[b].cap, prev[b]);
        final_ov[b] = ov;
        if (first[b] == 0 && ov >= conv_need(b)) first[b] = t;
        prev[b] = areas_[b].cap;
      }
      if (on_round) on_round(t);
    }

    ProjectReport rep;
    rep.rounds = rounds;
    for (AreaIdx b = 0; b < A; ++b) {
      if (!took_part[b] || areas_[b].cap.empty()) continue;
      AreaStability st;
      st.area = areas_[b].name;
      st.final_overlap = final_ov[b];
      st.converged = final_ov[b] >= conv_need(b);
      st.first_converged_round = first[b] > 0 ? first[b] - 1 : 0;
      if (first[b] == 0) st.converged = false;
      rep.areas.push_back(std::move(st));
    }
    return rep;
  }

  // ~~~~ pure measurements (no state change, no plasticity) ~~~~

  // Winners in `target` when exactly the given assemblies fire once through
  // the current weights. Fiber and area inhibition are ignored: this reads
  // the synapse state, it does not run the system.
  std::vector<NeuronId> cap_from_input(AreaIdx target,
                                       std::span<const SourceCap> sources) const {
    require_built();
    const Area& B = areas_[target];
    std::fill(si_.begin(), si_.begin() + B.n, 0.0);
    std::vector<SourceCap> src(sources.begin(), sources.end());
    std::sort(src.begin(), src.end(),
              [](const SourceCap& x, const SourceCap& y) { return x.first < y.first; });
    bool any = false;
    for (const auto& [s, cap] : src) {
      if (!cap || cap->empty()) continue;
      const detail::Csr* c = bundle(s, target);
      if (!c) continue;
      for (NeuronId i : *cap)
        for (std::uint32_t e = c->offs[i]; e < c->offs[i + 1]; ++e)
          si_[c->tgt[e]] += pow_[c->wexp[e]];
      any = true;
    }
    std::vector<NeuronId> out;
    if (any) topk(B.n, B.k, out);
    return out;
  }

  std::vector<NeuronId> cap_from_input(AreaIdx target, AreaIdx source,
                                       const std::vector<NeuronId>& cap) const {
    SourceCap sc{source, &cap};
    return cap_from_input(target, std::span<const SourceCap>(&sc, 1));
  }

  static std::uint32_t count_overlap(const std::vector<NeuronId>& a,
                                     const std::vector<NeuronId>& b) {
    std::uint32_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib)
        ++ia;
      else if (*ib < *ia)
        ++ib;
      else
        ++n, ++ia, ++ib;
    }
    return n;
  }

  // ~~~~ reuse ~~~~

  // Back to the freshly built state: same graph, all exponents zero, empty
  // caps, every population inhibited with pop 0, plasticity on.
  void reset_learning() {
    require_built();
    if (full_reset_needed_) {
      for (Fiber& f : fibers_) {
        std::fill(f.ab.wexp.begin(), f.ab.wexp.end(), 0);
        std::fill(f.ba.wexp.begin(), f.ba.wexp.end(), 0);
      }
      for (detail::Csr& r : rec_) std::fill(r.wexp.begin(), r.wexp.end(), 0);
      full_reset_needed_ = false;
    } else {
      for (auto& [csr, row] : dirty_)
        std::memset(csr->wexp.data() + csr->offs[row], 0,
                    csr->offs[row + 1] - csr->offs[row]);
    }
    dirty_.clear();
    for (Area& ar : areas_) {
      ar.cap.clear();
      ar.engaged = false;
      ar.pops = {0};
    }
    for (Fiber& f : fibers_) f.pops = {0};
    plasticity_ = true;
  }

  friend void save_brain(const Brain& b, std::ostream& os);
  friend Brain load_brain(std::istream& is);

 private:
  void require_built() const {
    if (!built_) throw EngineError("brain not built");
  }
  void require_unbuilt() const {
    if (built_) throw EngineError("brain already built");
  }

  Fiber& fiber_ref(std::string_view a, std::string_view b) {
    AreaIdx ia = area_index(a), ib = area_index(b);
    if (built_) {
      std::int32_t fi = fiber_at_[ia][ib];
      if (fi < 0) throw EngineError("no fiber between areas");
      return fibers_[fi];
    }
    for (Fiber& f : fibers_)
      if ((f.a == ia && f.b == ib) || (f.a == ib && f.b == ia)) return f;
    throw EngineError("no fiber between areas");
  }

  const detail::Csr* open_bundle(AreaIdx s, AreaIdx t) const {
    if (s == t) {
      if (areas_[s].explicit_area) return nullptr;
      return rec_[s].offs.empty() ? nullptr : &rec_[s];
    }
    std::int32_t fi = fiber_at_[s][t];
    if (fi < 0) return nullptr;
    const Fiber& f = fibers_[fi];
    if (!f.disinhibited()) return nullptr;
    const detail::Csr& c = f.a == s ? f.ab : f.ba;
    return c.offs.empty() ? nullptr : &c;
  }

  detail::Csr* open_bundle_mut(AreaIdx s, AreaIdx t) {
    return const_cast<detail::Csr*>(open_bundle(s, t));
  }

  // Top-k of the scratch inputs, positive entries only; ties break to the
  // lower index. Result sorted ascending.
  void topk(std::uint32_t n, std::uint32_t k, std::vector<NeuronId>& out) const {
    cand_.clear();
    for (std::uint32_t i = 0; i < n; ++i)
      if (si_[i] > 0.0) cand_.push_back(i);
    if (cand_.size() > k) {
      auto cmp = [this](NeuronId x, NeuronId y) {
        if (si_[x] != si_[y]) return si_[x] > si_[y];
        return x < y;
      };
      std::nth_element(cand_.begin(), cand_.begin() + k, cand_.end(), cmp);
      cand_.resize(k);
    }
    std::sort(cand_.begin(), cand_.end());
    out = cand_;
  }

  std::uint32_t conv_need(AreaIdx b) const {
    return static_cast<std::uint32_t>(
        std::ceil(cfg_.convergence * areas_[b].k));
  }

  BrainConfig cfg_;
  std::vector<Area> areas_;
  std::vector<Fiber> fibers_;
  std::vector<detail::Csr> rec_;
  std::unordered_map<std::string, AreaIdx> by_name_;
  std::vector<std::vector<std::int32_t>> fiber_at_;
  std::vector<double> pow_;
  bool built_ = false;
  bool plasticity_ = true;
  bool full_reset_needed_ = false;
  std::uint64_t steps_ = 0;

  mutable std::vector<double> si_;
  mutable std::vector<NeuronId> cand_;
  std::vector<std::uint8_t> member_;
  std::vector<std::vector<NeuronId>> staged_;
  std::vector<char> updated_;
  std::vector<const std::vector<NeuronId>*> fire_;
  std::vector<std::pair<detail::Csr*, std::uint32_t>> dirty_;
};

}  // namespace ac
