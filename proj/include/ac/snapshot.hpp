#pragma once

#include <cstring>
#include <istream>
#include <ostream>

#include "ac/brain.hpp"

// Bit-exact binary state: graph, weight exponents, caps, inhibition sets.
// Single-platform format (native endianness), versioned.

namespace ac {

namespace detail {

inline constexpr char kSnapMagic[4] = {'A', 'C', 'S', 'N'};
inline constexpr std::uint32_t kSnapVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw EngineError("snapshot: truncated stream");
  return v;
}

inline void put_str(std::ostream& os, const std::string& s) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string get_str(std::istream& is) {
  auto n = get<std::uint32_t>(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) throw EngineError("snapshot: truncated stream");
  return s;
}

template <class T>
void put_vec(std::ostream& os, const std::vector<T>& v) {
  put<std::uint64_t>(os, v.size());
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <class T>
std::vector<T> get_vec(std::istream& is) {
  auto n = get<std::uint64_t>(is);
  std::vector<T> v(n);
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(T)));
  if (!is && n > 0) throw EngineError("snapshot: truncated stream");
  return v;
}

inline void put_pops(std::ostream& os, const std::set<std::uint32_t>& pops) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(pops.size()));
  for (std::uint32_t p : pops) put(os, p);
}

inline std::set<std::uint32_t> get_pops(std::istream& is) {
  auto n = get<std::uint32_t>(is);
  std::set<std::uint32_t> s;
  for (std::uint32_t i = 0; i < n; ++i) s.insert(get<std::uint32_t>(is));
  return s;
}

inline void put_csr(std::ostream& os, const Csr& c) {
  put_vec(os, c.offs);
  put_vec(os, c.tgt);
  put_vec(os, c.wexp);
}

inline Csr get_csr(std::istream& is) {
  Csr c;
  c.offs = get_vec<std::uint32_t>(is);
  c.tgt = get_vec<NeuronId>(is);
  c.wexp = get_vec<std::uint8_t>(is);
  return c;
}

}  // namespace detail

inline void save_brain(const Brain& b, std::ostream& os) {
  if (!b.built_) throw EngineError("snapshot: brain not built");
  os.write(detail::kSnapMagic, 4);
  detail::put(os, detail::kSnapVersion);
  detail::put(os, b.cfg_);
  detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(b.areas_.size()));
  for (const Area& a : b.areas_) {
    detail::put_str(os, a.name);
    detail::put(os, a.n);
    detail::put(os, a.k);
    detail::put<std::uint8_t>(os, a.explicit_area);
    detail::put<std::uint8_t>(os, a.engaged);
    detail::put_vec(os, a.cap);
    detail::put_pops(os, a.pops);
  }
  detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(b.fibers_.size()));
  for (const Fiber& f : b.fibers_) {
    detail::put(os, f.a);
    detail::put(os, f.b);
    detail::put<std::uint8_t>(os, f.reciprocal);
    detail::put_pops(os, f.pops);
    detail::put_csr(os, f.ab);
    detail::put_csr(os, f.ba);
  }
  for (const detail::Csr& r : b.rec_) detail::put_csr(os, r);
  detail::put(os, b.plasticity_);
  detail::put(os, b.steps_);
  if (!os) throw EngineError("snapshot: write failed");
}

inline Brain load_brain(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, detail::kSnapMagic, 4) != 0)
    throw EngineError("snapshot: bad magic");
  if (detail::get<std::uint32_t>(is) != detail::kSnapVersion)
    throw EngineError("snapshot: unsupported version");
  auto cfg = detail::get<BrainConfig>(is);
  Brain b(cfg);
  auto na = detail::get<std::uint32_t>(is);
  for (std::uint32_t i = 0; i < na; ++i) {
    Area a;
    a.name = detail::get_str(is);
    a.n = detail::get<std::uint32_t>(is);
    a.k = detail::get<std::uint32_t>(is);
    a.explicit_area = detail::get<std::uint8_t>(is) != 0;
    a.engaged = detail::get<std::uint8_t>(is) != 0;
    a.cap = detail::get_vec<NeuronId>(is);
    a.pops = detail::get_pops(is);
    b.by_name_.emplace(a.name, static_cast<AreaIdx>(b.areas_.size()));
    b.areas_.push_back(std::move(a));
  }
  auto nf = detail::get<std::uint32_t>(is);
  for (std::uint32_t i = 0; i < nf; ++i) {
    Fiber f;
    f.a = detail::get<AreaIdx>(is);
    f.b = detail::get<AreaIdx>(is);
    f.reciprocal = detail::get<std::uint8_t>(is) != 0;
    f.pops = detail::get_pops(is);
    f.ab = detail::get_csr(is);
    f.ba = detail::get_csr(is);
    b.fibers_.push_back(std::move(f));
  }
  b.rec_.resize(na);
  for (std::uint32_t i = 0; i < na; ++i) b.rec_[i] = detail::get_csr(is);
  b.plasticity_ = detail::get<bool>(is);
  b.steps_ = detail::get<std::uint64_t>(is);

  b.pow_.resize(256);
  b.pow_[0] = 1.0;
  for (int m = 1; m < 256; ++m) b.pow_[m] = b.pow_[m - 1] * (1.0 + cfg.beta);
  b.fiber_at_.assign(na, std::vector<std::int32_t>(na, -1));
  for (std::size_t fi = 0; fi < b.fibers_.size(); ++fi) {
    b.fiber_at_[b.fibers_[fi].a][b.fibers_[fi].b] = static_cast<std::int32_t>(fi);
    b.fiber_at_[b.fibers_[fi].b][b.fibers_[fi].a] = static_cast<std::int32_t>(fi);
  }
  std::uint32_t max_n = 0;
  for (const Area& a : b.areas_) max_n = std::max(max_n, a.n);
  b.si_.assign(max_n, 0.0);
  b.member_.assign(max_n, 0);
  b.staged_.resize(na);
  b.updated_.assign(na, 0);
  b.built_ = true;
  b.full_reset_needed_ = true;
  return b;
}

}  // namespace ac
