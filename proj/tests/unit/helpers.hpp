#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <random>
#include <vector>

#include "mlsspf/hf_set.hpp"

namespace testutil {

using mlsspf::HfSet;

inline HfSet S() { return HfSet{}; }
template <class... T>
HfSet S(T... xs) {
  return HfSet::make({xs...});
}

// Von Neumann naturals: 0=∅, n+1 = n ∪ {n}.
inline HfSet nat(unsigned n) {
  HfSet x;
  for (unsigned i = 0; i < n; ++i) x = x.with(x);
  return x;
}

// Zermelo chain: z(0)=∅, z(n+1)={z(n)}.
inline HfSet zchain(unsigned n) {
  HfSet x;
  for (unsigned i = 0; i < n; ++i) x = HfSet::singleton(x);
  return x;
}

// Pool of distinct HF sets grown rank by rank from ∅.
inline std::vector<HfSet> random_pool(std::mt19937_64& rng, std::size_t n, unsigned max_width = 3) {
  std::vector<HfSet> pool{HfSet{}};
  std::vector<HfSet> seen{HfSet{}};
  while (pool.size() < n) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<unsigned> width(1, max_width);
    std::vector<HfSet> elems;
    for (unsigned k = width(rng); k > 0; --k) elems.push_back(pool[pick(rng)]);
    HfSet s = HfSet::make(elems);
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) {
      seen.push_back(s);
      pool.push_back(s);
    }
  }
  return pool;
}

// Transitive set of about `n` elements.
inline HfSet random_transitive(std::mt19937_64& rng, std::size_t n, unsigned max_width = 3) {
  return HfSet::make(random_pool(rng, n, max_width));
}

// Naive model: unsorted children, possibly with repeats.
struct Naive {
  std::vector<Naive> kids;
};

inline Naive to_naive(const HfSet& s, std::mt19937_64* shuffle = nullptr) {
  Naive n;
  for (const auto& e : s.elements()) {
    n.kids.push_back(to_naive(e, shuffle));
    if (shuffle && ((*shuffle)() & 3) == 0) n.kids.push_back(to_naive(e, shuffle));
  }
  if (shuffle) std::shuffle(n.kids.begin(), n.kids.end(), *shuffle);
  return n;
}

inline bool naive_eq(const Naive& a, const Naive& b);
inline bool naive_in(const Naive& x, const Naive& s) {
  return std::any_of(s.kids.begin(), s.kids.end(), [&](const Naive& k) { return naive_eq(x, k); });
}
inline bool naive_sub(const Naive& a, const Naive& b) {
  return std::all_of(a.kids.begin(), a.kids.end(), [&](const Naive& k) { return naive_in(k, b); });
}
inline bool naive_eq(const Naive& a, const Naive& b) { return naive_sub(a, b) && naive_sub(b, a); }

inline unsigned naive_rank(const Naive& a) {
  unsigned r = 0;
  for (const auto& k : a.kids) r = std::max(r, naive_rank(k) + 1);
  return r;
}

// All subsets by bitmask.
inline std::vector<HfSet> all_subsets(const HfSet& u) {
  std::vector<HfSet> out;
  auto el = u.elements();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << el.size()); ++m) {
    std::vector<HfSet> sub;
    for (std::size_t i = 0; i < el.size(); ++i)
      if (m >> i & 1) sub.push_back(el[i]);
    out.push_back(HfSet::make(sub));
  }
  return out;
}

// { Y ⊆ ⋃X : Y meets every z ∈ X } by filtering every subset of ⋃X.
inline HfSet pow_star_by_filtering(const std::vector<HfSet>& family) {
  std::vector<HfSet> all;
  for (const auto& z : family)
    for (const auto& e : z.elements()) all.push_back(e);
  std::vector<HfSet> out;
  for (const auto& y : all_subsets(HfSet::make(all))) {
    bool ok = true;
    for (const auto& z : family) {
      bool hit = false;
      for (const auto& e : y.elements()) hit = hit || z.contains(e);
      ok = ok && hit;
    }
    if (ok) out.push_back(y);
  }
  return HfSet::make(out);
}

}  // namespace testutil

namespace testutil {

// Calls f on every set partition of `elems` (restricted growth strings).
inline void for_each_partition(const std::vector<HfSet>& elems,
                               const std::function<void(const std::vector<HfSet>&)>& f) {
  const std::size_t n = elems.size();
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t m) {
    if (i == n) {
      std::vector<std::vector<HfSet>> groups(m);
      for (std::size_t k = 0; k < n; ++k) groups[a[k]].push_back(elems[k]);
      std::vector<HfSet> out;
      for (auto& g : groups) out.push_back(HfSet::make(g));
      f(out);
      return;
    }
    for (std::size_t b = 0; b <= m; ++b) {
      a[i] = b;
      rec(i + 1, b == m ? m + 1 : m);
    }
  };
  rec(0, 0);
}

// Random assignment of `vars` variables over the members of a random pool.
inline std::map<std::string, HfSet> random_assignment(std::mt19937_64& rng, std::size_t vars,
                                                     std::size_t universe) {
  auto pool = random_pool(rng, universe);
  std::map<std::string, HfSet> m;
  for (std::size_t i = 0; i < vars; ++i) {
    std::vector<HfSet> el;
    for (const auto& e : pool)
      if (rng() % 2) el.push_back(e);
    m["v" + std::to_string(i)] = HfSet::make(el);
  }
  return m;
}

}  // namespace testutil

namespace testutil {

// Random partition of the members of u into at most `max_blocks` nonempty blocks.
inline std::vector<HfSet> random_blocks(std::mt19937_64& rng, const HfSet& u, std::size_t max_blocks) {
  std::vector<std::vector<HfSet>> groups(std::max<std::size_t>(1, std::min(max_blocks, u.size())));
  for (const auto& e : u.elements()) groups[rng() % groups.size()].push_back(e);
  std::vector<HfSet> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(HfSet::make(g));
  return out;
}

}  // namespace testutil
