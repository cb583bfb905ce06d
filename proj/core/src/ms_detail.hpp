#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "mlsspf/formative.hpp"
#include "mlsspf/ms_refine.hpp"

namespace mlsspf::detail {

using boost::multiprecision::cpp_int;

inline cpp_int pow_star_count(const std::vector<HfSet>& family) {
  cpp_int total = 1;
  for (const auto& z : family) total *= (cpp_int(1) << z.size()) - 1;
  return total;
}

inline std::size_t count_in_pow_star(const HfSet& pool, const std::vector<HfSet>& family) {
  for (const auto& z : family)
    if (z.empty()) return 0;
  std::size_t n = 0;
  for (const auto& e : pool.elements())
    if (in_pow_star(e, family)) ++n;
  return n;
}

inline BlockBijection inverse(const BlockBijection& beta) {
  BlockBijection inv(beta.size());
  for (Place q = 0; q < beta.size(); ++q) inv.at(beta[q]) = q;
  return inv;
}

inline bool is_bijection(const BlockBijection& beta, std::size_t n) {
  if (beta.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto b : beta) {
    if (b >= n || seen[b]) return false;
    seen[b] = true;
  }
  return true;
}

inline PlaceSet nonempty_at(const FormativeProcess& p, Stage mu) {
  PlaceSet s;
  for (Place q = 0; q < p.num_places(); ++q)
    if (!p.block(mu, q).empty()) s.insert(q);
  return s;
}

// Every submask of `base`, or, past `cap` places, the realized nodes of p inside it.
inline std::vector<PlaceSet> sweep_nodes(const FormativeProcess& p, PlaceSet base, std::size_t cap) {
  std::vector<PlaceSet> out;
  if (base.size() <= cap) {
    const std::uint64_t bits = base.bits();
    out.push_back(PlaceSet{});
    for (std::uint64_t sub = bits; sub; sub = (sub - 1) & bits) out.push_back(PlaceSet::from_bits(sub));
    std::sort(out.begin(), out.end());
    return out;
  }
  const Partition fin = p.final_partition();
  out.push_back(PlaceSet{});
  for (const auto& e : p.unionset(p.xi()).elements()) out.push_back(fin.signature(e).node & base);
  for (auto a : p.trace()) out.push_back(a & base);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<HfSet> hat_blocks(const FormativeProcess& hat, Stage a, const BlockBijection& beta, PlaceSet node) {
  return hat.blocks_of(a, map_node(beta, node));
}

}  // namespace mlsspf::detail
