#include "mlsspf/relations.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "mlsspf/errors.hpp"

namespace mlsspf {

using boost::multiprecision::cpp_int;

BlockBijection identity_bijection(std::size_t n) {
  BlockBijection b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<Place>(i);
  return b;
}

PlaceSet map_node(const BlockBijection& beta, PlaceSet a) {
  PlaceSet out;
  for (auto q : a.places()) out.insert(beta.at(q));
  return out;
}

namespace {

bool check_bijection(Report& r, std::size_t n, const Partition& hat, const BlockBijection& beta) {
  bool ok = beta.size() == n && hat.size() == n;
  if (ok) {
    std::vector<bool> seen(n, false);
    for (auto b : beta) {
      if (b >= n || seen[b]) {
        ok = false;
        break;
      }
      seen[b] = true;
    }
  }
  r.add("bijection", ok, "beta is not a bijection between the places");
  return ok;
}

std::optional<Place> place_of_union(const Partition& p, PlaceSet a) { return p.place_of(p.union_of(a)); }

// Nodes X of Σ with ⋃X ∈ ⋃Σ, and nodes X with ⋃β[X] ∈ ⋃Σ̂ pulled back.
std::vector<PlaceSet> union_nodes(const Partition& sigma, const Partition& hat, const BlockBijection& beta) {
  std::vector<Place> inv(beta.size());
  for (Place q = 0; q < beta.size(); ++q) inv[beta[q]] = q;
  std::vector<PlaceSet> out;
  for (const auto& e : sigma.unionset().elements())
    if (auto n = sigma.union_node(e)) out.push_back(*n);
  for (const auto& e : hat.unionset().elements())
    if (auto n = hat.union_node(e)) out.push_back(map_node(inv, *n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string node_str(PlaceSet a) { return a.to_string(); }

// β(place(⋃X)) == place(⋃β[X]) for the given X.
bool union_membership_agrees(const Partition& sigma, const Partition& hat, const BlockBijection& beta, PlaceSet x) {
  auto orig = place_of_union(sigma, x);
  auto img = place_of_union(hat, map_node(beta, x));
  if (orig.has_value() != img.has_value()) return false;
  return !orig || beta[*orig] == *img;
}

cpp_int pow_star_count(const Partition& p, PlaceSet a) {
  cpp_int total = 1;
  for (auto q : a.places()) total *= (cpp_int(1) << p.block(q).size()) - 1;
  return total;
}

}  // namespace

std::map<PlaceSet, PlaceSet> partition_targets(const Partition& sigma) {
  std::map<PlaceSet, PlaceSet> t;
  for (Place q = 0; q < sigma.size(); ++q)
    for (const auto& e : sigma.block(q).elements()) {
      auto s = sigma.signature(e);
      if (s.inside) t[s.node].insert(q);
    }
  return t;
}

Report simulates_upwards(const ColoredBoard& board, const Partition& hat, const BlockBijection& beta,
                         const RelationOptions& opt) {
  Report r;
  const Partition& sigma = board.sigma();
  const std::size_t n = sigma.size();
  if (!check_bijection(r, n, hat, beta)) return r;

  r.pass("in_simulation");
  if (n <= opt.exhaustive_places) {
    // ⋃β[X] ∈ ⋃β[Y] ⇔ ⋃X ∈ ⋃Y for all Y reduces to comparing the blocks holding the unions.
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const PlaceSet x = PlaceSet::from_bits(bits);
      r.add("in_simulation", union_membership_agrees(sigma, hat, beta, x), "X=" + node_str(x));
    }
  } else {
    for (auto x : union_nodes(sigma, hat, beta))
      r.add("in_simulation", union_membership_agrees(sigma, hat, beta, x), "X=" + node_str(x));
  }

  r.pass("pow_simulation");
  for (auto y : board.pow_nodes(opt.pow_limit)) {
    const HfSet uy = sigma.union_of(y);
    if (uy.size() >= 63 || (std::size_t{1} << uy.size()) > sigma.unionset().size() + 1) continue;
    const HfSet pw = powerset(uy, opt.pow_limit);
    auto x = sigma.union_node(pw);
    if (!x) continue;
    const HfSet hx = hat.union_of(map_node(beta, *x));
    const HfSet hy = hat.union_of(map_node(beta, y));
    bool ok = hy.size() < 63 && hx.size() == (std::size_t{1} << hy.size());
    if (ok)
      for (const auto& t : hx.elements())
        if (!t.subset_of(hy)) {
          ok = false;
          break;
        }
    r.add("pow_simulation", ok, "Y=" + node_str(y) + " X=" + node_str(*x));
  }

  r.pass("red_simulation");
  for (auto s : board.red().places())
    r.add("red_simulation", hat.block(beta[s]).size() == sigma.block(s).size(), "place " + std::to_string(s));
  return r;
}

Report imitates(const ColoredBoard& board, const Partition& hat, const BlockBijection& beta, bool upwards,
                const RelationOptions& opt) {
  Report r;
  const Partition& sigma = board.sigma();
  const std::size_t n = sigma.size();
  if (!check_bijection(r, n, hat, beta)) return r;

  // (1) T̂(β[Γ]) versus β[T(Γ)], over every node realized on either side.
  const auto hat_t = partition_targets(hat);
  std::map<PlaceSet, std::pair<PlaceSet, PlaceSet>> both;
  for (const auto& [a, t] : board.targets()) both[map_node(beta, a)].first = map_node(beta, t);
  for (const auto& [a, t] : hat_t) both[a].second = t;
  r.pass("targets");
  for (const auto& [a, tt] : both) {
    const auto& [orig, img] = tt;
    const bool ok = opt.only_if ? img.subset_of(orig) : img == orig;
    r.add("targets", ok, "hat node " + node_str(a));
  }

  // (2)
  r.pass("unions");
  for (auto x : union_nodes(sigma, hat, beta))
    r.add("unions", union_membership_agrees(sigma, hat, beta, x), "Gamma=" + node_str(x));

  // (3) ℘*(β[Γ]) ⊆ ⋃Σ̂ by counting the members of ⋃Σ̂ assembled from β[Γ].
  r.pass("pow_nodes");
  const auto nodes = board.pow_nodes(opt.pow_limit);
  if (!nodes.empty()) {
    std::map<PlaceSet, std::size_t> assembled;
    for (const auto& e : hat.unionset().elements()) {
      auto s = hat.signature(e);
      if (s.inside) ++assembled[s.node];
    }
    for (auto g : nodes) {
      const PlaceSet hg = map_node(beta, g);
      auto it = assembled.find(hg);
      const std::size_t have = it == assembled.end() ? 0 : it->second;
      r.add("pow_nodes", pow_star_count(hat, hg) == have, "Gamma=" + node_str(g));
    }
  }

  // (4) holds for every finite partition; kept as an explicit item.
  r.pass("red_finite");
  if (upwards) {
    r.pass("red_cardinality");
    for (auto s : board.red().places())
      r.add("red_cardinality", hat.block(beta[s]).size() == sigma.block(s).size(), "place " + std::to_string(s));
  }
  return r;
}

Assignment transfer_assignment(const ImMap& im, const Partition& hat, const BlockBijection& beta) {
  Assignment out;
  for (const auto& [v, a] : im) out[v] = hat.union_of(map_node(beta, a));
  return out;
}

Report literal_transfer_report(const Formula& phi, const Assignment& m, const Assignment& m2,
                               const Limits& limits) {
  Report r;
  const auto& lits = phi.literals();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Literal& l = lits[i];
    const std::string tag = "." + std::to_string(i);
    if (l.kind == LiteralKind::Finite) {
      const auto& v = l.vars[0];
      auto a = m.find(v), b = m2.find(v);
      if (a == m.end()) throw UnboundVariable(v);
      if (b == m2.end()) throw UnboundVariable(v);
      r.add("finite" + tag, a->second.size() == b->second.size(), l.render());
      continue;
    }
    if (l.is_finiteness()) continue;
    const bool before = eval_literal(l, m, limits);
    const bool after = eval_literal(l, m2, limits);
    r.add("forward" + tag, !before || after, l.render());
    if (l.kind != LiteralKind::Pow && l.kind != LiteralKind::Enum)
      r.add("backward" + tag, !after || before, l.render());
  }
  return r;
}

}  // namespace mlsspf
