#include "mlsspf/venn.hpp"

#include <algorithm>
#include <set>

#include "mlsspf/errors.hpp"

namespace mlsspf {

Partition::Partition(std::vector<HfSet> blocks) : blocks_(std::move(blocks)) { build(false); }

Partition Partition::canonical(std::vector<HfSet> blocks) {
  for (const auto& b : blocks)
    if (b.empty()) throw Error("partition block is empty");
  std::sort(blocks.begin(), blocks.end(),
            [](const HfSet& a, const HfSet& b) { return a.elements().front() < b.elements().front(); });
  return Partition(std::move(blocks));
}

Partition Partition::staged(std::vector<HfSet> blocks) {
  Partition p;
  p.blocks_ = std::move(blocks);
  p.build(true);
  return p;
}

void Partition::build(bool allow_empty) {
  if (blocks_.size() > kMaxPlaces) throw LimitExceeded("more than 64 places");
  auto index = std::make_shared<std::unordered_map<HfSet, Place, HfSetHash>>();
  std::vector<HfSet> all;
  for (Place p = 0; p < blocks_.size(); ++p) {
    if (!allow_empty && blocks_[p].empty()) throw Error("partition block is empty");
    for (const auto& e : blocks_[p].elements()) {
      if (!index->emplace(e, p).second) throw Error("partition blocks overlap at " + e.to_string());
      all.push_back(e);
    }
  }
  unionset_ = HfSet::make(std::move(all));
  index_ = std::move(index);
}

PlaceSet Partition::nonempty_places() const {
  PlaceSet s;
  for (Place p = 0; p < blocks_.size(); ++p)
    if (!blocks_[p].empty()) s.insert(p);
  return s;
}

std::optional<Place> Partition::place_of(const HfSet& e) const {
  if (!index_) return std::nullopt;
  auto it = index_->find(e);
  if (it == index_->end()) return std::nullopt;
  return it->second;
}

bool Partition::outer_member(const HfSet& y) const { return y.subset_of(unionset_) && !unionset_.contains(y); }

std::vector<HfSet> Partition::blocks_of(PlaceSet a) const {
  std::vector<HfSet> out;
  for (auto p : a.places()) out.push_back(blocks_.at(p));
  return out;
}

HfSet Partition::union_of(PlaceSet a) const { return big_union(blocks_of(a)); }

Partition::Signature Partition::signature(const HfSet& y) const {
  Signature s;
  for (const auto& e : y.elements()) {
    if (auto p = place_of(e))
      s.node.insert(*p);
    else
      s.inside = false;
  }
  return s;
}

std::optional<PlaceSet> Partition::union_node(const HfSet& y) const {
  const Signature s = signature(y);
  if (!s.inside) return std::nullopt;
  std::size_t total = 0;
  for (auto p : s.node.places()) total += blocks_[p].size();
  if (total != y.size()) return std::nullopt;
  return s.node;
}

std::pair<Partition, ImMap> venn_partition(const Assignment& m) {
  std::vector<std::string> names;
  std::vector<const HfSet*> values;
  for (const auto& [v, s] : m) {
    names.push_back(v);
    values.push_back(&s);
  }
  std::map<HfSet, std::vector<bool>> sig;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (const auto& e : values[i]->elements()) {
      auto [it, fresh] = sig.try_emplace(e, std::vector<bool>(values.size(), false));
      it->second[i] = true;
    }
  std::map<std::vector<bool>, std::vector<HfSet>> classes;
  for (const auto& [e, s] : sig) classes[s].push_back(e);
  std::vector<HfSet> blocks;
  for (auto& [s, elems] : classes) blocks.push_back(HfSet::from_sorted(std::move(elems)));
  Partition part = Partition::canonical(std::move(blocks));

  ImMap im;
  for (std::size_t i = 0; i < values.size(); ++i) {
    PlaceSet ps;
    for (Place p = 0; p < part.size(); ++p)
      if (part.block(p).subset_of(*values[i])) ps.insert(p);
    im[names[i]] = ps;
  }
  return {std::move(part), std::move(im)};
}

bool finer_than(const std::vector<HfSet>& fine, const std::vector<HfSet>& coarse) {
  for (const auto& z : coarse) {
    std::vector<HfSet> parts;
    for (const auto& y : fine)
      if (y.subset_of(z)) parts.push_back(y);
    if (big_union(parts) != z) return false;
  }
  return true;
}

ColoredBoard::ColoredBoard(Partition sigma, std::map<PlaceSet, PlaceSet> targets, PlaceSet red,
                           std::vector<PlaceSet> pow_generators)
    : sigma_(std::move(sigma)), targets_(std::move(targets)), red_(red), pow_gen_(std::move(pow_generators)) {
  std::sort(pow_gen_.begin(), pow_gen_.end());
  pow_gen_.erase(std::unique(pow_gen_.begin(), pow_gen_.end()), pow_gen_.end());
}

PlaceSet ColoredBoard::target(PlaceSet a) const {
  auto it = targets_.find(a);
  return it == targets_.end() ? PlaceSet{} : it->second;
}

bool ColoredBoard::is_pow_node(PlaceSet a) const {
  return std::any_of(pow_gen_.begin(), pow_gen_.end(), [&](PlaceSet g) { return a.subset_of(g); });
}

std::vector<PlaceSet> ColoredBoard::pow_nodes(std::size_t limit) const {
  std::set<PlaceSet> out;
  for (PlaceSet g : pow_gen_) {
    if (g.size() >= 63 || (std::size_t{1} << g.size()) > limit) throw LimitExceeded("too many pow-nodes");
    // Walk all submasks of g.
    const std::uint64_t bits = g.bits();
    std::uint64_t sub = bits;
    while (true) {
      out.insert(PlaceSet::from_bits(sub));
      if (out.size() > limit) throw LimitExceeded("too many pow-nodes");
      if (sub == 0) break;
      sub = (sub - 1) & bits;
    }
  }
  return {out.begin(), out.end()};
}

ColoredBoard induced_board(const Partition& sigma) {
  if (!is_transitive(sigma.unionset())) throw NotTransitive("unionset of the partition is not transitive");
  std::map<PlaceSet, PlaceSet> targets;
  for (Place q = 0; q < sigma.size(); ++q)
    for (const auto& e : sigma.block(q).elements()) targets[sigma.signature(e).node].insert(q);
  return ColoredBoard(sigma, std::move(targets), {}, {});
}

ColoredBoard color_board(const ColoredBoard& core, const Formula& phi, const ImMap& im) {
  auto lookup = [&](const std::string& v) {
    auto it = im.find(v);
    if (it == im.end()) throw UnboundVariable(v);
    return it->second;
  };
  PlaceSet red;
  std::vector<PlaceSet> gens;
  for (const auto& l : phi.literals()) {
    if (l.kind == LiteralKind::Enum || l.kind == LiteralKind::Finite) red |= lookup(l.vars[0]);
    if (l.kind == LiteralKind::Pow) gens.push_back(lookup(l.vars[1]));
  }
  return ColoredBoard(core.sigma(), core.targets(), red, std::move(gens));
}

std::string transitivize_aux_name(const Assignment& m) {
  std::string name = "__closure";
  for (int i = 1; m.count(name); ++i) name = "__closure" + std::to_string(i);
  return name;
}

Assignment transitivize(const Assignment& m) {
  std::vector<HfSet> values;
  for (const auto& [v, s] : m) values.push_back(s);
  Assignment out = m;
  out[transitivize_aux_name(m)] = transitive_closure(big_union(values));
  return out;
}

CanonicalBoard canonical_board(const Formula& phi, const Assignment& m) {
  auto [sigma, im] = venn_partition(m);
  ColoredBoard board = color_board(induced_board(sigma), phi, im);
  return {std::move(sigma), std::move(im), std::move(board)};
}

}  // namespace mlsspf
