#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mlsspf/formula.hpp"
#include "mlsspf/hf_set.hpp"
#include "mlsspf/place_set.hpp"

namespace mlsspf {

// Indexed family of pairwise disjoint blocks; the index of a block is its place.
class Partition {
 public:
  Partition() = default;
  // Blocks must be nonempty and pairwise disjoint; order is kept.
  explicit Partition(std::vector<HfSet> blocks);
  // As above, but places are reordered by the canonical order of each block's least element.
  static Partition canonical(std::vector<HfSet> blocks);
  // Allows empty blocks, for intermediate stages of a process.
  static Partition staged(std::vector<HfSet> blocks);

  std::size_t size() const { return blocks_.size(); }
  const HfSet& block(Place p) const { return blocks_[p]; }
  const std::vector<HfSet>& blocks() const { return blocks_; }
  PlaceSet places() const { return PlaceSet::all(static_cast<unsigned>(blocks_.size())); }
  PlaceSet nonempty_places() const;

  const HfSet& unionset() const { return unionset_; }
  std::optional<Place> place_of(const HfSet& e) const;
  // y ⊆ ⋃Σ and y ∉ ⋃Σ
  bool outer_member(const HfSet& y) const;

  // A^(•) as a list of blocks, and its union.
  std::vector<HfSet> blocks_of(PlaceSet a) const;
  HfSet union_of(PlaceSet a) const;

  struct Signature {
    PlaceSet node;       // places whose block meets y
    bool inside = true;  // every element of y lies in ⋃Σ
  };
  Signature signature(const HfSet& y) const;

  // Node whose union equals y, if y is a union of blocks with every block contributing.
  std::optional<PlaceSet> union_node(const HfSet& y) const;

  bool operator==(const Partition& o) const { return blocks_ == o.blocks_; }

 private:
  void build(bool allow_empty);

  std::vector<HfSet> blocks_;
  HfSet unionset_;
  std::shared_ptr<const std::unordered_map<HfSet, Place, HfSetHash>> index_;
};

using ImMap = std::map<std::string, PlaceSet>;

std::pair<Partition, ImMap> venn_partition(const Assignment& m);

// Every member of `coarse` is a union of members of `fine`.
bool finer_than(const std::vector<HfSet>& fine, const std::vector<HfSet>& coarse);

class ColoredBoard {
 public:
  ColoredBoard() = default;
  ColoredBoard(Partition sigma, std::map<PlaceSet, PlaceSet> targets, PlaceSet red,
               std::vector<PlaceSet> pow_generators);

  const Partition& sigma() const { return sigma_; }
  std::size_t num_places() const { return sigma_.size(); }
  PlaceSet places() const { return sigma_.places(); }

  PlaceSet target(PlaceSet a) const;
  // Nodes with a nonempty target set, ascending.
  const std::map<PlaceSet, PlaceSet>& targets() const { return targets_; }

  PlaceSet red() const { return red_; }
  PlaceSet green() const { return places() - red_; }
  bool is_red(Place p) const { return red_.contains(p); }

  // ℘-nodes: the downward closure of the generators.
  const std::vector<PlaceSet>& pow_generators() const { return pow_gen_; }
  bool is_pow_node(PlaceSet a) const;
  // Enumerates every ℘-node; throws LimitExceeded past `limit`.
  std::vector<PlaceSet> pow_nodes(std::size_t limit = kDefaultLimit) const;

  bool operator==(const ColoredBoard&) const = default;

 private:
  Partition sigma_;
  std::map<PlaceSet, PlaceSet> targets_;
  PlaceSet red_;
  std::vector<PlaceSet> pow_gen_;
};

// Places and T; F and Q empty. Throws NotTransitive unless ⋃Σ is transitive.
ColoredBoard induced_board(const Partition& sigma);

ColoredBoard color_board(const ColoredBoard& core, const Formula& phi, const ImMap& im);

// Name of the auxiliary variable transitivize would add.
std::string transitivize_aux_name(const Assignment& m);
// Adds one variable bound to the transitive closure of ⋃M[X].
Assignment transitivize(const Assignment& m);

// Convenience: Venn partition, board core and coloring in one go.
struct CanonicalBoard {
  Partition sigma;
  ImMap im;
  ColoredBoard board;
};
CanonicalBoard canonical_board(const Formula& phi, const Assignment& m);

}  // namespace mlsspf
