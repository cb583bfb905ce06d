#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mlsspf/hf_set.hpp"
#include "mlsspf/place_set.hpp"
#include "mlsspf/report.hpp"
#include "mlsspf/venn.hpp"

namespace mlsspf {

using Stage = unsigned;

// Staged growth q^(0), ..., q^(ξ) of blocks over a fixed set of places, with
// the trace A_0, ..., A_{ξ-1}. Construction only checks shapes; use
// validate_process for the structural conditions.
class FormativeProcess {
 public:
  FormativeProcess() = default;
  // stages[μ][q]; every stage has the same width; trace has ξ entries.
  FormativeProcess(std::vector<std::vector<HfSet>> stages, std::vector<PlaceSet> trace, bool weak = false);

  Stage xi() const { return static_cast<Stage>(stages_.size()) - 1; }
  std::size_t num_places() const { return width_; }
  PlaceSet places() const { return PlaceSet::all(static_cast<unsigned>(width_)); }
  bool weak() const { return weak_; }

  const std::vector<std::vector<HfSet>>& stages() const { return stages_; }
  const std::vector<HfSet>& stage(Stage mu) const { return stages_.at(mu); }
  const HfSet& block(Stage mu, Place q) const { return stages_.at(mu).at(q); }
  const std::vector<PlaceSet>& trace() const { return trace_; }
  PlaceSet trace_at(Stage nu) const { return trace_.at(nu); }

  Partition final_partition() const { return Partition::staged(stages_.back()); }
  const HfSet& final_block(Place q) const { return stages_.back().at(q); }

  // ⋃P^(μ)
  const HfSet& unionset(Stage mu) const { return unions_.at(mu); }
  // A^(μ) as a list of blocks and its union.
  std::vector<HfSet> blocks_of(Stage mu, PlaceSet a) const;
  HfSet union_of(Stage mu, PlaceSet a) const { return big_union(blocks_of(mu, a)); }

  // Δ^(ν)(q) = q^(ν+1) ∖ ⋃P^(ν)
  HfSet delta(Stage nu, Place q) const;
  PlaceSet history_targets(Stage nu) const;

  // Least μ with e ∈ ⋃P^(μ).
  std::optional<Stage> birth(const HfSet& e) const;
  // Place holding e at the final stage.
  std::optional<Place> place_of(const HfSet& e) const;
  // Least μ at which some placed z contains e.
  std::optional<Stage> first_use(const HfSet& e) const;

  // e ∈ ℘*(A^(μ)) with the places read off the final stage.
  bool in_pow_star_at(const HfSet& e, Stage mu, PlaceSet a) const;

  bool operator==(const FormativeProcess& o) const {
    return stages_ == o.stages_ && trace_ == o.trace_ && weak_ == o.weak_;
  }

 private:
  struct Info {
    Stage birth;
    Place place;
    std::optional<Stage> first_use;
  };
  std::vector<std::vector<HfSet>> stages_{{}};
  std::vector<PlaceSet> trace_;
  bool weak_ = false;
  std::size_t width_ = 0;
  std::vector<HfSet> unions_{HfSet{}};
  std::shared_ptr<const std::unordered_map<HfSet, Info, HfSetHash>> info_;
};

// One item per condition: shape, disjoint, monotone, initial, final, prolongation.2,
// prolongation.3, history, and coherence for strong processes.
Report validate_process(const FormativeProcess& p);

// Strong process ending in Σ with the same places. Throws NotTransitive.
FormativeProcess synthesize_process(const Partition& sigma);

// Least ν with ⋃A^(•) ∈ ⋃P^(ν+1)∖⋃P^(ν), else ξ.
Stage grand_event(const FormativeProcess& p, PlaceSet a);
// Minimum over the nodes, ξ when empty.
Stage ge_min(const FormativeProcess& p, const std::vector<PlaceSet>& nodes);
// Every node with a grand event before ξ.
std::map<PlaceSet, Stage> grand_events(const FormativeProcess& p);

enum class ElementStatus { Unused, New, Used };
// Throws Error unless e ∈ ⋃P^(•).
ElementStatus element_status(const FormativeProcess& p, Stage mu, const HfSet& e);

PlaceSet local_trashes(const FormativeProcess& p, const ColoredBoard& board, PlaceSet a);
PlaceSet local_trashes(const std::map<PlaceSet, Stage>& ge, Stage xi, const ColoredBoard& board, PlaceSet a);

bool is_closed(const FormativeProcess& p, const ColoredBoard& board, PlaceSet w);
// The ℘-nodes that meet W; nullopt when some of them has an empty target set
// (and so no local trash at all).
std::optional<std::vector<PlaceSet>> pow_nodes_meeting(const ColoredBoard& board, PlaceSet w);

struct SalientOrdinals {
  std::vector<Stage> arrow;
  std::vector<Stage> grand;
};
SalientOrdinals salient_ordinals(const FormativeProcess& p, Stage k);

}  // namespace mlsspf
