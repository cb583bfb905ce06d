#pragma once

// Minus/Surplus overlays on formative processes and the imitation checkers.

#include <optional>
#include <vector>

#include "mlsspf/formative.hpp"
#include "mlsspf/relations.hpp"
#include "mlsspf/report.hpp"
#include "mlsspf/venn.hpp"

namespace mlsspf {

// An element placed into a Minus side although it is not a ℘*-assembly of the
// Minus sides of the trace node. `stands_for` is the assembly it replaces,
// which is then treated as placed by the counting checks.
struct Exchange {
  Stage step = 0;
  Place place = 0;
  HfSet placed;
  std::optional<HfSet> stands_for;
  bool operator==(const Exchange&) const = default;
};

// Split of every block of a process into Minus and Surplus, from stage `start`
// up to the last stage of the process. Index with absolute stages.
struct MsOverlay {
  Stage start = 0;
  std::vector<std::vector<HfSet>> minus_sides;
  std::vector<std::vector<HfSet>> surplus_sides;
  std::vector<Exchange> exchanges;

  static MsOverlay all_minus(const FormativeProcess& p, Stage start = 0);

  Stage last() const { return start + static_cast<Stage>(minus_sides.size()) - 1; }
  std::size_t width() const { return minus_sides.empty() ? 0 : minus_sides.front().size(); }
  const HfSet& minus(Stage a, Place q) const { return minus_sides.at(a - start).at(q); }
  const HfSet& surplus(Stage a, Place q) const { return surplus_sides.at(a - start).at(q); }
  HfSet delta_minus(Stage a, Place q) const { return set_difference(minus(a + 1, q), minus(a, q)); }
  HfSet delta_surplus(Stage a, Place q) const { return set_difference(surplus(a + 1, q), surplus(a, q)); }

  std::vector<HfSet> minus_blocks(Stage a, PlaceSet node) const;
  // ⋃ of every Minus side at stage a.
  HfSet minus_union(Stage a) const;
  PlaceSet surplus_places(Stage a) const;
  bool has_surplus(Stage a, PlaceSet node) const { return surplus_places(a).meets(node); }

  // Stand-ins of exchanges made at steps before stage a.
  HfSet virtual_placed(Stage a) const;
  const Exchange* exchange_for(Stage step, const HfSet& placed) const;

  // Appends stage last()+1.
  void push(std::vector<HfSet> minus, std::vector<HfSet> surplus);

  bool operator==(const MsOverlay&) const = default;
};

// γ on [lo, hi], the place bijection q ↦ q̂ and the closed set C (original places).
struct ImitationWitness {
  Stage lo = 0;
  Stage hi = 0;
  std::vector<Stage> gamma;
  BlockBijection places;
  PlaceSet closed;

  Stage at(Stage beta) const { return gamma.at(beta - lo); }
  bool operator==(const ImitationWitness&) const = default;
};

struct ImitationOptions {
  // Above this many places, node sweeps visit only realized nodes.
  std::size_t exhaustive_places = 12;
  std::size_t limit = kDefaultLimit;
};

// Items: shape, split, inductive, delta_minus, delta_surplus, powdisj.
Report validate_overlay(const FormativeProcess& hat, const MsOverlay& o);

// Does stage m of the hat weakly imitate stage k of p upwards?
// Items: bijection, i, vii, viii, x, a, b, c.
Report check_weak_imitation(const FormativeProcess& p, const ColoredBoard& board, Stage k,
                            const FormativeProcess& hat, const MsOverlay& o, Stage m, const BlockBijection& beta,
                            PlaceSet closed, const ImitationOptions& opt = {});

// Items: gamma (precondition; nothing else is checked when it fails), then i .. x.
Report check_segment_imitation(const FormativeProcess& p, const ColoredBoard& board, const FormativeProcess& hat,
                               const MsOverlay& o, const ImitationWitness& w, const ImitationOptions& opt = {});

struct PastedSegment {
  FormativeProcess process;
  MsOverlay overlay;
  ImitationWitness witness;
};

// Extends the hat (whose last stage weakly imitates stage k1 of p) by copies of
// the steps k1 .. k2-1 of p. Throws CardinalityDeficit or NoLocalTrash.
PastedSegment paste_segment(const FormativeProcess& p, const ColoredBoard& board, const FormativeProcess& hat,
                            const MsOverlay& o, const BlockBijection& beta, PlaceSet closed, Stage k1, Stage k2,
                            const ImitationOptions& opt = {});

// Items: weak.*, segment.*, targets, surplus_only, trash_exclusion, then the
// conclusions c0 (targets), c1 (unions), c2 (℘-nodes), c3 (red cardinalities).
// The witness must cover [k', ξ].
Report check_upward_premises(const FormativeProcess& p, const ColoredBoard& board, const FormativeProcess& hat,
                             const MsOverlay& o, const ImitationWitness& w, const ImitationOptions& opt = {});

}  // namespace mlsspf
