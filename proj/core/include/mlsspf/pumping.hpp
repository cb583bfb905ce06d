#pragma once

// Pumping cycles and events on colored boards, the pump executor and witness
// certificates for formulas with ¬Finite literals.

#include <optional>
#include <string>
#include <vector>

#include "mlsspf/formative.hpp"
#include "mlsspf/formula.hpp"
#include "mlsspf/ms_refine.hpp"
#include "mlsspf/relations.hpp"
#include "mlsspf/report.hpp"
#include "mlsspf/venn.hpp"

namespace mlsspf {

// C_0, q_0, C_1, ..., q_n, C_{n+1} = C_0, stored as places[i] = q_i and
// nodes[i] = C_i. Edges: q_i ∈ T(C_i) and q_i ∈ C_{i+1}.
struct PumpingCycle {
  std::vector<Place> places;
  std::vector<PlaceSet> nodes;

  std::size_t length() const { return places.size(); }
  PlaceSet place_set() const;
  // Step j of a round (1 ≤ j ≤ n+1) uses C_j and feeds q_j, indices mod n+1.
  PlaceSet step_node(std::size_t j) const { return nodes[j % nodes.size()]; }
  Place step_place(std::size_t j) const { return places[j % places.size()]; }
  // The same cycle read from place q (which must occur in it).
  PumpingCycle rotated_to(Place q) const;
  std::string to_string() const;

  auto operator<=>(const PumpingCycle&) const = default;
};

// Items: edges, simple, green.
Report validate_cycle(const ColoredBoard& board, const PumpingCycle& c);

// Every simple pumping cycle with at most max_len places, each listed once,
// starting at its least place. Ordered by length, then lexicographically.
std::vector<PumpingCycle> find_pumping_cycles(const ColoredBoard& board, std::size_t max_len);

struct PumpingEvent {
  Place q0 = 0;
  Stage i0 = 0;
  PumpingCycle cycle;
  bool operator==(const PumpingEvent&) const = default;
};

// q0^(i0) minus ⋃⋃P^(i0), in canonical order.
std::vector<HfSet> unused_elements(const FormativeProcess& p, Stage i0, Place q0);

// Items: cycle, i, ii, iii.
Report is_pumping_event(const FormativeProcess& p, const ColoredBoard& board, const PumpingEvent& e);

// Least closed set containing the cycle's places; throws NoClosedCover.
PlaceSet closed_cover(const FormativeProcess& p, const ColoredBoard& board, const PumpingCycle& c);

struct PumpOptions {
  // Every step of a counted round must offer three candidates.
  bool strict_three = false;
  std::size_t max_warmups = 6;
  std::size_t limit = kDefaultLimit;
  bool operator==(const PumpOptions&) const = default;
};

struct PumpRound {
  // Hat stage after the round's last step.
  Stage end = 0;
  bool warmup = false;
  // Candidates offered at each step.
  std::vector<std::size_t> offered;
  bool operator==(const PumpRound&) const = default;
};

struct PumpResult {
  FormativeProcess hat;
  MsOverlay overlay;
  // Absent when no round ran.
  std::optional<HfSet> t0, t1;
  std::vector<PumpRound> rounds;
  // The hat stage standing for stage i0 of the original process.
  Stage reentry = 0;
};

// Stage i0 split with the least unused element t0 of q0 alone on the Surplus side.
MsOverlay pump_start(const FormativeProcess& p, const PumpingEvent& e);

// Copies stages 0..i0, then runs k counted rounds of the cycle, preceded by
// warm-up rounds as needed. Throws CannotWarmUp.
PumpResult pump_rounds(const FormativeProcess& p, const PumpingEvent& e, std::size_t k,
                       const PumpOptions& opt = {});

struct PumpedModel {
  PumpResult pump;
  PastedSegment pasted;
  Assignment assignment;
};

// pump_rounds, then the original segment [i0, ξ] pasted after the re-entry
// stage and the assignment read off the final hat partition.
PumpedModel pump_and_paste(const FormativeProcess& p, const ColoredBoard& board, const ImMap& im,
                           const PumpingEvent& e, PlaceSet cover, std::size_t k, const PumpOptions& opt = {});

struct WitnessOptions {
  std::size_t max_cycle_len = 4;
  // Rounds pumped when checking a candidate event.
  std::size_t check_rounds = 2;
  PumpOptions pump;
  std::size_t pow_limit = kDefaultLimit;
  bool operator==(const WitnessOptions&) const = default;
};

struct WitnessCertificate {
  Formula formula;
  // The (transitive) assignment the board is built on.
  Assignment assignment;
  FormativeProcess process;
  MsOverlay overlay;
  PumpingEvent event;
  PlaceSet closed_cover;
  std::vector<std::string> potential_infinite;
  Report report;
  WitnessOptions options;
  bool operator==(const WitnessCertificate&) const = default;
};

struct PumpCheck {
  PumpedModel model;
  // Items growth.grows, growth.still, weak.*, upward.*, transfer.*.
  Report report;
};

// pump_and_paste with k rounds plus every check a certificate relies on.
PumpCheck check_pump(const Formula& phi, const Assignment& m, const CanonicalBoard& cb, const FormativeProcess& p,
                     const PumpingEvent& e, PlaceSet cover, std::size_t k, const WitnessOptions& opt);

// Throws NotAWitness, NoEvent, NoClosedCover, CoverMissesVariable.
WitnessCertificate certify_witness(const Formula& phi, const Assignment& m, const WitnessOptions& opt = {});

}  // namespace mlsspf
