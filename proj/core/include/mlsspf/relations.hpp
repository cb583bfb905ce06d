#pragma once

#include <cstddef>
#include <vector>

#include "mlsspf/formula.hpp"
#include "mlsspf/report.hpp"
#include "mlsspf/venn.hpp"

namespace mlsspf {

// beta[q] is the place of Σ̂ standing for place q of Σ.
using BlockBijection = std::vector<Place>;

BlockBijection identity_bijection(std::size_t n);
PlaceSet map_node(const BlockBijection& beta, PlaceSet a);

struct RelationOptions {
  // Up to this many places the ∈-simulation sweep visits every X ⊆ Σ.
  std::size_t exhaustive_places = 12;
  std::size_t pow_limit = kDefaultLimit;
  // Weakens imitation (1) to its "only if" half.
  bool only_if = false;
};

// Items: bijection, in_simulation, pow_simulation, red_simulation.
Report simulates_upwards(const ColoredBoard& board, const Partition& hat, const BlockBijection& beta,
                         const RelationOptions& opt = {});

// Items: bijection, (1) targets, (2) unions, (3) pow_nodes, (4) red_finite, and (4') red_cardinality
// when `upwards`.
Report imitates(const ColoredBoard& board, const Partition& hat, const BlockBijection& beta, bool upwards,
                const RelationOptions& opt = {});

// M'(v) = ⋃β[Im(v)]
Assignment transfer_assignment(const ImMap& im, const Partition& hat, const BlockBijection& beta);

// For each literal of Φ⁻: forward.i and, for literals free of Pow and Enum, backward.i;
// for each positive Finite(v): finite.i comparing |M(v)| and |M'(v)|.
Report literal_transfer_report(const Formula& phi, const Assignment& m, const Assignment& m2,
                               const Limits& limits = {});

// Targets of every node of a (possibly non-transitive) partition, keyed by node.
std::map<PlaceSet, PlaceSet> partition_targets(const Partition& sigma);

}  // namespace mlsspf
