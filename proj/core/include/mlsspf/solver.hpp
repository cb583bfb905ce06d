#pragma once

// Bounded finite-witness search and certificate checking.

#include <cstddef>
#include <optional>
#include <string>

#include "mlsspf/formula.hpp"
#include "mlsspf/json_io.hpp"
#include "mlsspf/pumping.hpp"

namespace mlsspf {

struct SearchBudget {
  // Universe members have rank below max_rank.
  std::size_t max_rank = 4;
  std::size_t max_universe = 5;
  std::size_t max_cycle_len = 4;
  std::size_t pow_limit = kDefaultLimit;
  bool strict_three = false;
};

enum class Verdict { SatWitnessed, SatModel, UnsatWithinBudget, Unknown };
std::string_view verdict_name(Verdict v);

struct DecideResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Assignment> model;
  std::optional<WitnessCertificate> certificate;
  // Assignments examined.
  std::size_t candidates = 0;
};

WitnessOptions witness_options(const SearchBudget& b);

// {verdict, candidates} plus the certificate or the model when present.
json::Json from_decide(const DecideResult& r);

// Transitive sets of at most max_size members, each of rank below max_rank,
// ordered by size, then rank, then canonically.
std::vector<HfSet> transitive_universes(std::size_t max_rank, std::size_t max_size);

// Assignments M with TC(⋃M[X]) a universe of the budget, universes in the order
// above, bindings in canonical order per variable (X_Φ sorted, last varying fastest).
DecideResult decide(const Formula& phi, const SearchBudget& budget);

// Items: recompute (certify_witness on the embedded formula, assignment and
// params reproduces the certificate exactly), process, event, cover, report.
Report verify_certificate(const json::Json& cert);

// Pumps a certificate's event k rounds and pastes the rest of its process.
// The result carries rounds, process, overlay, witness, assignment and a report.
json::Json pump_certificate(const WitnessCertificate& cert, std::size_t k);

}  // namespace mlsspf
