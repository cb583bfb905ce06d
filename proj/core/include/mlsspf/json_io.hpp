#pragma once

// JSON forms of the library's values. Readers throw FormatError.

#include <nlohmann/json.hpp>

#include "mlsspf/formative.hpp"
#include "mlsspf/formula.hpp"
#include "mlsspf/ms_refine.hpp"
#include "mlsspf/pumping.hpp"
#include "mlsspf/report.hpp"
#include "mlsspf/venn.hpp"

namespace mlsspf::json {

using Json = nlohmann::ordered_json;

// Nested arrays in canonical order: ∅ = [], {∅,{∅}} = [[],[[]]].
Json from_hf(const HfSet& s);
// Re-canonicalizes; sets *duplicates when some array repeats a member.
HfSet to_hf(const Json& j, bool* duplicates = nullptr);

Json from_places(PlaceSet s);
PlaceSet to_places(const Json& j);

Json from_assignment(const Assignment& m);
Assignment to_assignment(const Json& j);

Json from_partition(const Partition& sigma);
Json from_board(const ColoredBoard& board);
ColoredBoard to_board(const Json& j);

Json from_process(const FormativeProcess& p);
FormativeProcess to_process(const Json& j);

Json from_overlay(const MsOverlay& o);
MsOverlay to_overlay(const Json& j);

Json from_witness(const ImitationWitness& w);
ImitationWitness to_witness(const Json& j);

Json from_report(const Report& r);
Report to_report(const Json& j);

Json from_cycle(const PumpingCycle& c);
PumpingCycle to_cycle(const Json& j);
Json from_event(const PumpingEvent& e);
PumpingEvent to_event(const Json& j);

Json from_options(const WitnessOptions& o);
WitnessOptions to_options(const Json& j);

Json from_certificate(const WitnessCertificate& c);
WitnessCertificate to_certificate(const Json& j);

}  // namespace mlsspf::json
