#include "mlsspf/json_io.hpp"

#include "mlsspf/errors.hpp"

namespace mlsspf::json {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T number(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) throw FormatError(std::string(what) + " must be a natural number");
  return j.get<T>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  return j;
}

Json from_sets(const std::vector<HfSet>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(from_hf(s));
  return a;
}

std::vector<HfSet> to_sets(const Json& j) {
  std::vector<HfSet> v;
  for (const auto& e : array(j, "set list")) v.push_back(to_hf(e));
  return v;
}

Json from_grid(const std::vector<std::vector<HfSet>>& g) {
  Json a = Json::array();
  for (const auto& row : g) a.push_back(from_sets(row));
  return a;
}

std::vector<std::vector<HfSet>> to_grid(const Json& j) {
  std::vector<std::vector<HfSet>> g;
  for (const auto& row : array(j, "stage list")) g.push_back(to_sets(row));
  return g;
}

}  // namespace

Json from_hf(const HfSet& s) {
  Json a = Json::array();
  for (const auto& e : s.elements()) a.push_back(from_hf(e));
  return a;
}

HfSet to_hf(const Json& j, bool* duplicates) {
  if (!j.is_array()) throw FormatError("hereditarily finite set must be a nested array");
  std::vector<HfSet> elems;
  elems.reserve(j.size());
  for (const auto& e : j) elems.push_back(to_hf(e, duplicates));
  HfSet s = HfSet::make(elems);
  if (duplicates && s.size() != elems.size()) *duplicates = true;
  return s;
}

Json from_places(PlaceSet s) {
  Json a = Json::array();
  for (auto p : s.places()) a.push_back(p);
  return a;
}

PlaceSet to_places(const Json& j) {
  PlaceSet s;
  for (const auto& p : array(j, "place list")) s.insert(number<Place>(p, "place"));
  return s;
}

Json from_assignment(const Assignment& m) {
  Json o = Json::object();
  for (const auto& [v, s] : m) o[v] = from_hf(s);
  return o;
}

Assignment to_assignment(const Json& j) {
  if (!j.is_object()) throw FormatError("assignment must be an object");
  Assignment m;
  for (const auto& [v, s] : j.items()) m[v] = to_hf(s);
  return m;
}

Json from_partition(const Partition& sigma) {
  Json a = Json::array();
  for (Place q = 0; q < sigma.size(); ++q) a.push_back({{"id", q}, {"block", from_hf(sigma.block(q))}});
  return a;
}

Json from_board(const ColoredBoard& board) {
  Json t = Json::array();
  for (const auto& [a, ts] : board.targets()) t.push_back({{"node", from_places(a)}, {"places", from_places(ts)}});
  Json gens = Json::array();
  for (auto g : board.pow_generators()) gens.push_back(from_places(g));
  return {{"places", from_partition(board.sigma())},
          {"targets", t},
          {"red", from_places(board.red())},
          {"pow", gens}};
}

ColoredBoard to_board(const Json& j) {
  std::vector<HfSet> blocks;
  for (const auto& p : array(field(j, "places"), "places")) blocks.push_back(to_hf(field(p, "block")));
  std::map<PlaceSet, PlaceSet> targets;
  for (const auto& t : array(field(j, "targets"), "targets"))
    targets[to_places(field(t, "node"))] = to_places(field(t, "places"));
  std::vector<PlaceSet> gens;
  for (const auto& g : array(field(j, "pow"), "pow")) gens.push_back(to_places(g));
  try {
    return ColoredBoard(Partition(std::move(blocks)), std::move(targets), to_places(field(j, "red")), std::move(gens));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("bad board: ") + e.what());
  }
}

Json from_process(const FormativeProcess& p) {
  Json tr = Json::array();
  for (auto a : p.trace()) tr.push_back(from_places(a));
  return {{"stages", from_grid(p.stages())}, {"trace", tr}, {"weak", p.weak()}};
}

FormativeProcess to_process(const Json& j) {
  std::vector<PlaceSet> trace;
  for (const auto& a : array(field(j, "trace"), "trace")) trace.push_back(to_places(a));
  const Json& weak = field(j, "weak");
  if (!weak.is_boolean()) throw FormatError("'weak' must be a boolean");
  try {
    return FormativeProcess(to_grid(field(j, "stages")), std::move(trace), weak.get<bool>());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("bad process: ") + e.what());
  }
}

Json from_overlay(const MsOverlay& o) {
  Json ex = Json::array();
  for (const auto& e : o.exchanges) {
    Json x{{"step", e.step}, {"place", e.place}, {"placed", from_hf(e.placed)}};
    if (e.stands_for) x["standsFor"] = from_hf(*e.stands_for);
    ex.push_back(std::move(x));
  }
  return {{"start", o.start},
          {"minus", from_grid(o.minus_sides)},
          {"surplus", from_grid(o.surplus_sides)},
          {"exchanges", ex}};
}

MsOverlay to_overlay(const Json& j) {
  MsOverlay o;
  o.start = number<Stage>(field(j, "start"), "start");
  o.minus_sides = to_grid(field(j, "minus"));
  o.surplus_sides = to_grid(field(j, "surplus"));
  if (o.minus_sides.size() != o.surplus_sides.size()) throw FormatError("minus and surplus differ in length");
  for (const auto& e : array(field(j, "exchanges"), "exchanges")) {
    Exchange x{number<Stage>(field(e, "step"), "step"), number<Place>(field(e, "place"), "place"),
               to_hf(field(e, "placed")), std::nullopt};
    if (e.contains("standsFor")) x.stands_for = to_hf(e.at("standsFor"));
    o.exchanges.push_back(std::move(x));
  }
  return o;
}

Json from_witness(const ImitationWitness& w) {
  return {{"lo", w.lo}, {"hi", w.hi}, {"gamma", w.gamma}, {"places", w.places}, {"closedSet", from_places(w.closed)}};
}

ImitationWitness to_witness(const Json& j) {
  ImitationWitness w;
  w.lo = number<Stage>(field(j, "lo"), "lo");
  w.hi = number<Stage>(field(j, "hi"), "hi");
  for (const auto& g : array(field(j, "gamma"), "gamma")) w.gamma.push_back(number<Stage>(g, "gamma"));
  for (const auto& p : array(field(j, "places"), "places")) w.places.push_back(number<Place>(p, "place"));
  w.closed = to_places(field(j, "closedSet"));
  if (w.hi < w.lo || w.gamma.size() != w.hi - w.lo + 1) throw FormatError("gamma does not cover [lo, hi]");
  return w;
}

Json from_report(const Report& r) {
  Json items = Json::array();
  for (const auto& i : r.items()) {
    Json x{{"check", i.check}, {"ok", i.ok}};
    if (!i.detail.empty()) x["detail"] = i.detail;
    items.push_back(std::move(x));
  }
  return {{"ok", r.ok()}, {"items", items}};
}

Report to_report(const Json& j) {
  Report r;
  for (const auto& i : array(field(j, "items"), "items")) {
    const Json& ok = field(i, "ok");
    if (!ok.is_boolean() || !field(i, "check").is_string()) throw FormatError("bad report item");
    r.add(i.at("check").get<std::string>(), ok.get<bool>(), i.value("detail", std::string{}));
  }
  return r;
}

Json from_cycle(const PumpingCycle& c) {
  Json nodes = Json::array();
  for (auto a : c.nodes) nodes.push_back(from_places(a));
  return {{"places", c.places}, {"nodes", nodes}};
}

PumpingCycle to_cycle(const Json& j) {
  PumpingCycle c;
  for (const auto& p : array(field(j, "places"), "places")) c.places.push_back(number<Place>(p, "place"));
  for (const auto& a : array(field(j, "nodes"), "nodes")) c.nodes.push_back(to_places(a));
  if (c.places.size() != c.nodes.size()) throw FormatError("cycle needs as many nodes as places");
  return c;
}

Json from_event(const PumpingEvent& e) { return {{"q0", e.q0}, {"i0", e.i0}, {"cycle", from_cycle(e.cycle)}}; }

PumpingEvent to_event(const Json& j) {
  return {number<Place>(field(j, "q0"), "q0"), number<Stage>(field(j, "i0"), "i0"), to_cycle(field(j, "cycle"))};
}

Json from_options(const WitnessOptions& o) {
  return {{"maxCycleLen", o.max_cycle_len},
          {"checkRounds", o.check_rounds},
          {"strictThree", o.pump.strict_three},
          {"maxWarmups", o.pump.max_warmups},
          {"limitPow", o.pow_limit}};
}

WitnessOptions to_options(const Json& j) {
  WitnessOptions o;
  o.max_cycle_len = number<std::size_t>(field(j, "maxCycleLen"), "maxCycleLen");
  o.check_rounds = number<std::size_t>(field(j, "checkRounds"), "checkRounds");
  const Json& st = field(j, "strictThree");
  if (!st.is_boolean()) throw FormatError("'strictThree' must be a boolean");
  o.pump.strict_three = st.get<bool>();
  o.pump.max_warmups = number<std::size_t>(field(j, "maxWarmups"), "maxWarmups");
  o.pow_limit = number<std::size_t>(field(j, "limitPow"), "limitPow");
  o.pump.limit = o.pow_limit;
  return o;
}

Json from_certificate(const WitnessCertificate& c) {
  return {{"formula", c.formula.render()},
          {"assignment", from_assignment(c.assignment)},
          {"process", from_process(c.process)},
          {"overlay", from_overlay(c.overlay)},
          {"event", from_event(c.event)},
          {"closedCover", from_places(c.closed_cover)},
          {"potentialInfinite", c.potential_infinite},
          {"report", from_report(c.report)},
          {"params", from_options(c.options)}};
}

WitnessCertificate to_certificate(const Json& j) {
  WitnessCertificate c;
  const Json& f = field(j, "formula");
  if (!f.is_string()) throw FormatError("'formula' must be a string");
  try {
    c.formula = parse(f.get<std::string>());
  } catch (const SyntaxError& e) {
    throw FormatError(std::string("formula: ") + e.what());
  }
  c.assignment = to_assignment(field(j, "assignment"));
  c.process = to_process(field(j, "process"));
  c.overlay = to_overlay(field(j, "overlay"));
  c.event = to_event(field(j, "event"));
  c.closed_cover = to_places(field(j, "closedCover"));
  for (const auto& v : array(field(j, "potentialInfinite"), "potentialInfinite")) {
    if (!v.is_string()) throw FormatError("variable names must be strings");
    c.potential_infinite.push_back(v.get<std::string>());
  }
  c.report = to_report(field(j, "report"));
  c.options = to_options(field(j, "params"));
  return c;
}

}  // namespace mlsspf::json
