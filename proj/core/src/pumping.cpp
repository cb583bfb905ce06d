#include "mlsspf/pumping.hpp"

#include <algorithm>
#include <set>

#include "mlsspf/errors.hpp"

namespace mlsspf {

PlaceSet PumpingCycle::place_set() const {
  PlaceSet s;
  for (auto q : places) s.insert(q);
  return s;
}

PumpingCycle PumpingCycle::rotated_to(Place q) const {
  const auto it = std::find(places.begin(), places.end(), q);
  if (it == places.end()) throw Error("place " + std::to_string(q) + " is not on the cycle");
  const std::size_t i = static_cast<std::size_t>(it - places.begin()), n = places.size();
  PumpingCycle out;
  for (std::size_t j = 0; j < n; ++j) {
    out.places.push_back(places[(i + j) % n]);
    out.nodes.push_back(nodes[(i + j) % n]);
  }
  return out;
}

std::string PumpingCycle::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < places.size(); ++i) s += nodes[i].to_string() + "," + std::to_string(places[i]) + ",";
  return s + (nodes.empty() ? std::string("{}") : nodes.front().to_string());
}

Report validate_cycle(const ColoredBoard& board, const PumpingCycle& c) {
  Report r;
  const std::size_t n = c.places.size();
  r.add("edges", n > 0 && c.nodes.size() == n, "cycle needs as many nodes as places, at least one");
  if (!r.ok("edges")) return r;
  for (std::size_t i = 0; i < n; ++i) {
    const Place q = c.places[i];
    r.add("edges", q < board.num_places() && board.target(c.nodes[i]).contains(q),
          "place " + std::to_string(q) + " is not a target of " + c.nodes[i].to_string());
    r.add("edges", c.nodes[(i + 1) % n].contains(q),
          "place " + std::to_string(q) + " is not in " + c.nodes[(i + 1) % n].to_string());
  }
  const std::set<Place> ps(c.places.begin(), c.places.end());
  const std::set<PlaceSet> ns(c.nodes.begin(), c.nodes.end());
  r.add("simple", ps.size() == n && ns.size() == n, "a place or node repeats");
  r.add("green", !c.place_set().meets(board.red()), "cycle through a red place");
  return r;
}

namespace {

struct CycleSearch {
  const ColoredBoard& board;
  std::size_t max_len;
  std::vector<PlaceSet> nodes;
  std::vector<PumpingCycle> out;
  PumpingCycle cur;

  // cur holds q_0, C_1, ..., q_i with nodes[0] unset; extend or close.
  void extend() {
    const Place q0 = cur.places.front(), qi = cur.places.back();
    for (auto c0 : nodes) {
      if (!c0.contains(qi) || !board.target(c0).contains(q0)) continue;
      if (std::find(cur.nodes.begin() + 1, cur.nodes.end(), c0) != cur.nodes.end()) continue;
      PumpingCycle done = cur;
      done.nodes.front() = c0;
      out.push_back(std::move(done));
    }
    if (cur.places.size() == max_len) return;
    for (auto c : nodes) {
      if (!c.contains(qi) || std::find(cur.nodes.begin() + 1, cur.nodes.end(), c) != cur.nodes.end()) continue;
      for (auto q : (board.target(c) & board.green()).places()) {
        if (q <= q0 || std::find(cur.places.begin(), cur.places.end(), q) != cur.places.end()) continue;
        cur.places.push_back(q);
        cur.nodes.push_back(c);
        extend();
        cur.places.pop_back();
        cur.nodes.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<PumpingCycle> find_pumping_cycles(const ColoredBoard& board, std::size_t max_len) {
  CycleSearch s{board, max_len, {}, {}, {}};
  for (const auto& [a, t] : board.targets())
    if (!t.empty()) s.nodes.push_back(a);
  if (max_len == 0) return {};
  for (auto q0 : board.green().places()) {
    s.cur = PumpingCycle{{q0}, {PlaceSet{}}};
    s.extend();
  }
  std::sort(s.out.begin(), s.out.end(), [](const PumpingCycle& a, const PumpingCycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
  });
  return s.out;
}

std::vector<HfSet> unused_elements(const FormativeProcess& p, Stage i0, Place q0) {
  const HfSet members = big_union(p.unionset(i0));
  std::vector<HfSet> out;
  for (const auto& t : p.block(i0, q0).elements())
    if (!members.contains(t)) out.push_back(t);
  return out;
}

Report is_pumping_event(const FormativeProcess& p, const ColoredBoard& board, const PumpingEvent& e) {
  Report r;
  const Report cyc = validate_cycle(board, e.cycle);
  r.add("cycle", cyc.ok(), cyc.first_failure());
  if (!cyc.ok()) return r;
  if (e.i0 > p.xi()) {
    r.fail("i", "stage " + std::to_string(e.i0) + " past the last stage");
    return r;
  }
  const PlaceSet places = e.cycle.place_set();
  r.add("i", places.contains(e.q0), "place " + std::to_string(e.q0) + " is not on the cycle");
  if (r.ok("i"))
    r.add("i", !unused_elements(p, e.i0, e.q0).empty(),
          "place " + std::to_string(e.q0) + " has no unused element at stage " + std::to_string(e.i0));
  r.pass("ii");
  for (const auto& [a, ge] : grand_events(p))
    if (a.meets(places))
      r.add("ii", ge >= e.i0, "node " + a.to_string() + " has its grand event at " + std::to_string(ge));
  r.pass("iii");
  for (auto b : e.cycle.nodes)
    for (auto q : b.places())
      r.add("iii", !p.block(e.i0, q).empty(),
            "node " + b.to_string() + " has an empty place at stage " + std::to_string(e.i0));
  return r;
}

PlaceSet closed_cover(const FormativeProcess& p, const ColoredBoard& board, const PumpingCycle& c) {
  PlaceSet w = c.place_set();
  if (w.meets(board.red())) throw NoClosedCover("cycle through a red place");
  const auto ge = grand_events(p);
  for (bool grown = true; grown;) {
    grown = false;
    const auto nodes = pow_nodes_meeting(board, w);
    if (!nodes) throw NoClosedCover("a pow node meeting " + w.to_string() + " has no targets");
    for (auto a : *nodes) {
      const PlaceSet trash = local_trashes(ge, p.xi(), board, a);
      if (trash.meets(w)) continue;
      const PlaceSet green = trash & board.green();
      if (green.empty()) throw NoClosedCover("pow node " + a.to_string() + " has no green local trash");
      w.insert(green.front());
      grown = true;
      break;
    }
  }
  return w;
}

}  // namespace mlsspf
