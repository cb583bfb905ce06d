#include <doctest.h>

#include <random>
#include <set>

#include "gen_process.hpp"
#include "helpers.hpp"
#include "mlsspf/errors.hpp"
#include "mlsspf/pumping.hpp"

using namespace mlsspf;
using namespace testutil;

namespace {

struct Simple {
  HfSet a = S(), b = S(a), c = S(b);
  Formula phi = parse("w in x & !Finite(x)");
  Assignment m{{"w", S(a)}, {"x", S(b, c)}};
  CanonicalBoard cb = canonical_board(phi, m);
  FormativeProcess proc = synthesize_process(cb.sigma);
  PlaceSet q = PlaceSet::of({1});
  PumpingCycle cycle{{1}, {PlaceSet::of({1})}};
};

// Edges read off ℘* directly: A → q iff q's block meets ℘*(A).
bool edge_to(const Partition& sigma, PlaceSet a, Place q) {
  if (a.empty()) return false;
  return meets(pow_star(sigma.blocks_of(a)), sigma.block(q));
}

// All cycles by brute force over place sequences anchored at their least place
// and arbitrary node tuples.
std::set<PumpingCycle> brute_cycles(const ColoredBoard& board, std::size_t max_len) {
  const Partition& sigma = board.sigma();
  const unsigned n = static_cast<unsigned>(sigma.size());
  std::vector<PlaceSet> nodes;
  for (std::uint64_t b = 1; b < (std::uint64_t{1} << n); ++b) nodes.push_back(PlaceSet::from_bits(b));
  std::set<PumpingCycle> out;
  std::vector<Place> seq;
  const auto close = [&](const std::vector<Place>& ps) {
    const std::size_t len = ps.size();
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      PumpingCycle c{ps, {}};
      for (auto i : idx) c.nodes.push_back(nodes[i]);
      bool ok = std::set<PlaceSet>(c.nodes.begin(), c.nodes.end()).size() == len;
      for (std::size_t i = 0; i < len && ok; ++i)
        ok = edge_to(sigma, c.nodes[i], ps[i]) && c.nodes[(i + 1) % len].contains(ps[i]) && !board.is_red(ps[i]);
      if (ok) out.insert(c);
      std::size_t k = 0;
      while (k < len && ++idx[k] == nodes.size()) idx[k++] = 0;
      if (k == len) break;
    }
  };
  const auto rec = [&](auto& self) -> void {
    close(seq);
    if (seq.size() == max_len) return;
    for (Place q = seq.front() + 1; q < n; ++q)
      if (std::find(seq.begin(), seq.end(), q) == seq.end()) {
        seq.push_back(q);
        self(self);
        seq.pop_back();
      }
  };
  for (Place q0 = 0; q0 < n; ++q0) {
    seq = {q0};
    rec(rec);
  }
  return out;
}

}  // namespace

TEST_CASE("find_pumping_cycles: examples") {
  Simple ex;
  const auto cs = find_pumping_cycles(ex.cb.board, 4);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0] == ex.cycle);
  CHECK(validate_cycle(ex.cb.board, cs[0]).ok());

  ColoredBoard red(ex.cb.sigma, ex.cb.board.targets(), ex.cb.sigma.places(), {});
  CHECK(find_pumping_cycles(red, 4).empty());
  CHECK(find_pumping_cycles(ex.cb.board, 0).empty());

  // Ladder a=∅, b={a}, c={b}, d={c}; blocks {a,c} and {b,d}.
  const HfSet a = S(), b = S(a), c = S(b), d = S(c);
  const Partition lad = Partition::canonical({S(a, c), S(b, d)});
  const ColoredBoard lb = induced_board(lad);
  const auto lc = find_pumping_cycles(lb, 4);
  REQUIRE(lc.size() == 1);
  CHECK(lc[0] == PumpingCycle{{0, 1}, {PlaceSet::of({1}), PlaceSet::of({0})}});
  CHECK(lc[0].rotated_to(1) == PumpingCycle{{1, 0}, {PlaceSet::of({0}), PlaceSet::of({1})}});
}

TEST_CASE("property: cycle search agrees with brute force") {
  std::mt19937_64 rng(11);
  int with_cycles = 0;
  for (int round = 0; round < 40; ++round) {
    const HfSet u = random_transitive(rng, 4 + rng() % 6);
    const Partition sigma = Partition::canonical(random_blocks(rng, u, 2 + rng() % 2));
    const ColoredBoard board = random_colored_board(rng, sigma);
    const auto found = find_pumping_cycles(board, 3);
    const std::set<PumpingCycle> got(found.begin(), found.end());
    CHECK(got.size() == found.size());
    CHECK(got == brute_cycles(board, 3));
    for (const auto& c : found) CHECK(validate_cycle(board, c).ok());
    if (!found.empty()) ++with_cycles;
  }
  CHECK(with_cycles >= 10);
}

TEST_CASE("is_pumping_event") {
  Simple ex;
  Report r = is_pumping_event(ex.proc, ex.cb.board, {1, 3, ex.cycle});
  CHECK_MESSAGE(r.ok(), r.first_failure());
  for (auto i : {"cycle", "i", "ii", "iii"}) CHECK(r.has(i));
  CHECK(unused_elements(ex.proc, 3, 1) == std::vector<HfSet>{ex.c});

  Report early = is_pumping_event(ex.proc, ex.cb.board, {1, 1, ex.cycle});
  CHECK_FALSE(early.ok("iii"));

  ColoredBoard red(ex.cb.sigma, ex.cb.board.targets(), ex.q, {});
  Report rr = is_pumping_event(ex.proc, red, {1, 3, ex.cycle});
  CHECK_FALSE(rr.ok("cycle"));
  CHECK_FALSE(rr.has("i"));

  // p is not on the cycle.
  CHECK_FALSE(is_pumping_event(ex.proc, ex.cb.board, {0, 3, ex.cycle}).ok("i"));
}

TEST_CASE("is_pumping_event (ii): an early grand event next to the cycle") {
  // Item (ii) against grand_event over every node meeting the cycle.
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    const HfSet u = random_transitive(rng, 4 + rng() % 6);
    const Partition sigma = Partition::canonical(random_blocks(rng, u, 2 + rng() % 2));
    const ColoredBoard board = induced_board(sigma);
    const FormativeProcess p = synthesize_process(sigma);
    for (const auto& c : find_pumping_cycles(board, 2))
      for (Stage i0 = 0; i0 <= p.xi(); ++i0) {
        const Report r = is_pumping_event(p, board, {c.places[0], i0, c});
        bool ii = true;
        const unsigned n = static_cast<unsigned>(sigma.size());
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
          const PlaceSet a = PlaceSet::from_bits(bits);
          if (a.meets(c.place_set()) && grand_event(p, a) < i0) ii = false;
        }
        CHECK(r.ok("ii") == ii);
        ++checked;
      }
  }
  CHECK(checked >= 20);
}

TEST_CASE("closed_cover") {
  Simple ex;
  CHECK(closed_cover(ex.proc, ex.cb.board, ex.cycle) == ex.q);

  ColoredBoard red(ex.cb.sigma, ex.cb.board.targets(), ex.q, {});
  CHECK_THROWS_AS(closed_cover(ex.proc, red, ex.cycle), NoClosedCover);

  std::mt19937_64 rng(21);
  int covers = 0;
  for (int round = 0; round < 60; ++round) {
    const HfSet u = random_transitive(rng, 4 + rng() % 6);
    const Partition sigma = Partition::canonical(random_blocks(rng, u, 2 + rng() % 3));
    const ColoredBoard board = random_colored_board(rng, sigma);
    const FormativeProcess p = synthesize_process(sigma);
    for (const auto& c : find_pumping_cycles(board, 2)) {
      try {
        const PlaceSet w = closed_cover(p, board, c);
        CHECK(c.place_set().subset_of(w));
        CHECK(is_closed(p, board, w));
        ++covers;
      } catch (const NoClosedCover&) {
        // Then no closed set contains the cycle among those reachable by adding trashes.
        CHECK_FALSE(is_closed(p, board, c.place_set()));
      }
    }
  }
  CHECK(covers >= 10);
}

TEST_CASE("pump_rounds: simple witness") {
  Simple ex;
  const PumpingEvent e{1, 3, ex.cycle};
  const PumpResult none = pump_rounds(ex.proc, e, 0);
  CHECK(none.hat.stages() == ex.proc.stages());
  CHECK(none.hat.trace() == ex.proc.trace());
  CHECK(none.rounds.empty());
  CHECK(none.reentry == 3);

  const PumpResult one = pump_rounds(ex.proc, e, 1);
  const HfSet d = S(ex.c), dd = S(d), bd = S(ex.b, d), cd = S(ex.c, d);
  REQUIRE(one.rounds.size() == 2);
  CHECK(one.rounds[0].warmup);
  CHECK_FALSE(one.rounds[1].warmup);
  CHECK(one.t0 == ex.c);
  CHECK(one.t1 == dd);
  CHECK(one.reentry == 5);
  CHECK(one.hat.block(5, 1) == S(ex.b, ex.c, d, dd, bd, cd));
  CHECK(one.hat.block(5, 0) == S(ex.a));
  CHECK(one.overlay.minus(5, 1) == S(ex.b, dd));
  CHECK(one.overlay.minus(5, 1).size() == ex.proc.block(3, 1).size());
  CHECK(one.overlay.surplus(5, 1) == S(ex.c, d, bd, cd));
  CHECK(validate_overlay(one.hat, one.overlay).ok());
  CHECK(validate_process(one.hat).ok());

  const Report w = check_weak_imitation(ex.proc, ex.cb.board, 3, one.hat, one.overlay, one.reentry,
                                        identity_bijection(2), ex.q);
  CHECK_MESSAGE(w.ok(), w.first_failure());
  for (auto i : {"i", "vii", "viii", "x", "a", "b", "c"}) CHECK(w.has(i));

  PumpOptions strict;
  strict.strict_three = true;
  const PumpResult s = pump_rounds(ex.proc, e, 1, strict);
  for (std::size_t i = 0; i + 1 < s.rounds.size(); ++i) CHECK(s.rounds[i].warmup);
  CHECK(s.rounds.back().offered.front() >= 3);

  PumpOptions tight;
  tight.max_warmups = 0;
  CHECK_THROWS_AS(pump_rounds(ex.proc, e, 1, tight), CannotWarmUp);
}

TEST_CASE("pump_rounds: growth, stillness, unusedness") {
  Simple ex;
  const PumpResult three = pump_rounds(ex.proc, {1, 3, ex.cycle}, 3);
  Stage from = 3;
  for (const auto& r : three.rounds) {
    CHECK(three.hat.block(from, 1).size() < three.hat.block(r.end, 1).size());
    CHECK(three.hat.block(r.end, 0) == ex.proc.block(3, 0));
    from = r.end;
  }
  for (Stage a = 3; a < three.hat.xi(); ++a) {
    const HfSet fresh = three.hat.delta(a, 1);
    for (const auto& y : fresh.elements())
      CHECK(element_status(three.hat, a + 1, y) == ElementStatus::Unused);
  }
}

TEST_CASE("pump_rounds: ladder") {
  const HfSet a = S(), b = S(a), c = S(b), d = S(c);
  const Partition lad = Partition::canonical({S(a, c), S(b, d)});
  const ColoredBoard lb = induced_board(lad);
  const FormativeProcess p = synthesize_process(lad);
  const PumpingCycle cyc = find_pumping_cycles(lb, 4).at(0);
  std::optional<PumpingEvent> ev;
  for (Stage i0 = p.xi() + 1; i0-- > 0 && !ev;)
    for (auto q0 : cyc.places)
      if (!ev && is_pumping_event(p, lb, {q0, i0, cyc.rotated_to(q0)}).ok()) ev = PumpingEvent{q0, i0, cyc.rotated_to(q0)};
  REQUIRE(ev);
  const PlaceSet cover = closed_cover(p, lb, cyc);
  for (std::size_t k : {1u, 2u, 3u}) {
    const PumpResult r = pump_rounds(p, *ev, k);
    Stage from = ev->i0;
    for (const auto& rd : r.rounds) {
      for (auto q : cyc.places) CHECK(r.hat.block(from, q).size() < r.hat.block(rd.end, q).size());
      from = rd.end;
    }
    for (Place q = 0; q < 2; ++q) CHECK(r.overlay.minus(r.reentry, q).size() == p.block(ev->i0, q).size());
    CHECK(validate_overlay(r.hat, r.overlay).ok());
    const Report w = check_weak_imitation(p, lb, ev->i0, r.hat, r.overlay, r.reentry, identity_bijection(2), cover);
    CHECK_MESSAGE(w.ok(), w.first_failure());
  }
}

TEST_CASE("pump_and_paste preserves the literals") {
  Simple ex;
  for (std::size_t k : {0u, 1u, 5u}) {
    const PumpedModel pm = pump_and_paste(ex.proc, ex.cb.board, ex.cb.im, {1, 3, ex.cycle}, ex.q, k);
    const Report t = literal_transfer_report(ex.phi, ex.m, pm.assignment);
    CHECK_MESSAGE(t.ok(), t.first_failure());
    CHECK(pm.assignment.at("w") == ex.m.at("w"));
    if (k > 0) CHECK(pm.assignment.at("x").size() > ex.m.at("x").size());
    const Report up = check_upward_premises(ex.proc, ex.cb.board, pm.pasted.process, pm.pasted.overlay,
                                            pm.pasted.witness);
    CHECK_MESSAGE(up.ok(), up.first_failure());
  }
}

TEST_CASE("certify_witness") {
  Simple ex;
  const WitnessCertificate cert = certify_witness(ex.phi, ex.m);
  CHECK(cert.event == PumpingEvent{1, 3, ex.cycle});
  CHECK(cert.closed_cover == ex.q);
  CHECK(cert.potential_infinite == std::vector<std::string>{"x"});
  CHECK_MESSAGE(cert.report.ok(), cert.report.first_failure());
  CHECK(cert.overlay.surplus(3, 1) == S(ex.c));
  CHECK(certify_witness(ex.phi, ex.m) == cert);

  CHECK_THROWS_AS(certify_witness(parse("!Finite(x)"), {{"x", S()}}), NoEvent);
  CHECK_THROWS_AS(certify_witness(parse("w = x & !Finite(x)"), ex.m), NotAWitness);
  // Im(w) = {p} lies off the only cycle.
  CHECK_THROWS_AS(certify_witness(parse("w in x & !Finite(w)"), ex.m), CoverMissesVariable);
}
