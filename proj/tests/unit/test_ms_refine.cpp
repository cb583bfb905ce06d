#include <doctest.h>

#include <random>

#include "gen_process.hpp"
#include "helpers.hpp"
#include "mlsspf/errors.hpp"
#include "mlsspf/ms_refine.hpp"

using namespace mlsspf;
using namespace testutil;

namespace {

struct Simple {
  HfSet a = S(), b = S(a), c = S(b);
  Partition sigma = Partition({S(a), S(b, c)});
  PlaceSet p = PlaceSet::of({0}), q = PlaceSet::of({1});
  FormativeProcess proc{{{S(), S()}, {S(a), S()}, {S(a), S(b)}, {S(a), S(b, c)}}, {PlaceSet{}, p, q}};
  ColoredBoard board = induced_board(sigma);
};

ImitationWitness identity_witness(Stage lo, Stage hi, PlaceSet closed = {}) {
  ImitationWitness w{lo, hi, {}, identity_bijection(2), closed};
  for (Stage b = lo; b <= hi; ++b) w.gamma.push_back(b);
  return w;
}

bool all_items_ok(const Report& r, std::initializer_list<const char*> items) {
  for (auto i : items)
    if (!r.has(i) || !r.ok(i)) return false;
  return true;
}

}  // namespace

TEST_CASE("validate_overlay") {
  Simple ex;
  CHECK(validate_overlay(ex.proc, MsOverlay::all_minus(ex.proc)).ok());
  CHECK(validate_overlay(ex.proc, MsOverlay::all_minus(ex.proc, 2)).ok());

  MsOverlay moved = MsOverlay::all_minus(ex.proc);
  moved.minus_sides[3][1] = S(ex.c);
  moved.surplus_sides[3][1] = S(ex.b);
  Report r = validate_overlay(ex.proc, moved);
  CHECK(r.ok("split"));
  CHECK_FALSE(r.ok("inductive"));

  MsOverlay overlap = MsOverlay::all_minus(ex.proc);
  overlap.surplus_sides[3][1] = S(ex.c);
  CHECK_FALSE(validate_overlay(ex.proc, overlap).ok("split"));

  MsOverlay short_one = MsOverlay::all_minus(ex.proc);
  short_one.minus_sides.pop_back();
  short_one.surplus_sides.pop_back();
  CHECK_FALSE(validate_overlay(ex.proc, short_one).ok("shape"));
}

TEST_CASE("validate_overlay: Surplus assemblies") {
  // q carries Surplus {c} from stage 3; a step through {q} adds d = {c}, a Surplus assembly.
  Simple ex;
  const HfSet d = S(ex.c);
  FormativeProcess hat({{S(), S()}, {S(ex.a), S()}, {S(ex.a), S(ex.b)}, {S(ex.a), S(ex.b, ex.c)},
                        {S(ex.a), S(ex.b, ex.c, d)}},
                       {PlaceSet{}, ex.p, ex.q, ex.q}, true);
  MsOverlay o;
  o.start = 3;
  o.push({S(ex.a), S(ex.b)}, {S(), S(ex.c)});
  o.push({S(ex.a), S(ex.b)}, {S(), S(ex.c, d)});
  CHECK(validate_overlay(hat, o).ok());

  MsOverlay wrong = o;
  wrong.minus_sides[1][1] = S(ex.b, d);
  wrong.surplus_sides[1][1] = S(ex.c);
  Report r = validate_overlay(hat, wrong);
  CHECK_FALSE(r.ok("delta_minus"));
  CHECK_FALSE(r.ok("powdisj"));

  MsOverlay exchanged = wrong;
  exchanged.exchanges.push_back({3, 1, d, std::nullopt});
  CHECK(validate_overlay(hat, exchanged).ok());
}

TEST_CASE("check_weak_imitation examples") {
  Simple ex;
  for (Stage k = 0; k <= ex.proc.xi(); ++k) {
    Report r = check_weak_imitation(ex.proc, ex.board, k, ex.proc, MsOverlay::all_minus(ex.proc), k,
                                    identity_bijection(2), PlaceSet{});
    CHECK_MESSAGE(r.ok(), r.first_failure());
    CHECK(all_items_ok(r, {"i", "vii", "viii", "x", "a", "b", "c"}));
  }

  MsOverlay skew = MsOverlay::all_minus(ex.proc);
  skew.minus_sides[3][1] = S(ex.b);
  skew.surplus_sides[3][1] = S(ex.c);
  Report r = check_weak_imitation(ex.proc, ex.board, 3, ex.proc, skew, 3, identity_bijection(2), ex.q);
  CHECK_FALSE(r.ok("i"));
  CHECK(r.ok("viii"));

  Report outside = check_weak_imitation(ex.proc, ex.board, 3, ex.proc, skew, 3, identity_bijection(2), PlaceSet{});
  CHECK_FALSE(outside.ok("viii"));

  Report bad = check_weak_imitation(ex.proc, ex.board, 3, ex.proc, skew, 3, BlockBijection{0, 0}, ex.q);
  CHECK_FALSE(bad.ok("bijection"));
}

TEST_CASE("check_weak_imitation: red places and (b)") {
  Simple ex;
  ColoredBoard red(ex.sigma, ex.board.targets(), ex.q, {});
  MsOverlay skew = MsOverlay::all_minus(ex.proc);
  skew.minus_sides[3][1] = S(ex.b);
  skew.surplus_sides[3][1] = S(ex.c);
  CHECK_FALSE(check_weak_imitation(ex.proc, red, 3, ex.proc, skew, 3, identity_bijection(2), ex.q).ok("vii"));

  // ⋃{q̂} = {b, c} already sits in p̂ while q carries Surplus.
  const HfSet bc = S(ex.b, ex.c);
  FormativeProcess hat({{S(), S()}, {S(ex.a), S()}, {S(ex.a), S(ex.b)}, {S(ex.a), S(ex.b, ex.c)},
                        {S(ex.a, bc), S(ex.b, ex.c)}},
                       {PlaceSet{}, ex.p, ex.q, ex.q}, true);
  MsOverlay o;
  o.start = 4;
  o.push({S(ex.a, bc), S(ex.b)}, {S(), S(ex.c)});
  Report r = check_weak_imitation(ex.proc, ex.board, 3, hat, o, 4, identity_bijection(2), ex.q);
  CHECK_FALSE(r.ok("b"));
}

TEST_CASE("check_segment_imitation examples") {
  Simple ex;
  Report r = check_segment_imitation(ex.proc, ex.board, ex.proc, MsOverlay::all_minus(ex.proc), identity_witness(0, 3));
  CHECK_MESSAGE(r.ok(), r.first_failure());
  CHECK(all_items_ok(r, {"gamma", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"}));

  ImitationWitness w = identity_witness(0, 3);
  std::swap(w.gamma[1], w.gamma[2]);
  Report bad = check_segment_imitation(ex.proc, ex.board, ex.proc, MsOverlay::all_minus(ex.proc), w);
  CHECK_FALSE(bad.ok("gamma"));
  CHECK_FALSE(bad.has("i"));

  // Distributing into the wrong place breaks the union bookkeeping.
  FormativeProcess other({{S(), S()}, {S(ex.a), S()}, {S(ex.a, ex.b), S()}, {S(ex.a, ex.b), S(ex.c)}},
                         {PlaceSet{}, ex.p, ex.p}, true);
  CHECK_FALSE(check_segment_imitation(ex.proc, ex.board, other, MsOverlay::all_minus(other), identity_witness(0, 3))
                  .ok("ii"));
}

TEST_CASE("paste_segment: degenerate start reproduces the segment") {
  Simple ex;
  for (Stage k1 = 0; k1 <= 3; ++k1) {
    FormativeProcess hat = truncate(ex.proc, k1);
    auto out = paste_segment(ex.proc, ex.board, hat, MsOverlay::all_minus(hat, k1), identity_bijection(2), PlaceSet{},
                             k1, 3);
    CHECK(out.process.stages() == ex.proc.stages());
    CHECK(out.process.trace() == ex.proc.trace());
    CHECK(out.witness.gamma.size() == 4 - k1);
    Report r = check_segment_imitation(ex.proc, ex.board, out.process, out.overlay, out.witness);
    CHECK_MESSAGE(r.ok(), r.first_failure());
    CHECK(validate_overlay(out.process, out.overlay).ok());
  }
}

TEST_CASE("check_upward_premises") {
  Simple ex;
  Report r = check_upward_premises(ex.proc, ex.board, ex.proc, MsOverlay::all_minus(ex.proc), identity_witness(0, 3));
  CHECK_MESSAGE(r.ok(), r.first_failure());
  for (auto i : {"targets", "surplus_only", "trash_exclusion", "c0", "c1", "c2", "c3"}) CHECK(r.has(i));

  // An extra hat step after the imitated range carrying Minus material.
  const HfSet d = S(ex.c);
  FormativeProcess longer({{S(), S()}, {S(ex.a), S()}, {S(ex.a), S(ex.b)}, {S(ex.a), S(ex.b, ex.c)},
                           {S(ex.a), S(ex.b, ex.c, d)}},
                          {PlaceSet{}, ex.p, ex.q, ex.q}, true);
  Report b4 = check_upward_premises(ex.proc, ex.board, longer, MsOverlay::all_minus(longer), identity_witness(0, 3));
  CHECK_FALSE(b4.ok("surplus_only"));

  Report partial = check_upward_premises(ex.proc, ex.board, ex.proc, MsOverlay::all_minus(ex.proc),
                                         identity_witness(0, 2));
  CHECK_FALSE(partial.ok("segment"));
}

TEST_CASE("(v)/(vi) agree with an exhaustive node sweep") {
  // Oracle: every node Γ alive at the step and every place q, no reduction to the trace node.
  std::mt19937_64 rng(41);
  int seen = 0;
  for (int round = 0; round < 120 && seen < 40; ++round) {
    auto c = random_paste_case(rng);
    if (!c) continue;
    const Stage m = c->hat.xi();
    if (!check_weak_imitation(c->p, c->board, c->k1, c->hat, c->overlay, m, identity_bijection(c->p.num_places()),
                              c->closed)
             .ok())
      continue;
    PastedSegment out;
    try {
      out = paste_segment(c->p, c->board, c->hat, c->overlay, identity_bijection(c->p.num_places()), c->closed, c->k1,
                          c->k2);
    } catch (const Error&) {
      continue;
    }
    ++seen;
    const auto& h = out.process;
    const auto& o = out.overlay;
    const std::size_t n = c->p.num_places();
    bool v_ok = true;
    for (Stage b = c->k1; b < c->k2; ++b) {
      const Stage a = out.witness.at(b);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const PlaceSet g = PlaceSet::from_bits(bits);
        bool live = true;
        for (auto q : g.places()) live = live && !c->p.block(b, q).empty();
        if (!live) continue;
        const bool at_ge = b == grand_event(c->p, g);
        const HfSet uo = c->p.union_of(b, g);
        const HfSet uh = at_ge ? h.union_of(a, g) : big_union(o.minus_blocks(a, g));
        for (Place q = 0; q < n; ++q)
          if (c->p.delta(b, q).contains(uo) != h.delta(a, q).contains(uh)) v_ok = false;
      }
    }
    CHECK(v_ok);
    Report seg = check_segment_imitation(c->p, c->board, h, o, out.witness);
    CHECK_MESSAGE((seg.ok("v") && seg.ok("vi")), seg.first_failure());
  }
  CHECK(seen >= 20);
}

TEST_CASE("property: pasted segments imitate") {
  std::mt19937_64 rng(7);
  int accepted = 0, with_surplus = 0;
  for (int round = 0; round < 300 && accepted < 100; ++round) {
    auto c = random_paste_case(rng);
    if (!c) continue;
    const auto id = identity_bijection(c->p.num_places());
    if (!check_weak_imitation(c->p, c->board, c->k1, c->hat, c->overlay, c->hat.xi(), id, c->closed).ok()) continue;
    ++accepted;
    if (!c->overlay.surplus_places(c->hat.xi()).empty()) ++with_surplus;
    auto out = paste_segment(c->p, c->board, c->hat, c->overlay, id, c->closed, c->k1, c->k2);
    Report seg = check_segment_imitation(c->p, c->board, out.process, out.overlay, out.witness);
    CHECK_MESSAGE(seg.ok(), seg.first_failure());
    CHECK_MESSAGE(validate_overlay(out.process, out.overlay).ok(),
                  validate_overlay(out.process, out.overlay).first_failure());
    // A segment ending before the last stage may leave places empty.
    const Report vp = validate_process(out.process);
    for (const auto& item : vp.items())
      if (item.check != "final" || c->k2 == c->p.xi()) CHECK_MESSAGE(item.ok, (item.check + ": " + item.detail));
  }
  CHECK(accepted >= 60);
  CHECK(with_surplus >= 10);
}

TEST_CASE("property: rem1 equality on synthesized processes") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 60; ++round) {
    const HfSet u = random_transitive(rng, 3 + rng() % 8);
    const Partition sigma = Partition::canonical(random_blocks(rng, u, 3));
    const FormativeProcess p = synthesize_process(sigma);
    const std::size_t n = p.num_places();
    for (Stage k = 1; k <= p.xi(); ++k)
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const PlaceSet g = PlaceSet::from_bits(bits);
        const HfSet before = pow_star(p.blocks_of(k - 1, g));
        const HfSet after = pow_star(p.blocks_of(k, g));
        for (Place q = 0; q < n; ++q)
          CHECK(set_intersection(before, p.block(k, q)) == set_intersection(after, p.block(k, q)));
      }
  }
}
