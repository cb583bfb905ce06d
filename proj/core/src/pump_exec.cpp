#include <set>

#include "mlsspf/errors.hpp"
#include "mlsspf/pumping.hpp"

namespace mlsspf {

namespace {

// Assemblies of `fam` meeting `seed` (which lies in fam[seed_at]) with at most
// one element beyond a representative per block, canonical order.
std::vector<HfSet> small_assemblies(const std::vector<HfSet>& fam, std::size_t seed_at, const HfSet& seed,
                                    std::size_t limit) {
  std::size_t work = seed.size();
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (i != seed_at) {
      if (fam[i].empty()) return {};
      work *= fam[i].size();
      if (work > limit) throw LimitExceeded("pump candidate search exceeds " + std::to_string(limit));
    }
  const HfSet all = big_union(fam);
  if (work * (all.size() + 1) > limit) throw LimitExceeded("pump candidate search exceeds " + std::to_string(limit));

  std::set<HfSet> out;
  std::vector<HfSet> pick(fam.size());
  const auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == fam.size()) {
      const HfSet base = HfSet::make(pick);
      out.insert(base);
      for (const auto& x : all.elements())
        if (!base.contains(x)) out.insert(base.with(x));
      return;
    }
    const HfSet& from = i == seed_at ? seed : fam[i];
    for (const auto& x : from.elements()) {
      pick[i] = x;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return {out.begin(), out.end()};
}

}  // namespace

MsOverlay pump_start(const FormativeProcess& p, const PumpingEvent& e) {
  const auto unused = unused_elements(p, e.i0, e.q0);
  if (unused.empty()) throw CannotWarmUp("no unused element in the event place");
  MsOverlay o;
  o.start = e.i0;
  std::vector<HfSet> minus = p.stage(e.i0), surplus(p.num_places());
  minus[e.q0] = minus[e.q0].without(unused.front());
  surplus[e.q0] = HfSet::singleton(unused.front());
  o.push(std::move(minus), std::move(surplus));
  return o;
}

PumpResult pump_rounds(const FormativeProcess& p, const PumpingEvent& e, std::size_t k, const PumpOptions& opt) {
  const Stage i0 = e.i0;
  if (i0 > p.xi()) throw Error("pump_rounds: stage past the last stage");
  const PumpingCycle cyc = e.cycle.rotated_to(e.q0);
  const std::size_t len = cyc.length();

  auto stages = std::vector<std::vector<HfSet>>(p.stages().begin(), p.stages().begin() + i0 + 1);
  auto trace = std::vector<PlaceSet>(p.trace().begin(), p.trace().begin() + i0);
  PumpResult res;
  if (k == 0) {
    res.hat = FormativeProcess(std::move(stages), std::move(trace), true);
    res.overlay = MsOverlay::all_minus(res.hat, i0);
    res.reentry = i0;
    return res;
  }

  res.overlay = pump_start(p, e);
  res.t0 = res.overlay.surplus(i0, e.q0).elements().front();
  std::vector<HfSet> minus, surplus;

  HfSet placed = p.unionset(i0);
  HfSet seed = res.overlay.surplus(i0, e.q0);
  std::size_t counted = 0, warmups = 0;
  while (counted < k) {
    const bool last = counted + 1 == k;
    PumpRound round;
    for (std::size_t j = 1; j <= len; ++j) {
      const PlaceSet node = cyc.step_node(j);
      const Place target = cyc.step_place(j), from = cyc.step_place(j - 1);
      std::vector<HfSet> fam;
      std::size_t seed_at = 0;
      for (auto q : node.places()) {
        if (q == from) seed_at = fam.size();
        fam.push_back(stages.back()[q]);
      }
      const HfSet whole = big_union(fam);
      std::vector<HfSet> cand;
      for (auto& y : small_assemblies(fam, seed_at, seed, opt.limit))
        if (y != whole && !placed.contains(y) && cand.size() < 3) cand.push_back(std::move(y));
      round.offered.push_back(cand.size());
      if (cand.empty())
        throw CannotWarmUp("cycle step " + std::to_string(j) + " offers no fresh element at stage " +
                           std::to_string(stages.size() - 1));
      if (opt.strict_three && cand.size() < 3) round.warmup = true;

      const Stage a = static_cast<Stage>(stages.size()) - 1;
      std::vector<HfSet> add_surplus = cand;
      minus = res.overlay.minus_sides.back();
      surplus = res.overlay.surplus_sides.back();
      if (j == len && last && !round.warmup) {
        if (cand.size() >= 2) {
          res.t1 = cand.front();
          add_surplus.erase(add_surplus.begin());
          minus[target] = minus[target].with(*res.t1);
          res.overlay.exchanges.push_back({a, target, *res.t1, std::nullopt});
        } else {
          round.warmup = true;
        }
      }
      const HfSet delta = HfSet::make(add_surplus);
      surplus[target] = set_union(surplus[target], delta);
      auto next = stages.back();
      next[target] = set_union(minus[target], surplus[target]);
      placed = set_union(placed, HfSet::make(cand));
      stages.push_back(std::move(next));
      trace.push_back(node);
      res.overlay.push(minus, surplus);
      seed = delta;
    }
    round.end = static_cast<Stage>(stages.size()) - 1;
    if (round.warmup) {
      if (++warmups > opt.max_warmups)
        throw CannotWarmUp("cycle needs more than " + std::to_string(opt.max_warmups) + " warm-up rounds");
    } else {
      ++counted;
    }
    res.rounds.push_back(std::move(round));
  }
  res.hat = FormativeProcess(std::move(stages), std::move(trace), true);
  res.reentry = res.hat.xi();
  return res;
}

PumpedModel pump_and_paste(const FormativeProcess& p, const ColoredBoard& board, const ImMap& im,
                           const PumpingEvent& e, PlaceSet cover, std::size_t k, const PumpOptions& opt) {
  PumpResult pr = pump_rounds(p, e, k, opt);
  const auto id = identity_bijection(p.num_places());
  ImitationOptions io;
  io.limit = opt.limit;
  PastedSegment seg = paste_segment(p, board, pr.hat, pr.overlay, id, cover, e.i0, p.xi(), io);
  Assignment m = transfer_assignment(im, seg.process.final_partition(), id);
  return {std::move(pr), std::move(seg), std::move(m)};
}

}  // namespace mlsspf
