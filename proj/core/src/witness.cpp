#include <algorithm>

#include "mlsspf/errors.hpp"
#include "mlsspf/pumping.hpp"

namespace mlsspf {

namespace {

HfSet assigned_union(const Assignment& m) {
  std::vector<HfSet> vals;
  for (const auto& [v, s] : m) vals.push_back(s);
  return big_union(vals);
}

// Growth of every cycle place in every round, stillness of the others.
Report growth_report(const FormativeProcess& p, const PumpingEvent& e, const PumpResult& pr) {
  Report r;
  const PlaceSet cyc = e.cycle.place_set();
  Stage from = e.i0;
  for (std::size_t i = 0; i < pr.rounds.size(); ++i) {
    const Stage to = pr.rounds[i].end;
    for (auto q : cyc.places())
      r.add("grows", pr.hat.block(from, q).size() < pr.hat.block(to, q).size(),
            "place " + std::to_string(q) + " in round " + std::to_string(i));
    from = to;
  }
  for (Place q = 0; q < p.num_places(); ++q)
    if (!cyc.contains(q))
      r.add("still", pr.hat.block(pr.reentry, q) == p.block(e.i0, q), "place " + std::to_string(q));
  if (!r.has("grows")) r.pass("grows");
  if (!r.has("still")) r.pass("still");
  return r;
}

}  // namespace

PumpCheck check_pump(const Formula& phi, const Assignment& m, const CanonicalBoard& cb, const FormativeProcess& p,
                     const PumpingEvent& e, PlaceSet cover, std::size_t k, const WitnessOptions& opt) {
  PumpOptions po = opt.pump;
  po.limit = opt.pow_limit;
  PumpCheck out{pump_and_paste(p, cb.board, cb.im, e, cover, k, po), {}};
  const PumpedModel& pm = out.model;
  const auto id = identity_bijection(p.num_places());
  ImitationOptions io;
  io.limit = opt.pow_limit;
  Report& r = out.report;
  r.merge(growth_report(p, e, pm.pump), "growth.");
  r.merge(check_weak_imitation(p, cb.board, e.i0, pm.pump.hat, pm.pump.overlay, pm.pump.reentry, id, cover, io),
          "weak.");
  r.merge(check_upward_premises(p, cb.board, pm.pasted.process, pm.pasted.overlay, pm.pasted.witness, io), "upward.");
  r.merge(literal_transfer_report(phi, m, pm.assignment, Limits{opt.pow_limit}), "transfer.");
  return out;
}

WitnessCertificate certify_witness(const Formula& phi, const Assignment& m0, const WitnessOptions& opt) {
  const Assignment m = is_transitive(assigned_union(m0)) ? m0 : transitivize(m0);
  const Limits limits{opt.pow_limit};
  Report lits;
  const auto& literals = phi.literals();
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (literals[i].kind == LiteralKind::NotFinite) continue;
    if (!eval_literal(literals[i], m, limits)) throw NotAWitness("literal " + literals[i].render() + " is false");
    lits.pass("literal." + std::to_string(i));
  }

  const CanonicalBoard cb = canonical_board(phi, m);
  const FormativeProcess p = synthesize_process(cb.sigma);
  const auto need = phi.not_finite_vars();
  const auto cycles = find_pumping_cycles(cb.board, opt.max_cycle_len);

  // Furthest stage any candidate reached, for the failure message.
  int reached = 0;
  std::string why = cycles.empty() ? "no pumping cycle on the board" : "no stage allows a pumping event";
  std::string missing;
  for (const auto& c : cycles) {
    std::vector<PumpingEvent> events;
    for (auto q0 : c.places)
      for (Stage i0 = 0; i0 <= p.xi(); ++i0) {
        PumpingEvent e{q0, i0, c.rotated_to(q0)};
        if (is_pumping_event(p, cb.board, e).ok()) events.push_back(std::move(e));
      }
    if (events.empty()) continue;
    reached = std::max(reached, 1);

    PlaceSet cover;
    try {
      cover = closed_cover(p, cb.board, c);
    } catch (const NoClosedCover& err) {
      if (reached == 1) why = err.what();
      continue;
    }
    reached = std::max(reached, 2);
    const PlaceSet places = c.place_set();
    auto miss = std::find_if(need.begin(), need.end(), [&](const std::string& x) {
      const auto it = cb.im.find(x);
      return it == cb.im.end() || !it->second.meets(places);
    });
    if (miss != need.end()) {
      if (reached == 2 && missing.empty()) missing = *miss;
      continue;
    }
    reached = 3;

    for (const auto& e : events) {
      Report checks;
      try {
        checks = check_pump(phi, m, cb, p, e, cover, opt.check_rounds, opt).report;
      } catch (const Error& err) {
        why = std::string("pumping ") + c.to_string() + " failed: " + err.what();
        continue;
      }
      if (!checks.ok()) {
        why = "pumping " + c.to_string() + " breaks " + checks.first_failure();
        continue;
      }
      WitnessCertificate cert;
      cert.formula = phi;
      cert.assignment = m;
      cert.process = p;
      cert.overlay = pump_start(p, e);
      cert.event = e;
      cert.closed_cover = cover;
      for (const auto& v : phi.vars()) {
        const auto it = cb.im.find(v);
        if (it != cb.im.end() && it->second.meets(places)) cert.potential_infinite.push_back(v);
      }
      cert.report = lits;
      cert.report.merge(is_pumping_event(p, cb.board, e), "event.");
      cert.report.add("cover", is_closed(p, cb.board, cover), "cover is not closed");
      for (const auto& x : need) cert.report.pass("covers." + x);
      cert.report.merge(checks, "pump.");
      cert.options = opt;
      return cert;
    }
  }
  if (reached == 0 || reached == 3) throw NoEvent(why);
  if (reached == 1) throw NoClosedCover(why);
  throw CoverMissesVariable(missing);
}

}  // namespace mlsspf
