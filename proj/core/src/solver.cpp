#include "mlsspf/solver.hpp"

#include <algorithm>
#include <set>

#include "mlsspf/errors.hpp"

namespace mlsspf {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::SatWitnessed: return "SatWitnessed";
    case Verdict::SatModel: return "SatModel";
    case Verdict::UnsatWithinBudget: return "UnsatWithinBudget";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

WitnessOptions witness_options(const SearchBudget& b) {
  WitnessOptions o;
  o.max_cycle_len = b.max_cycle_len;
  o.pump.strict_three = b.strict_three;
  o.pump.limit = b.pow_limit;
  o.pow_limit = b.pow_limit;
  return o;
}

json::Json from_decide(const DecideResult& r) {
  json::Json j{{"verdict", verdict_name(r.verdict)}, {"candidates", r.candidates}};
  if (r.certificate) j["certificate"] = json::from_certificate(*r.certificate);
  else if (r.model) j["model"] = json::from_assignment(*r.model);
  return j;
}

namespace {

std::vector<HfSet> subsets(const HfSet& u) {
  const auto el = u.elements();
  std::vector<HfSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << el.size()); ++bits) {
    std::vector<HfSet> s;
    for (std::size_t i = 0; i < el.size(); ++i)
      if (bits >> i & 1) s.push_back(el[i]);
    out.push_back(HfSet::make(std::move(s)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<HfSet> transitive_universes(std::size_t max_rank, std::size_t max_size) {
  std::vector<HfSet> out{HfSet{}};
  std::vector<HfSet> level{HfSet{}};
  for (std::size_t s = 0; s < max_size; ++s) {
    std::set<HfSet> next;
    for (const auto& t : level)
      for (const auto& e : subsets(t))
        if (!t.contains(e) && e.rank() < max_rank) next.insert(t.with(e));
    level.assign(next.begin(), next.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const HfSet& a, const HfSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

DecideResult decide(const Formula& phi, const SearchBudget& budget) {
  DecideResult res;
  if (budget.max_rank == 0 || budget.max_universe == 0) return res;
  const auto& vars = phi.vars();
  const bool witness = phi.has_not_finite();
  const WitnessOptions wopt = witness_options(budget);
  const Limits limits{budget.pow_limit};
  const auto& lits = phi.literals();

  for (const auto& u : transitive_universes(budget.max_rank, budget.max_universe)) {
    const auto subs = subsets(u);
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      Assignment m;
      std::vector<HfSet> vals;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        m[vars[i]] = subs[idx[i]];
        vals.push_back(subs[idx[i]]);
      }
      if (transitive_closure(big_union(vals)) == u) {
        ++res.candidates;
        bool holds = true;
        try {
          for (const auto& l : lits)
            if (l.kind != LiteralKind::NotFinite && !eval_literal(l, m, limits)) {
              holds = false;
              break;
            }
        } catch (const LimitExceeded&) {
          holds = false;
        }
        if (holds && !witness) {
          res.verdict = Verdict::SatModel;
          res.model = std::move(m);
          return res;
        }
        if (holds) {
          try {
            res.certificate = certify_witness(phi, m, wopt);
            res.verdict = Verdict::SatWitnessed;
            res.model = std::move(m);
            return res;
          } catch (const Error&) {
          }
        }
      }
      std::size_t k = vars.size();
      while (k > 0 && ++idx[k - 1] == subs.size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  res.verdict = Verdict::UnsatWithinBudget;
  return res;
}

Report verify_certificate(const json::Json& j) {
  Report r;
  WitnessCertificate c;
  try {
    c = json::to_certificate(j);
  } catch (const FormatError& e) {
    r.fail("format", e.what());
    return r;
  }
  r.pass("format");
  try {
    const WitnessCertificate re = certify_witness(c.formula, c.assignment, c.options);
    const nlohmann::json given = j, again = json::from_certificate(re);
    r.add("recompute", given == again, "recomputed certificate differs");
  } catch (const Error& e) {
    r.fail("recompute", e.what());
  }
  const Report vp = validate_process(c.process);
  r.add("process", vp.ok(), vp.first_failure());
  try {
    const CanonicalBoard cb = canonical_board(c.formula, c.assignment);
    r.add("process", cb.sigma == c.process.final_partition(), "last stage is not the Venn partition");
    const Report ev = is_pumping_event(c.process, cb.board, c.event);
    r.add("event", ev.ok(), ev.first_failure());
    r.add("cover", c.event.cycle.place_set().subset_of(c.closed_cover) && is_closed(c.process, cb.board, c.closed_cover),
          "cover is not a closed set around the cycle");
  } catch (const Error& e) {
    r.fail("event", e.what());
  }
  r.add("report", c.report.ok(), c.report.first_failure());
  return r;
}

json::Json pump_certificate(const WitnessCertificate& cert, std::size_t k) {
  const CanonicalBoard cb = canonical_board(cert.formula, cert.assignment);
  const PumpCheck pc =
      check_pump(cert.formula, cert.assignment, cb, cert.process, cert.event, cert.closed_cover, k, cert.options);
  const PumpedModel& pm = pc.model;
  json::Json rounds = json::Json::array();
  for (const auto& rd : pm.pump.rounds) rounds.push_back({{"end", rd.end}, {"warmup", rd.warmup}, {"offered", rd.offered}});
  return {{"rounds", k},
          {"schedule", rounds},
          {"reentry", pm.pump.reentry},
          {"process", json::from_process(pm.pasted.process)},
          {"overlay", json::from_overlay(pm.pasted.overlay)},
          {"witness", json::from_witness(pm.pasted.witness)},
          {"assignment", json::from_assignment(pm.assignment)},
          {"report", json::from_report(pc.report)}};
}

}  // namespace mlsspf
