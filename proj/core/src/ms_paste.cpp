#include <string>

#include "mlsspf/errors.hpp"
#include "mlsspf/ms_refine.hpp"
#include "ms_detail.hpp"

namespace mlsspf {

using detail::count_in_pow_star;
using detail::cpp_int;
using detail::pow_star_count;

namespace {

std::string sz(std::size_t v) { return std::to_string(v); }

HfSet add_all(const HfSet& base, const std::vector<HfSet>& extra) {
  if (extra.empty()) return base;
  std::vector<HfSet> v(base.elements().begin(), base.elements().end());
  v.insert(v.end(), extra.begin(), extra.end());
  return HfSet::make(std::move(v));
}

}  // namespace

PastedSegment paste_segment(const FormativeProcess& p, const ColoredBoard& board, const FormativeProcess& hat,
                            const MsOverlay& o, const BlockBijection& beta, PlaceSet closed, Stage k1, Stage k2,
                            const ImitationOptions& opt) {
  const std::size_t n = p.num_places();
  if (!detail::is_bijection(beta, n) || hat.num_places() != n || o.last() != hat.xi() || o.width() != n)
    throw Error("paste_segment: hat, overlay and bijection do not fit the process");
  if (k1 > k2 || k2 > p.xi()) throw Error("paste_segment: bad segment");

  auto stages = hat.stages();
  auto trace = hat.trace();
  MsOverlay out = o;
  ImitationWitness w{k1, k2, {}, beta, closed};
  w.gamma.push_back(hat.xi());
  const auto ge_map = grand_events(p);

  for (Stage b = k1; b < k2; ++b) {
    const Stage a = static_cast<Stage>(stages.size()) - 1;
    const auto& cur = stages.back();
    const PlaceSet node = p.trace_at(b);
    const PlaceSet hnode = map_node(beta, node);
    std::vector<HfSet> mfam, hfam;
    bool surplus = false;
    for (auto h : hnode.places()) {
      mfam.push_back(out.minus(a, h));
      hfam.push_back(cur[h]);
      surplus = surplus || !out.surplus(a, h).empty();
    }
    const HfSet placed = set_union(big_union(cur), out.virtual_placed(a));
    const HfSet pool = set_difference(pow_star(mfam, opt.limit), placed);
    const HfSet um = big_union(mfam), uh = big_union(hfam);
    const Stage gnode = grand_event(p, node);

    std::vector<std::vector<HfSet>> add_minus(n), add_surplus(n);
    std::optional<Place> qstar;
    const HfSet uo = p.union_of(b, node);
    for (Place q = 0; q < n; ++q)
      if (p.delta(b, q).contains(uo)) qstar = q;
    if (qstar) {
      const Place h = beta[*qstar];
      if (b == gnode && surplus) {
        if (placed.contains(uh)) throw CardinalityDeficit("union of node " + node.to_string() + " already placed");
        add_minus[h].push_back(uh);
        out.exchanges.push_back({a, h, uh, um});
      } else {
        if (!pool.contains(um))
          throw CardinalityDeficit("Minus union of node " + node.to_string() + " unavailable at step " + sz(b));
        add_minus[h].push_back(um);
      }
    }

    const HfSet rest_set = pool.without(um);
    const auto rest = rest_set.elements();
    std::size_t next = 0;
    for (Place q = 0; q < n; ++q) {
      std::size_t need = p.delta(b, q).size() - (qstar == q ? 1 : 0);
      if (rest.size() - next < need)
        throw CardinalityDeficit("step " + sz(b) + ": place " + sz(q) + " needs " + sz(need) + " Minus assemblies");
      for (; need > 0; --need) add_minus[beta[q]].push_back(rest[next++]);
    }

    if (surplus && b == gnode && board.is_pow_node(node)) {
      HfSet taken = placed;
      for (const auto& v : add_minus) taken = add_all(taken, v);
      std::vector<HfSet> remainder;
      const HfSet full = pow_star(hfam, opt.limit);
      for (const auto& y : full.elements())
        if (!taken.contains(y) && !in_pow_star(y, mfam)) remainder.push_back(y);
      if (!remainder.empty()) {
        const PlaceSet trash = local_trashes(ge_map, p.xi(), board, node) & closed;
        if (trash.empty()) throw NoLocalTrash("no local trash in the closed set for node " + node.to_string());
        add_surplus[beta[trash.front()]] = std::move(remainder);
      }
    }

    std::vector<HfSet> next_stage(n), next_minus(n), next_surplus(n);
    for (Place h = 0; h < n; ++h) {
      next_minus[h] = add_all(out.minus(a, h), add_minus[h]);
      next_surplus[h] = add_all(out.surplus(a, h), add_surplus[h]);
      next_stage[h] = set_union(next_minus[h], next_surplus[h]);
    }
    stages.push_back(std::move(next_stage));
    trace.push_back(hnode);
    out.push(std::move(next_minus), std::move(next_surplus));
    w.gamma.push_back(a + 1);
  }
  return {FormativeProcess(std::move(stages), std::move(trace), true), std::move(out), std::move(w)};
}

Report check_upward_premises(const FormativeProcess& p, const ColoredBoard& board, const FormativeProcess& hat,
                             const MsOverlay& o, const ImitationWitness& w, const ImitationOptions& opt) {
  Report r;
  const std::size_t n = p.num_places();
  const bool span = w.hi == p.xi() && !w.gamma.empty() && detail::is_bijection(w.places, n) &&
                    hat.num_places() == n && w.gamma.back() <= hat.xi();
  r.add("segment", span, "witness does not cover the process up to its last stage");
  if (!span) return r;
  const auto& beta = w.places;
  const auto inv = detail::inverse(beta);
  const Stage m = w.at(w.lo);

  r.merge(check_weak_imitation(p, board, w.lo, hat, o, m, beta, w.closed, opt), "weak.");
  r.merge(check_segment_imitation(p, board, hat, o, w, opt), "segment.");

  const Partition fin = hat.final_partition();
  const auto hat_targets = partition_targets(fin);
  std::map<PlaceSet, PlaceSet> pulled;
  for (const auto& [a, t] : hat_targets) pulled[map_node(inv, a)] = map_node(inv, t);
  r.add("targets", pulled == board.targets(), "final targets differ");

  r.pass("surplus_only");
  r.pass("trash_exclusion");
  const auto ge_map = grand_events(p);
  std::vector<bool> in_range(hat.xi() + 1, false);
  for (std::size_t i = 0; i + 1 < w.gamma.size(); ++i) in_range[w.gamma[i]] = true;
  for (Stage mu = m; mu < hat.xi(); ++mu) {
    if (mu > m && !in_range[mu])
      for (Place h = 0; h < n; ++h)
        r.add("surplus_only", o.delta_minus(mu, h).empty(), "Minus delta at hat step " + sz(mu));
    Stage prev = w.lo;
    for (Stage b = w.lo; b <= w.hi; ++b)
      if (w.at(b) <= mu) prev = b;
    const PlaceSet node = map_node(inv, hat.trace_at(mu));
    if (grand_event(p, node) <= prev) continue;
    const HfSet u = hat.union_of(hat.xi(), hat.trace_at(mu));
    for (auto q : local_trashes(ge_map, p.xi(), board, node).places())
      r.add("trash_exclusion", !o.delta_surplus(mu, beta[q]).contains(u),
            "union of node " + node.to_string() + " dumped at hat step " + sz(mu));
  }

  const Stage xi = p.xi(), xh = hat.xi();
  for (const char* item : {"c0", "c1", "c2", "c3"}) r.pass(item);
  for (auto g : detail::sweep_nodes(p, p.places(), opt.exhaustive_places)) {
    const auto ofam = p.blocks_of(xi, g);
    const auto hfam = detail::hat_blocks(hat, xh, beta, g);
    const HfSet uo = big_union(ofam), uh = big_union(hfam);
    for (Place q = 0; q < n; ++q) {
      const HfSet& bo = p.block(xi, q);
      const HfSet& bh = hat.block(xh, beta[q]);
      r.add("c0", (count_in_pow_star(bo, ofam) > 0) == (count_in_pow_star(bh, hfam) > 0),
            "node " + g.to_string() + ", place " + sz(q));
      r.add("c1", bo.contains(uo) == bh.contains(uh), "node " + g.to_string() + ", place " + sz(q));
    }
    if (board.is_pow_node(g))
      r.add("c2", cpp_int(count_in_pow_star(hat.unionset(xh), hfam)) == pow_star_count(hfam),
            "pow node " + g.to_string());
  }
  for (auto q : board.red().places())
    r.add("c3", hat.block(xh, beta[q]).size() == p.block(xi, q).size(), "red place " + sz(q));
  return r;
}

}  // namespace mlsspf
