#include "mlsspf/ms_refine.hpp"

#include <map>
#include <string>

#include "ms_detail.hpp"

namespace mlsspf {

using detail::count_in_pow_star;
using detail::cpp_int;
using detail::pow_star_count;

MsOverlay MsOverlay::all_minus(const FormativeProcess& p, Stage start) {
  MsOverlay o;
  o.start = start;
  for (Stage a = start; a <= p.xi(); ++a) {
    o.minus_sides.push_back(p.stage(a));
    o.surplus_sides.emplace_back(p.num_places());
  }
  return o;
}

std::vector<HfSet> MsOverlay::minus_blocks(Stage a, PlaceSet node) const {
  std::vector<HfSet> out;
  for (auto q : node.places()) out.push_back(minus(a, q));
  return out;
}

HfSet MsOverlay::minus_union(Stage a) const { return big_union(minus_sides.at(a - start)); }

PlaceSet MsOverlay::surplus_places(Stage a) const {
  PlaceSet s;
  const auto& row = surplus_sides.at(a - start);
  for (Place q = 0; q < row.size(); ++q)
    if (!row[q].empty()) s.insert(q);
  return s;
}

HfSet MsOverlay::virtual_placed(Stage a) const {
  std::vector<HfSet> v;
  for (const auto& x : exchanges)
    if (x.step < a && x.stands_for) v.push_back(*x.stands_for);
  return HfSet::make(std::move(v));
}

const Exchange* MsOverlay::exchange_for(Stage step, const HfSet& placed) const {
  for (const auto& x : exchanges)
    if (x.step == step && x.placed == placed) return &x;
  return nullptr;
}

void MsOverlay::push(std::vector<HfSet> minus, std::vector<HfSet> surplus) {
  minus_sides.push_back(std::move(minus));
  surplus_sides.push_back(std::move(surplus));
}

Report validate_overlay(const FormativeProcess& hat, const MsOverlay& o) {
  Report r;
  const std::size_t n = hat.num_places();
  bool shape = !o.minus_sides.empty() && o.minus_sides.size() == o.surplus_sides.size() && o.last() == hat.xi();
  for (std::size_t i = 0; shape && i < o.minus_sides.size(); ++i)
    shape = o.minus_sides[i].size() == n && o.surplus_sides[i].size() == n;
  r.add("shape", shape, "overlay stages do not match the process");
  if (!shape) return r;

  for (const char* item : {"split", "inductive", "delta_minus", "delta_surplus", "powdisj"}) r.pass(item);
  for (Stage a = o.start; a <= hat.xi(); ++a)
    for (Place q = 0; q < n; ++q) {
      const HfSet& mi = o.minus(a, q);
      const HfSet& su = o.surplus(a, q);
      r.add("split", set_union(mi, su) == hat.block(a, q) && !meets(mi, su),
            "place " + std::to_string(q) + " at stage " + std::to_string(a));
    }

  for (Stage a = o.start; a < hat.xi(); ++a) {
    const PlaceSet node = hat.trace_at(a);
    const std::vector<HfSet> full = hat.blocks_of(a, node);
    const std::vector<HfSet> mfam = o.minus_blocks(a, node);
    const HfSet munion = o.minus_union(a);
    for (Place q = 0; q < n; ++q) {
      const std::string at = "place " + std::to_string(q) + " at step " + std::to_string(a);
      r.add("inductive", o.minus(a, q).subset_of(o.minus(a + 1, q)) && o.surplus(a, q).subset_of(o.surplus(a + 1, q)),
            at + " loses material");
      const HfSet dm = o.delta_minus(a, q), ds = o.delta_surplus(a, q);
      for (const auto& e : dm.elements()) {
        if (o.exchange_for(a, e)) continue;
        r.add("delta_minus", in_pow_star(e, mfam), at + ": " + e.to_string() + " is not a Minus assembly");
        r.add("powdisj", e.subset_of(munion), at + ": Minus element with a Surplus member");
      }
      for (const auto& e : ds.elements()) {
        r.add("delta_surplus", in_pow_star(e, full) && !in_pow_star(e, mfam),
              at + ": " + e.to_string() + " is not a Surplus assembly");
        r.add("powdisj", !e.subset_of(munion), at + ": Surplus element without a Surplus member");
      }
    }
  }
  return r;
}

namespace {

// |℘*(fam) ∩ block|, where an exchanged element made before stage a counts as its stand-in.
std::size_t count_minus(const HfSet& block, const std::vector<HfSet>& fam, const MsOverlay& o, Stage a) {
  for (const auto& z : fam)
    if (z.empty()) return 0;
  std::size_t n = 0;
  for (const auto& e : block.elements()) {
    if (in_pow_star(e, fam)) {
      ++n;
      continue;
    }
    for (const auto& x : o.exchanges)
      if (x.step < a && x.placed == e && x.stands_for && in_pow_star(*x.stands_for, fam)) {
        ++n;
        break;
      }
  }
  return n;
}

std::string sz(std::size_t v) { return std::to_string(v); }

class GeCache {
 public:
  explicit GeCache(const FormativeProcess& p) : p_(p) {}
  Stage operator()(PlaceSet a) {
    auto it = ge_.find(a);
    if (it != ge_.end()) return it->second;
    return ge_[a] = grand_event(p_, a);
  }

 private:
  const FormativeProcess& p_;
  std::map<PlaceSet, Stage> ge_;
};

// Rem1 form of (x): Minus and hat blocks at stage a, original at stage k.
void check_x_same_stage(Report& r, const char* item, const FormativeProcess& p, Stage k, const FormativeProcess& hat,
                        const MsOverlay& o, Stage a, const BlockBijection& beta, const ImitationOptions& opt) {
  for (auto g : detail::sweep_nodes(p, detail::nonempty_at(p, k), opt.exhaustive_places)) {
    const auto mfam = o.minus_blocks(a, map_node(beta, g));
    const auto ofam = p.blocks_of(k, g);
    for (Place q = 0; q < p.num_places(); ++q) {
      const std::size_t lhs = count_minus(hat.block(a, beta[q]), mfam, o, a);
      const std::size_t rhs = count_in_pow_star(p.block(k, q), ofam);
      r.add(item, lhs == rhs,
            "node " + g.to_string() + ", place " + sz(q) + " at stage " + sz(k) + ": " + sz(lhs) + " vs " + sz(rhs));
    }
  }
}

}  // namespace

Report check_weak_imitation(const FormativeProcess& p, const ColoredBoard& board, Stage k,
                            const FormativeProcess& hat, const MsOverlay& o, Stage m, const BlockBijection& beta,
                            PlaceSet closed, const ImitationOptions& opt) {
  Report r;
  const std::size_t n = p.num_places();
  const bool shape = detail::is_bijection(beta, n) && hat.num_places() == n && k <= p.xi() && m <= hat.xi() &&
                     m >= o.start && m <= o.last() && o.width() == n;
  r.add("bijection", shape, "bijection or stages out of range");
  if (!shape) return r;

  for (const char* item : {"i", "vii", "viii", "x", "a", "b", "c"}) r.pass(item);
  for (Place q = 0; q < n; ++q)
    r.add("i", p.block(k, q).size() == o.minus(m, beta[q]).size(), "place " + sz(q));
  for (auto q : board.red().places())
    r.add("vii", o.surplus(m, beta[q]).empty(), "red place " + sz(q) + " has Surplus");
  for (Place q = 0; q < n; ++q)
    if (!o.surplus(m, beta[q]).empty())
      r.add("viii", closed.contains(q), "Surplus place " + sz(q) + " outside the closed set");
  check_x_same_stage(r, "x", p, k, hat, o, m, beta, opt);

  GeCache ge(p);
  const HfSet placed_hat = set_union(hat.unionset(m), o.virtual_placed(m));
  const HfSet& placed = p.unionset(k);
  const PlaceSet surplus = o.surplus_places(m);
  for (auto g : detail::sweep_nodes(p, detail::nonempty_at(p, k), opt.exhaustive_places)) {
    const PlaceSet gh = map_node(beta, g);
    const auto ofam = p.blocks_of(k, g);
    const auto mfam = o.minus_blocks(m, gh);
    const auto hfam = hat.blocks_of(m, gh);
    const HfSet uo = big_union(ofam), um = big_union(mfam), uh = big_union(hfam);

    const bool lhs = in_pow_star(um, mfam) && !placed_hat.contains(um);
    const bool rhs = in_pow_star(uo, ofam) && !placed.contains(uo);
    r.add("a", lhs == rhs, "node " + g.to_string());

    const Stage gg = ge(g);
    if (gh.meets(surplus) && gg >= k)
      r.add("b", in_pow_star(uh, hfam) && !placed_hat.contains(uh), "node " + g.to_string() + " already distributed");
    if (gg < k) {
      for (Place q = 0; q < n; ++q)
        r.add("c", p.block(k, q).contains(uo) == hat.block(m, beta[q]).contains(uh),
              "node " + g.to_string() + ", place " + sz(q));
      if (board.is_pow_node(g))
        r.add("c", cpp_int(count_in_pow_star(hat.unionset(m), hfam)) == pow_star_count(hfam),
              "pow node " + g.to_string() + " not absorbed");
    }
  }
  return r;
}

Report check_segment_imitation(const FormativeProcess& p, const ColoredBoard& board, const FormativeProcess& hat,
                               const MsOverlay& o, const ImitationWitness& w, const ImitationOptions& opt) {
  Report r;
  const std::size_t n = p.num_places();
  bool pre = detail::is_bijection(w.places, n) && hat.num_places() == n && o.width() == n && w.lo <= w.hi &&
             w.hi <= p.xi() && w.gamma.size() == static_cast<std::size_t>(w.hi - w.lo + 1);
  for (std::size_t i = 0; pre && i < w.gamma.size(); ++i) {
    pre = w.gamma[i] >= o.start && w.gamma[i] <= o.last() && w.gamma[i] <= hat.xi();
    if (pre && i > 0) pre = w.gamma[i - 1] < w.gamma[i];
  }
  r.add("gamma", pre, "gamma is not an order-preserving injection into the hat stages");
  if (!pre) return r;

  for (const char* item : {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"}) r.pass(item);
  const auto& beta = w.places;
  GeCache ge(p);
  const auto ge_map = grand_events(p);

  for (Stage b = w.lo; b <= w.hi; ++b) {
    const Stage a = w.at(b);
    const std::string at = " at " + sz(b);
    for (Place q = 0; q < n; ++q)
      r.add("i", p.block(b, q).size() == o.minus(a, beta[q]).size(), "place " + sz(q) + at);
    for (auto q : board.red().places())
      r.add("vii", o.surplus(a, beta[q]).empty(), "red place " + sz(q) + at);
    for (Place q = 0; q < n; ++q)
      if (!o.surplus(a, beta[q]).empty()) r.add("viii", w.closed.contains(q), "place " + sz(q) + at);

    if (b == w.hi) continue;
    const PlaceSet node = p.trace_at(b);
    const PlaceSet hnode = map_node(beta, node);
    const Stage gnode = ge(node);
    for (Place q = 0; q < n; ++q) {
      r.add("ii", p.delta(b, q).size() == o.delta_minus(a, beta[q]).size(), "place " + sz(q) + at);
      if (!o.delta_surplus(a, beta[q]).empty())
        r.add("iii",
              b == gnode && local_trashes(ge_map, p.xi(), board, node).contains(q) && w.closed.contains(q),
              "Surplus delta into place " + sz(q) + at);
    }
    // Only the trace node has its union among the new assemblies.
    const HfSet uo = p.union_of(b, node);
    const HfSet uh = b == gnode ? hat.union_of(a, hnode) : big_union(o.minus_blocks(a, hnode));
    std::optional<Place> qo, qh;
    for (Place q = 0; q < n; ++q) {
      if (p.delta(b, q).contains(uo)) qo = beta[q];
      if (hat.delta(a, q).contains(uh)) qh = q;
    }
    r.add(b == gnode ? "vi" : "v", qo == qh, "union of node " + node.to_string() + at);
  }

  for (auto g : board.pow_nodes(opt.limit)) {
    const Stage gg = ge(g);
    if (gg < w.lo || gg >= w.hi) continue;
    const auto hfam = detail::hat_blocks(hat, w.at(gg), beta, g);
    r.add("iv", cpp_int(count_in_pow_star(hat.unionset(w.at(gg + 1)), hfam)) == pow_star_count(hfam),
          "pow node " + g.to_string());
  }

  for (Stage k = w.lo; k <= w.hi; ++k) {
    const Stage a = w.at(k);
    const HfSet placed_hat = set_union(hat.unionset(a), o.virtual_placed(a));
    for (auto g : detail::sweep_nodes(p, detail::nonempty_at(p, k), opt.exhaustive_places)) {
      const auto mfam = o.minus_blocks(a, map_node(beta, g));
      const auto ofam = p.blocks_of(k, g);
      const cpp_int lhs = pow_star_count(mfam) - count_in_pow_star(placed_hat, mfam);
      const cpp_int rhs = pow_star_count(ofam) - count_in_pow_star(p.unionset(k), ofam);
      r.add("ix", lhs == rhs, "node " + g.to_string() + " at " + sz(k));
    }
    if (k == w.lo) {
      check_x_same_stage(r, "x", p, k, hat, o, a, beta, opt);
      continue;
    }
    const Stage a0 = w.at(k - 1);
    for (auto g : detail::sweep_nodes(p, detail::nonempty_at(p, k - 1), opt.exhaustive_places)) {
      const auto mfam = o.minus_blocks(a0, map_node(beta, g));
      const auto ofam = p.blocks_of(k - 1, g);
      for (Place q = 0; q < n; ++q) {
        const std::size_t lhs = count_minus(hat.block(a, beta[q]), mfam, o, a);
        const std::size_t rhs = count_in_pow_star(p.block(k, q), ofam);
        r.add("x", lhs == rhs, "node " + g.to_string() + ", place " + sz(q) + " at " + sz(k));
      }
    }
  }
  return r;
}

}  // namespace mlsspf
