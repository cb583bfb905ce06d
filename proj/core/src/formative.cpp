#include "mlsspf/formative.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mlsspf/errors.hpp"

namespace mlsspf {

FormativeProcess::FormativeProcess(std::vector<std::vector<HfSet>> stages, std::vector<PlaceSet> trace,
                                   bool weak)
    : stages_(std::move(stages)), trace_(std::move(trace)), weak_(weak) {
  if (stages_.empty()) throw FormatError("process needs at least one stage");
  width_ = stages_.front().size();
  if (width_ > kMaxPlaces) throw LimitExceeded("more than 64 places");
  for (const auto& s : stages_)
    if (s.size() != width_) throw FormatError("process stages differ in width");
  if (trace_.size() + 1 != stages_.size()) throw FormatError("trace length must equal the number of steps");
  for (auto a : trace_)
    if (!a.subset_of(places())) throw FormatError("trace node outside the places");

  unions_.clear();
  auto info = std::make_shared<std::unordered_map<HfSet, Info, HfSetHash>>();
  for (Stage mu = 0; mu < stages_.size(); ++mu) {
    std::vector<HfSet> all;
    for (Place q = 0; q < width_; ++q)
      for (const auto& e : stages_[mu][q].elements()) {
        all.push_back(e);
        auto [it, fresh] = info->try_emplace(e, Info{mu, q, std::nullopt});
        if (!fresh && mu == xi()) it->second.place = q;
      }
    unions_.push_back(HfSet::make(std::move(all)));
  }
  for (auto& [z, zi] : *info)
    for (const auto& e : z.elements()) {
      auto it = info->find(e);
      if (it == info->end()) continue;
      auto& fu = it->second.first_use;
      if (!fu || *fu > zi.birth) fu = zi.birth;
    }
  info_ = std::move(info);
}

std::vector<HfSet> FormativeProcess::blocks_of(Stage mu, PlaceSet a) const {
  std::vector<HfSet> out;
  for (auto q : a.places()) out.push_back(block(mu, q));
  return out;
}

HfSet FormativeProcess::delta(Stage nu, Place q) const { return set_difference(block(nu + 1, q), unionset(nu)); }

PlaceSet FormativeProcess::history_targets(Stage nu) const {
  PlaceSet t;
  for (Place q = 0; q < width_; ++q)
    if (!delta(nu, q).empty()) t.insert(q);
  return t;
}

std::optional<Stage> FormativeProcess::birth(const HfSet& e) const {
  if (!info_) return std::nullopt;
  auto it = info_->find(e);
  if (it == info_->end()) return std::nullopt;
  return it->second.birth;
}

std::optional<Place> FormativeProcess::place_of(const HfSet& e) const {
  if (!info_) return std::nullopt;
  auto it = info_->find(e);
  if (it == info_->end() || !stages_.back()[it->second.place].contains(e)) return std::nullopt;
  return it->second.place;
}

std::optional<Stage> FormativeProcess::first_use(const HfSet& e) const {
  if (!info_) return std::nullopt;
  auto it = info_->find(e);
  if (it == info_->end()) return std::nullopt;
  return it->second.first_use;
}

bool FormativeProcess::in_pow_star_at(const HfSet& e, Stage mu, PlaceSet a) const {
  PlaceSet hit;
  for (const auto& x : e.elements()) {
    bool found = false;
    for (auto q : a.places())
      if (block(mu, q).contains(x)) {
        hit.insert(q);
        found = true;
        break;
      }
    if (!found) return false;
  }
  return hit == a;
}

Report validate_process(const FormativeProcess& p) {
  Report r;
  const Stage xi = p.xi();
  const std::size_t n = p.num_places();

  for (Stage mu = 0; mu <= xi; ++mu) {
    std::size_t total = 0;
    for (Place q = 0; q < n; ++q) total += p.block(mu, q).size();
    r.add("disjoint", total == p.unionset(mu).size(), "overlapping blocks at stage " + std::to_string(mu));
  }
  for (Stage nu = 0; nu < xi; ++nu)
    for (Place q = 0; q < n; ++q)
      r.add("monotone", p.block(nu, q).subset_of(p.block(nu + 1, q)),
            "place " + std::to_string(q) + " shrinks at step " + std::to_string(nu));
  for (Place q = 0; q < n; ++q) {
    r.add("initial", p.block(0, q).empty(), "place " + std::to_string(q) + " nonempty at stage 0");
    r.add("final", !p.block(xi, q).empty(), "place " + std::to_string(q) + " empty at the last stage");
  }
  if (!r.has("initial")) r.pass("initial");
  if (!r.has("final")) r.pass("final");
  if (!r.has("monotone")) r.pass("monotone");

  r.pass("prolongation.2");
  r.pass("prolongation.3");
  r.pass("history");
  for (Stage nu = 0; nu < xi; ++nu) {
    const PlaceSet a = p.trace_at(nu);
    for (auto q : a.places())
      r.add("prolongation.2", !p.block(nu, q).empty(),
            "trace node at step " + std::to_string(nu) + " uses empty place " + std::to_string(q));
    const HfSet fresh = set_difference(p.unionset(nu + 1), p.unionset(nu));
    for (const auto& e : fresh.elements())
      r.add("prolongation.2", p.in_pow_star_at(e, nu, a),
            e.to_string() + " placed at step " + std::to_string(nu) + " is not in pow* of the trace node");
    r.add("prolongation.3", !fresh.empty(), "step " + std::to_string(nu) + " adds nothing");
    PlaceSet t;
    for (Place q = 0; q < n; ++q)
      if (!set_difference(p.block(nu + 1, q), p.block(nu, q)).empty()) t.insert(q);
    r.add("history", t == p.history_targets(nu), "step " + std::to_string(nu) + " regrows old material");
  }

  if (!p.weak()) {
    r.pass("coherence");
    for (Stage nu = 0; nu < xi; ++nu) {
      const PlaceSet a = p.trace_at(nu);
      for (const auto& e : p.unionset(xi).elements())
        if (!p.unionset(nu + 1).contains(e) && p.in_pow_star_at(e, nu, a))
          r.fail("coherence", e.to_string() + " belongs to pow* of the trace node of step " + std::to_string(nu) +
                                  " but arrives later");
    }
  }
  return r;
}

FormativeProcess synthesize_process(const Partition& sigma) {
  if (!is_transitive(sigma.unionset())) throw NotTransitive("unionset of the partition is not transitive");
  const std::size_t n = sigma.size();
  const auto all = sigma.unionset().elements();
  std::vector<std::vector<HfSet>> stages{std::vector<HfSet>(n)};
  std::vector<PlaceSet> trace;
  std::vector<bool> placed(all.size(), false);
  std::unordered_map<HfSet, bool, HfSetHash> is_placed;
  std::size_t remaining = all.size();

  auto ready = [&](const HfSet& e) {
    for (const auto& x : e.elements())
      if (!is_placed.count(x)) return false;
    return true;
  };
  while (remaining > 0) {
    // The canonically least unplaced element has all its members placed.
    std::size_t first = 0;
    while (placed[first]) ++first;
    const PlaceSet gamma = sigma.signature(all[first]).node;
    std::vector<std::vector<HfSet>> add(n);
    std::vector<std::size_t> now;
    for (std::size_t i = first; i < all.size(); ++i)
      if (!placed[i] && ready(all[i]) && sigma.signature(all[i]).node == gamma) now.push_back(i);
    for (auto i : now) {
      placed[i] = true;
      is_placed.emplace(all[i], true);
      add[*sigma.place_of(all[i])].push_back(all[i]);
      --remaining;
    }
    std::vector<HfSet> next = stages.back();
    for (Place q = 0; q < n; ++q)
      if (!add[q].empty()) {
        std::vector<HfSet> el(next[q].elements().begin(), next[q].elements().end());
        el.insert(el.end(), add[q].begin(), add[q].end());
        next[q] = HfSet::make(std::move(el));
      }
    stages.push_back(std::move(next));
    trace.push_back(gamma);
  }
  return FormativeProcess(std::move(stages), std::move(trace), false);
}

std::map<PlaceSet, Stage> grand_events(const FormativeProcess& p) {
  const Partition fin = p.final_partition();
  std::map<PlaceSet, Stage> out;
  for (const auto& e : p.unionset(p.xi()).elements()) {
    auto node = fin.union_node(e);
    if (!node) continue;
    const Stage b = *p.birth(e);
    if (b > 0) out[*node] = b - 1;
  }
  return out;
}

Stage grand_event(const FormativeProcess& p, PlaceSet a) {
  const HfSet u = p.union_of(p.xi(), a);
  auto b = p.birth(u);
  if (!b || *b == 0) return p.xi();
  return *b - 1;
}

Stage ge_min(const FormativeProcess& p, const std::vector<PlaceSet>& nodes) {
  Stage m = p.xi();
  for (auto a : nodes) m = std::min(m, grand_event(p, a));
  return m;
}

ElementStatus element_status(const FormativeProcess& p, Stage mu, const HfSet& e) {
  auto b = p.birth(e);
  if (!b || !p.unionset(p.xi()).contains(e)) throw Error(e.to_string() + " is not in the final unionset");
  if (mu < p.xi() && *b == mu + 1) return ElementStatus::New;
  auto fu = p.first_use(e);
  if (fu && *fu <= mu) return ElementStatus::Used;
  return ElementStatus::Unused;
}

PlaceSet local_trashes(const std::map<PlaceSet, Stage>& ge, Stage xi, const ColoredBoard& board, PlaceSet a) {
  auto it = ge.find(a);
  if (it == ge.end()) return {};
  const Stage ga = it->second;
  PlaceSet out;
  for (auto g : (board.target(a) - board.red()).places()) {
    bool ok = true;
    for (const auto& [b, gb] : ge)
      if (b.contains(g) && gb <= ga) {
        ok = false;
        break;
      }
    // Nodes without a recorded grand event sit at ξ > ga.
    if (ok && ga < xi) out.insert(g);
  }
  return out;
}

PlaceSet local_trashes(const FormativeProcess& p, const ColoredBoard& board, PlaceSet a) {
  return local_trashes(grand_events(p), p.xi(), board, a);
}

std::optional<std::vector<PlaceSet>> pow_nodes_meeting(const ColoredBoard& board, PlaceSet w) {
  const std::size_t realized = board.targets().size();
  std::set<PlaceSet> out;
  for (PlaceSet g : board.pow_generators()) {
    if (!g.meets(w)) continue;
    const unsigned all = g.size(), off = (g - w).size();
    if (all >= 63 || (std::uint64_t{1} << all) - (std::uint64_t{1} << off) > realized) return std::nullopt;
    const std::uint64_t bits = g.bits();
    for (std::uint64_t sub = bits; sub; sub = (sub - 1) & bits) {
      const PlaceSet node = PlaceSet::from_bits(sub);
      if (!node.meets(w)) continue;
      if (board.target(node).empty()) return std::nullopt;
      out.insert(node);
    }
  }
  return std::vector<PlaceSet>(out.begin(), out.end());
}

bool is_closed(const FormativeProcess& p, const ColoredBoard& board, PlaceSet w) {
  if (w.meets(board.red())) return false;
  auto nodes = pow_nodes_meeting(board, w);
  if (!nodes) return false;
  const auto ge = grand_events(p);
  for (auto a : *nodes)
    if (!local_trashes(ge, p.xi(), board, a).meets(w)) return false;
  return true;
}

SalientOrdinals salient_ordinals(const FormativeProcess& p, Stage k) {
  SalientOrdinals s;
  const Stage xi = p.xi();
  const HfSet& fin = p.unionset(xi);
  for (Stage mu = k; mu < xi; ++mu) {
    const PlaceSet a = p.trace_at(mu);
    bool arrow = false;
    for (Place q = 0; q < p.num_places() && !arrow; ++q) {
      if (p.delta(mu, q).empty()) continue;
      bool disjoint = true;
      for (const auto& e : p.block(mu, q).elements())
        if (p.in_pow_star_at(e, mu, a)) {
          disjoint = false;
          break;
        }
      arrow = disjoint;
    }
    if (arrow) s.arrow.push_back(mu);
    const HfSet now = p.union_of(mu, a);
    if (now == p.union_of(xi, a) && fin.contains(now)) s.grand.push_back(mu);
  }
  return s;
}

}  // namespace mlsspf
