#include "mlsspf/hf_set.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "mlsspf/errors.hpp"

namespace mlsspf {

namespace {

constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

HfSet HfSet::from_sorted(std::vector<HfSet> elems) {
  if (elems.empty()) return HfSet{};
  auto rep = std::make_shared<Rep>();
  unsigned r = 0;
  std::uint64_t h = mix(elems.size());
  for (const auto& e : elems) {
    r = std::max(r, e.rank() + 1);
    h = mix(h ^ e.hash());
  }
  rep->rank = r;
  rep->hash = h;
  rep->elems = std::move(elems);
  return HfSet{std::shared_ptr<const Rep>(std::move(rep))};
}

HfSet HfSet::make(std::vector<HfSet> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return from_sorted(std::move(elems));
}

HfSet HfSet::singleton(HfSet e) {
  std::vector<HfSet> v;
  v.push_back(std::move(e));
  return from_sorted(std::move(v));
}

std::span<const HfSet> HfSet::elements() const& noexcept {
  if (!rep_) return {};
  return {rep_->elems.data(), rep_->elems.size()};
}

bool HfSet::contains(const HfSet& e) const {
  if (!rep_ || e.rank() >= rank()) return false;
  return std::binary_search(rep_->elems.begin(), rep_->elems.end(), e);
}

bool HfSet::subset_of(const HfSet& other) const {
  if (size() > other.size()) return false;
  auto mine = elements();
  auto theirs = other.elements();
  return std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end());
}

HfSet HfSet::with(const HfSet& e) const {
  if (contains(e)) return *this;
  std::vector<HfSet> v(elements().begin(), elements().end());
  v.insert(std::lower_bound(v.begin(), v.end(), e), e);
  return from_sorted(std::move(v));
}

HfSet HfSet::without(const HfSet& e) const {
  if (!contains(e)) return *this;
  std::vector<HfSet> v;
  v.reserve(size() - 1);
  for (const auto& x : elements())
    if (x != e) v.push_back(x);
  return from_sorted(std::move(v));
}

bool operator==(const HfSet& a, const HfSet& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.rank() != b.rank()) return false;
  auto x = a.elements();
  auto y = b.elements();
  return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

std::strong_ordering operator<=>(const HfSet& a, const HfSet& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  auto x = a.elements();
  auto y = b.elements();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string HfSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& e : elements()) {
    if (!first) out += ",";
    first = false;
    out += e.to_string();
  }
  out += "}";
  return out;
}

HfSet set_union(const HfSet& a, const HfSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<HfSet> v;
  v.reserve(a.size() + b.size());
  auto x = a.elements();
  auto y = b.elements();
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(v));
  return HfSet::from_sorted(std::move(v));
}

HfSet set_intersection(const HfSet& a, const HfSet& b) {
  std::vector<HfSet> v;
  auto x = a.elements();
  auto y = b.elements();
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(v));
  return HfSet::from_sorted(std::move(v));
}

HfSet set_difference(const HfSet& a, const HfSet& b) {
  if (b.empty()) return a;
  std::vector<HfSet> v;
  auto x = a.elements();
  auto y = b.elements();
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(v));
  return HfSet::from_sorted(std::move(v));
}

bool compare(const HfSet& a, const HfSet& b, Relation rel) {
  switch (rel) {
    case Relation::In:
      return b.contains(a);
    case Relation::Subseteq:
      return a.subset_of(b);
    case Relation::Eq:
      return a == b;
  }
  return false;
}

HfSet bool_op(const HfSet& a, const HfSet& b, BoolOp op) {
  switch (op) {
    case BoolOp::Union:
      return set_union(a, b);
    case BoolOp::Inter:
      return set_intersection(a, b);
    case BoolOp::Diff:
      return set_difference(a, b);
  }
  return {};
}

HfSet big_union(std::span<const HfSet> family) {
  std::vector<HfSet> all;
  for (const auto& z : family) all.insert(all.end(), z.elements().begin(), z.elements().end());
  return HfSet::make(std::move(all));
}

HfSet big_union(const HfSet& family) { return big_union(family.elements()); }

HfSet powerset(const HfSet& s, std::size_t limit) {
  const std::size_t n = s.size();
  if (n >= 63 || (std::size_t{1} << n) > limit)
    throw LimitExceeded("powerset of a " + std::to_string(n) + "-element set exceeds limit " +
                        std::to_string(limit));
  auto elems = s.elements();
  std::vector<HfSet> subsets;
  subsets.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<HfSet> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(elems[i]);
    subsets.push_back(HfSet::from_sorted(std::move(sub)));
  }
  return HfSet::make(std::move(subsets));
}

std::uint64_t pow_star_size(std::span<const HfSet> family) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (const auto& z : family) {
    if (z.empty()) return 0;
    if (z.size() >= 64) return kMax;
    const std::uint64_t f = (std::uint64_t{1} << z.size()) - 1;
    if (total > kMax / f) return kMax;
    total *= f;
  }
  return total;
}

namespace {

bool pairwise_disjoint(std::span<const HfSet> family) {
  std::size_t total = 0;
  for (const auto& z : family) total += z.size();
  return big_union(family).size() == total;
}

}  // namespace

HfSet pow_star(std::span<const HfSet> family, std::size_t limit) {
  for (const auto& z : family)
    if (z.empty()) return {};
  if (family.empty()) return HfSet::singleton(HfSet{});

  if (!pairwise_disjoint(family)) {
    // Overlapping members: filter subsets of the union directly.
    const HfSet u = big_union(family);
    if (u.size() >= 63 || (std::size_t{1} << u.size()) > limit)
      throw LimitExceeded("pow_star over overlapping family exceeds limit");
    std::vector<HfSet> out;
    const HfSet subsets = powerset(u, limit);
    for (const auto& y : subsets.elements()) {
      bool ok = true;
      for (const auto& z : family)
        if (!meets(y, z)) {
          ok = false;
          break;
        }
      if (ok) out.push_back(y);
    }
    return HfSet::from_sorted(std::move(out));
  }

  const std::uint64_t count = pow_star_size(family);
  if (count > limit)
    throw LimitExceeded("pow_star would produce " + std::to_string(count) + " sets (limit " +
                        std::to_string(limit) + ")");

  // Odometer over one nonempty submask per block.
  const std::size_t k = family.size();
  std::vector<std::uint64_t> mask(k, 1);
  std::vector<HfSet> out;
  out.reserve(count);
  while (true) {
    std::vector<HfSet> y;
    for (std::size_t i = 0; i < k; ++i) {
      auto elems = family[i].elements();
      for (std::size_t j = 0; j < elems.size(); ++j)
        if (mask[i] >> j & 1) y.push_back(elems[j]);
    }
    out.push_back(HfSet::make(std::move(y)));
    std::size_t i = 0;
    for (; i < k; ++i) {
      const std::uint64_t full = (std::uint64_t{1} << family[i].size()) - 1;
      if (mask[i] < full) {
        ++mask[i];
        break;
      }
      mask[i] = 1;
    }
    if (i == k) break;
  }
  return HfSet::make(std::move(out));
}

HfSet pow_star(const HfSet& family, std::size_t limit) { return pow_star(family.elements(), limit); }

bool in_pow_star(const HfSet& y, std::span<const HfSet> family) {
  for (const auto& z : family)
    if (!meets(y, z)) return false;
  for (const auto& e : y.elements()) {
    bool found = false;
    for (const auto& z : family)
      if (z.contains(e)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool meets(const HfSet& a, const HfSet& b) {
  auto x = a.elements();
  auto y = b.elements();
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    auto c = *i <=> *j;
    if (c == 0) return true;
    if (c < 0)
      ++i;
    else
      ++j;
  }
  return false;
}

HfSet transitive_closure(const HfSet& s) {
  std::unordered_set<HfSet, HfSetHash> seen;
  std::vector<HfSet> stack(s.elements().begin(), s.elements().end());
  while (!stack.empty()) {
    HfSet e = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(e).second) continue;
    for (const auto& x : e.elements()) stack.push_back(x);
  }
  return HfSet::make(std::vector<HfSet>(seen.begin(), seen.end()));
}

bool is_transitive(const HfSet& s) {
  for (const auto& e : s.elements())
    if (!e.subset_of(s)) return false;
  return true;
}

TransitiveInfo transitive_ops(const HfSet& s) { return {transitive_closure(s), is_transitive(s)}; }

}  // namespace mlsspf
