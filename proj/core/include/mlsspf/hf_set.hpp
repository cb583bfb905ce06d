#pragma once

// Canonical hereditarily finite sets.
//
// An HfSet is an immutable value holding its elements in canonical order
// (rank, then size, then lexicographic on the ordered elements). Copies share
// structure; nothing is mutated after construction, so values can be read
// from any number of threads.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mlsspf {

inline constexpr std::size_t kDefaultLimit = std::size_t{1} << 20;

class HfSet {
 public:
  HfSet() = default;  // the empty set

  // Sorts and deduplicates.
  static HfSet make(std::vector<HfSet> elems);
  // Caller guarantees strictly increasing canonical order.
  static HfSet from_sorted(std::vector<HfSet> elems);
  static HfSet singleton(HfSet e);

  std::span<const HfSet> elements() const& noexcept;
  // Spans into temporaries would dangle.
  std::span<const HfSet> elements() const&& = delete;
  std::size_t size() const noexcept { return rep_ ? rep_->elems.size() : 0; }
  bool empty() const noexcept { return size() == 0; }
  unsigned rank() const noexcept { return rep_ ? rep_->rank : 0; }
  std::uint64_t hash() const noexcept { return rep_ ? rep_->hash : kEmptyHash; }

  bool contains(const HfSet& e) const;
  bool subset_of(const HfSet& other) const;

  HfSet with(const HfSet& e) const;
  HfSet without(const HfSet& e) const;

  friend bool operator==(const HfSet& a, const HfSet& b);
  friend std::strong_ordering operator<=>(const HfSet& a, const HfSet& b);

  std::string to_string() const;

 private:
  struct Rep {
    std::vector<HfSet> elems;
    unsigned rank = 0;
    std::uint64_t hash = 0;
  };
  static constexpr std::uint64_t kEmptyHash = 0x9e3779b97f4a7c15ULL;

  explicit HfSet(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

struct HfSetHash {
  std::size_t operator()(const HfSet& s) const noexcept { return static_cast<std::size_t>(s.hash()); }
};

enum class Relation { In, Subseteq, Eq };
enum class BoolOp { Union, Inter, Diff };

bool compare(const HfSet& a, const HfSet& b, Relation rel);
HfSet bool_op(const HfSet& a, const HfSet& b, BoolOp op);

HfSet set_union(const HfSet& a, const HfSet& b);
HfSet set_intersection(const HfSet& a, const HfSet& b);
HfSet set_difference(const HfSet& a, const HfSet& b);

// ⋃X
HfSet big_union(const HfSet& family);
HfSet big_union(std::span<const HfSet> family);

// Throws LimitExceeded when 2^|s| > limit.
HfSet powerset(const HfSet& s, std::size_t limit = kDefaultLimit);

// { Y ⊆ ⋃X : Y meets every z ∈ X }. A family containing ∅ yields ∅.
// Throws LimitExceeded when the result would hold more than `limit` sets.
HfSet pow_star(const HfSet& family, std::size_t limit = kDefaultLimit);
HfSet pow_star(std::span<const HfSet> family, std::size_t limit = kDefaultLimit);

// |℘*(X)| = ∏(2^|z| − 1) for disjoint X, saturated at UINT64_MAX.
std::uint64_t pow_star_size(std::span<const HfSet> family);

bool in_pow_star(const HfSet& y, std::span<const HfSet> family);

// A ∋∈ B
bool meets(const HfSet& a, const HfSet& b);

struct TransitiveInfo {
  HfSet closure;
  bool is_transitive = false;
};
TransitiveInfo transitive_ops(const HfSet& s);
HfSet transitive_closure(const HfSet& s);
bool is_transitive(const HfSet& s);

}  // namespace mlsspf

template <>
struct std::hash<mlsspf::HfSet> {
  std::size_t operator()(const mlsspf::HfSet& s) const noexcept { return mlsspf::HfSetHash{}(s); }
};
