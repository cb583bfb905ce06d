#pragma once

#include <bit>
#include <compare>
#include <functional>
#include <initializer_list>
#include <cstdint>
#include <string>
#include <vector>

#include "mlsspf/errors.hpp"

namespace mlsspf {

using Place = unsigned;

inline constexpr unsigned kMaxPlaces = 64;

// A node of a board: a set of places, at most 64 of them.
class PlaceSet {
 public:
  constexpr PlaceSet() = default;
  static constexpr PlaceSet from_bits(std::uint64_t bits) { return PlaceSet(bits); }
  static PlaceSet of(std::initializer_list<Place> ps) {
    PlaceSet s;
    for (auto p : ps) s.insert(p);
    return s;
  }
  static PlaceSet all(unsigned n) {
    check(n == 0 ? 0 : n - 1);
    return PlaceSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool contains(Place p) const { return p < 64 && (bits_ >> p & 1); }
  void insert(Place p) {
    check(p);
    bits_ |= std::uint64_t{1} << p;
  }
  void erase(Place p) {
    if (p < 64) bits_ &= ~(std::uint64_t{1} << p);
  }
  constexpr bool subset_of(PlaceSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool meets(PlaceSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr PlaceSet operator|(PlaceSet o) const { return PlaceSet(bits_ | o.bits_); }
  constexpr PlaceSet operator&(PlaceSet o) const { return PlaceSet(bits_ & o.bits_); }
  constexpr PlaceSet operator-(PlaceSet o) const { return PlaceSet(bits_ & ~o.bits_); }
  PlaceSet& operator|=(PlaceSet o) {
    bits_ |= o.bits_;
    return *this;
  }

  // Least place; undefined on the empty node.
  constexpr Place front() const { return static_cast<Place>(std::countr_zero(bits_)); }

  std::vector<Place> places() const {
    std::vector<Place> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<Place>(std::countr_zero(b)));
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto p : places()) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(p);
    }
    return s + "}";
  }

  friend constexpr bool operator==(PlaceSet, PlaceSet) = default;
  friend constexpr std::strong_ordering operator<=>(PlaceSet a, PlaceSet b) { return a.bits_ <=> b.bits_; }

 private:
  constexpr explicit PlaceSet(std::uint64_t bits) : bits_(bits) {}
  static void check(Place p) {
    if (p >= kMaxPlaces) throw LimitExceeded("more than 64 places");
  }
  std::uint64_t bits_ = 0;
};

struct PlaceSetHash {
  std::size_t operator()(PlaceSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

}  // namespace mlsspf
