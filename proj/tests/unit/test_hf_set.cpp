#include <doctest.h>

#include <bit>
#include <random>

#include "helpers.hpp"
#include "mlsspf/errors.hpp"
#include "mlsspf/hf_set.hpp"

using namespace mlsspf;
using namespace testutil;

TEST_CASE("make_set canonicalizes") {
  CHECK(HfSet::make({}) == HfSet{});
  CHECK(HfSet::make({S(), S()}) == S(S()));
  CHECK(HfSet::make({S(), S()}).size() == 1);
  HfSet two = HfSet::make({S(S()), S()});
  CHECK(two.size() == 2);
  CHECK(two.rank() == naive_rank(to_naive(two)));
  CHECK(two.rank() == 2);
  CHECK(two.elements()[0] == S());
}

TEST_CASE("compare") {
  CHECK(compare(S(), S(S()), Relation::In));
  CHECK(compare(S(S()), S(S(), S(S())), Relation::Subseteq));
  CHECK_FALSE(compare(S(S(S())), S(S()), Relation::Eq));
  CHECK_FALSE(compare(S(S()), S(S()), Relation::In));
}

TEST_CASE("bool_op") {
  CHECK(bool_op(S(S()), S(S(S())), BoolOp::Union) == S(S(), S(S())));
  CHECK(bool_op(S(S(), S(S())), S(S()), BoolOp::Inter) == S(S()));
  CHECK(bool_op(S(S()), S(S()), BoolOp::Diff) == S());
}

TEST_CASE("powerset") {
  CHECK(powerset(S()) == S(S()));
  CHECK(powerset(S(S())) == S(S(), S(S())));
  const HfSet s = S(S(), S(S()));
  CHECK(powerset(s) == HfSet::make(all_subsets(s)));
  CHECK(powerset(s).size() == 4);
  CHECK_THROWS_AS(powerset(nat(5), 16), LimitExceeded);
}

TEST_CASE("pow_star") {
  const HfSet a = S(), b = S(a), c = S(b);
  CHECK(pow_star(S()) == S(S()));
  CHECK(pow_star(S(S(a))) == pow_star_by_filtering({S(a)}));
  CHECK(pow_star(S(S(a))) == S(S(a)));
  std::vector<HfSet> fam{S(a), S(b, c)};
  const HfSet got = pow_star(std::span<const HfSet>(fam));
  CHECK(got == pow_star_by_filtering(fam));
  CHECK(got == S(S(a, b), S(a, c), S(a, b, c)));
  CHECK(pow_star(S(S(), S(a))) == S());
  std::vector<HfSet> overlap{S(a, b), S(b, c)};
  CHECK(pow_star(std::span<const HfSet>(overlap)) == pow_star_by_filtering(overlap));
  CHECK(pow_star(std::span<const HfSet>(overlap)) == S(S(b), S(a, b), S(a, c), S(b, c), S(a, b, c)));
  CHECK_THROWS_AS(pow_star(S(nat(5), S(nat(6))), 4), LimitExceeded);
}

TEST_CASE("meets") {
  CHECK(meets(S(S()), S(S(), S(S()))));
  CHECK_FALSE(meets(S(S()), S(S(S()))));
  const HfSet a = S();
  const HfSet ps = pow_star(S(S(a)));
  CHECK(ps == pow_star_by_filtering({S(a)}));
  CHECK(meets(ps, S(S(a), S(S(a)))));
}

TEST_CASE("transitive_ops") {
  auto e = transitive_ops(S());
  CHECK(e.closure == S());
  CHECK(e.is_transitive);
  auto t = transitive_ops(S(S(S())));
  CHECK(t.closure == S(S(), S(S())));
  CHECK_FALSE(t.is_transitive);
  const HfSet three = S(S(), S(S()), S(S(S())));
  auto u = transitive_ops(three);
  CHECK(u.closure == three);
  CHECK(u.is_transitive);
}

TEST_CASE("property: canonical equality is extensional") {
  std::mt19937_64 rng(11);
  auto pool = random_pool(rng, 60);
  for (const auto& x : pool)
    for (const auto& y : pool) {
      std::mt19937_64 sh(x.hash() ^ y.hash());
      CHECK((x == y) == naive_eq(to_naive(x, &sh), to_naive(y, &sh)));
    }
  for (const auto& x : pool) CHECK(x.rank() == naive_rank(to_naive(x)));
}

TEST_CASE("property: canonical order is a strict total order") {
  std::mt19937_64 rng(12);
  auto pool = random_pool(rng, 40);
  for (const auto& x : pool)
    for (const auto& y : pool) {
      CHECK(((x < y) + (y < x) + (x == y)) == 1);
      for (const auto& z : pool)
        if (x < y && y < z) CHECK(x < z);
    }
}

TEST_CASE("property: pow_star agrees with subset filtering") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 100; ++round) {
    auto pool = random_pool(rng, 12);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_int_distribution<std::size_t> total(0, 12);
    const std::size_t n = total(rng);
    std::vector<HfSet> fam;
    std::size_t i = 0;
    while (i < n) {
      std::uniform_int_distribution<std::size_t> w(1, n - i);
      const std::size_t k = w(rng);
      fam.push_back(HfSet::make({pool.begin() + i, pool.begin() + i + k}));
      i += k;
    }
    const HfSet got = pow_star(std::span<const HfSet>(fam));
    CHECK(got == pow_star_by_filtering(fam));
    std::uint64_t prod = 1;
    for (const auto& z : fam) prod *= (std::uint64_t{1} << z.size()) - 1;
    CHECK(got.size() == prod);
    CHECK(pow_star_size(fam) == prod);
    for (const auto& y : got.elements()) CHECK(in_pow_star(y, fam));
  }
}

TEST_CASE("property: powerset raises rank by one") {
  // V_4 holds every set of rank at most 3; rank-4 sets are sampled subsets of it.
  HfSet v;
  for (int i = 0; i < 4; ++i) v = powerset(v);
  REQUIRE(v.size() == 16);
  std::vector<HfSet> cases(v.elements().begin(), v.elements().end());
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<std::uint32_t> mask(1, 0xffff);
  while (cases.size() < 200) {
    const std::uint32_t m = mask(rng);
    if (std::popcount(m) > 10) continue;
    std::vector<HfSet> sub;
    for (int i = 0; i < 16; ++i)
      if (m >> i & 1) sub.push_back(v.elements()[i]);
    cases.push_back(HfSet::make(sub));
  }
  for (const auto& s : cases) {
    REQUIRE(s.rank() <= 4);
    CHECK(powerset(s).rank() == s.rank() + 1);
  }
}

TEST_CASE("property: transitive closure is least") {
  std::mt19937_64 rng(15);
  auto pool = random_pool(rng, 40);
  for (const auto& s : pool) {
    const HfSet c = transitive_closure(s);
    CHECK(is_transitive(c));
    CHECK(s.subset_of(c));
    for (const auto& e : c.elements()) {
      // Every member of the closure is needed: removing it breaks transitivity or containment.
      const HfSet smaller = c.without(e);
      CHECK_FALSE((is_transitive(smaller) && s.subset_of(smaller)));
    }
  }
}
