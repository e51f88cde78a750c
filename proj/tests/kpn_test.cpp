#include "doctest.h"

#include <numeric>
#include <set>
#include <stdexcept>

#include "kpnlab/kpn.hpp"

using namespace kpnlab;

namespace {

// Reference k-PN test: every tuple, every collision, no tables.
bool kpn_oracle(u64 n, unsigned k, const Field& f)
{
  const u64 q = f.order();
  std::vector<u64> idx(k, 1);
  while (true) {
    std::vector<Elem> dirs;
    for (u64 i : idx)
      dirs.push_back(f.element(i));
    if (!is_permutation(monomial_difference(n, DirectionTuple(f, dirs)), f).verdict)
      return false;
    std::size_t j = 0;
    while (j < k && ++idx[j] == q)
      idx[j++] = 1;
    if (j == k)
      return true;
  }
}

} // namespace

TEST_CASE("hermite-dickson agrees with the image tally")
{
  for (const Field& f : {Field::gf(3, 2), Field::gf(5, 2), Field::gf(7, 2)}) {
    for (u64 n = 1; n < f.order(); ++n) {
      const Poly xn = Poly::monomial(f, f.one(), n);
      const bool direct = is_permutation([&](const Elem& x) { return f.pow(x, n); }, f).verdict;
      CHECK(hermite_dickson(xn).verdict == direct);
      CHECK(direct == (std::gcd(n, f.order() - 1) == 1));
    }
  }
}

TEST_CASE("permutation witnesses")
{
  Field f = Field::prime(7);
  PermReport r = is_permutation([&](const Elem& x) { return f.mul(x, x); }, f);
  CHECK_FALSE(r.verdict);
  CHECK(r.kind == PermWitness::collision);
  CHECK(f.mul(r.x1, r.x1) == f.mul(r.x2, r.x2));
  CHECK(r.x1 != r.x2);
}

TEST_CASE("sweep agrees with the exhaustive oracle")
{
  for (const Field& f : {Field::prime(7), Field::gf(3, 2)}) {
    for (unsigned k = 1; k <= 2; ++k) {
      for (u64 n = 1; n < f.order(); ++n) {
        const bool expected = kpn_oracle(n, k, f);
        KpnReport full = is_kpn(n, k, f, false);
        KpnReport norm = is_kpn(n, k, f, true);
        CHECK(full.verdict == expected);
        CHECK(norm.verdict == expected);
        if (!expected) {
          CHECK(verify_witness(full));
          CHECK(verify_witness(norm));
        }
      }
    }
  }
}

TEST_CASE("normalized and full sweeps agree on GF(25)")
{
  Field f = Field::gf(5, 2);
  for (u64 n = 1; n < f.order(); ++n)
    CHECK(is_kpn(n, 2, f, true).verdict == is_kpn(n, 2, f, false).verdict);
}

TEST_CASE("verdicts do not depend on the tower")
{
  for (u64 n = 1; n < 49; ++n)
    CHECK(is_kpn(n, 2, Field::gf(7, 2, 0)).verdict == is_kpn(n, 2, Field::gf(7, 2, 1)).verdict);
  Field a = Field::gf(5, 4, 0), b = Field::gf(5, 4, 1);
  for (u64 n = 1; n < 80; ++n)
    CHECK(is_kpn(n, 2, a).verdict == is_kpn(n, 2, b).verdict);
}

TEST_CASE("classified sets are closed under frobenius")
{
  for (const Field& f : {Field::gf(5, 2), Field::gf(7, 2)}) {
    ClassifyOptions opt;
    opt.subfield_prefilter = false;
    auto res = classify(f, 2, opt).exponents;
    std::set<u64> s(res.begin(), res.end());
    for (u64 n : res)
      CHECK(s.count(frobenius_shift(n, f)) == 1);
    opt.frobenius_reduce = true;
    CHECK(classify(f, 2, opt).exponents == res);
  }
}

TEST_CASE("worker count does not change reports")
{
  Field f = Field::gf(5, 2);
  for (u64 n : {2u, 7u, 15u, 22u}) {
    KpnReport one = is_kpn(n, 3, f, true, 1);
    KpnReport many = is_kpn(n, 3, f, true, 8);
    CHECK(one.verdict == many.verdict);
    CHECK(one.tuples_tested == many.tuples_tested);
    CHECK(one.dirs == many.dirs);
    CHECK(one.perm.x1 == many.perm.x1);
    CHECK(one.perm.x2 == many.perm.x2);
  }
  ClassifyOptions opt;
  opt.jobs = 8;
  CHECK(classify(f, 2, opt).exponents == std::vector<u64>{3, 15});
}

TEST_CASE("subfield filter")
{
  Field f = Field::gf(5, 4);
  // 7 folds to 3 mod 4 in GF(5)? 7 -> 3, and x^3 is 2-PN over GF(5).
  CHECK(subfield_filter(7, 2, f, f.subfield(1)));
  // over GF(25), 7 is not in {3, 15}
  CHECK_FALSE(subfield_filter(7, 2, f, f.subfield(2)));
}

TEST_CASE("argument checks")
{
  Field f = Field::gf(5, 2);
  CHECK_THROWS_AS(is_kpn(0, 2, f), std::invalid_argument);
  CHECK_THROWS_AS(is_kpn(25, 2, f), std::invalid_argument);
  CHECK_THROWS_AS(is_kpn(3, 5, f), std::invalid_argument);
  CHECK_THROWS_AS(classify(Field::gf(5, 4), 4), std::invalid_argument);
}

TEST_CASE("collision search")
{
  Field f = Field::gf(7, 2);
  auto sq = [&](const Elem& x) { return f.mul(x, x); };
  CollisionResult ex = find_collision(sq, f);
  REQUIRE(ex.found);
  CHECK(sq(ex.x1) == sq(ex.x2));
  CollisionOptions opt;
  opt.strategy = CollisionStrategy::birthday;
  opt.table_bits = 10;
  CollisionResult bd = find_collision(sq, f, opt);
  REQUIRE(bd.found);
  CHECK(bd.x1 != bd.x2);
  CHECK(sq(bd.x1) == sq(bd.x2));
  // a permutation has no collision
  CHECK_FALSE(find_collision([&](const Elem& x) { return f.pow(x, 5); }, f).found);
}
