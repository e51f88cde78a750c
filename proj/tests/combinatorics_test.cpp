#include "doctest.h"

#include <stdexcept>

#include "kpnlab/combinatorics.hpp"

using namespace kpnlab;

TEST_CASE("base-p digits")
{
  CHECK(base_p_digits(7, 5) == std::vector<u64>{2, 1});
  CHECK(base_p_digits(0, 5).empty());
  CHECK(base_p_digits(624, 5) == std::vector<u64>{4, 4, 4, 4});
  auto prof = ExponentProfile::of(1 + 2 * 5 + 3 * 125, 5);
  CHECK(prof.digit(0) == 1);
  CHECK(prof.digit(2) == 0);
  CHECK(prof.digit(3) == 3);
  CHECK(prof.digit(7) == 0);
  CHECK(prof.digit_sum == 6);
}

TEST_CASE("lucas binomial")
{
  CHECK(lucas_binomial(7, 3, 5) == 0);
  CHECK(lucas_binomial(7, 2, 5) == 1);
  CHECK(lucas_binomial(123, 0, 7) == 1);
  for (u64 p : {3, 5, 7, 11, 13})
    for (u64 a = 0; a <= 500; a += (a < 60 ? 1 : 7))
      for (u64 b = 0; b <= a; ++b)
        REQUIRE(lucas_binomial(a, b, p) == mod_p(binomial(a, b), p));
}

TEST_CASE("S(k,r) spot values")
{
  CHECK(s_direct(1, 2) == -2);
  CHECK(s_direct(2, 3) == 0);
  CHECK(s_direct(2, 2) == 0);
  CHECK(*s_closed(2, 4) == 24);
  CHECK(*s_closed(2, 6) == 120);
  CHECK(*s_closed(3, 8) == -10080);
  CHECK_FALSE(s_closed(2, 8).has_value());
  CHECK_THROWS_AS(s_direct(13, 2), std::invalid_argument);
}

TEST_CASE("S(k,r) direct agrees with closed forms")
{
  for (unsigned k = 1; k <= 6; ++k) {
    for (unsigned r = 0; r <= 2 * k + 2; ++r)
      if (auto c = s_closed(k, r))
        CHECK(s_direct(k, r) == *c);
    for (unsigned r = 1; r <= 2 * k + 5; r += 2)
      CHECK(s_direct(k, r) == 0);
  }
}

TEST_CASE("mirror terms cancel for odd r")
{
  for (unsigned k = 1; k <= 5; ++k)
    for (unsigned r = 1; r <= 9; r += 2)
      for (unsigned i = 0; i <= k; ++i)
        for (unsigned j = 0; j <= k; ++j) {
          BigInt d1 = static_cast<long>(i) - static_cast<long>(j);
          BigInt t1 = binomial(k, i) * binomial(k, j) * boost::multiprecision::pow(d1, r);
          BigInt t2 = binomial(k, j) * binomial(k, i) * boost::multiprecision::pow(BigInt(-d1), r);
          CHECK(t1 + t2 == 0);
        }
}
