#include "doctest.h"

#include <random>
#include <stdexcept>

#include "kpnlab/exact.hpp"

using namespace kpnlab;

namespace {

// Determinant of the Sylvester matrix by rational elimination.
Rational sylvester(const ZPoly& f, const ZPoly& g)
{
  const std::size_t m = f.degree(), n = g.degree(), N = m + n;
  std::vector<std::vector<Rational>> a(N, std::vector<Rational>(N, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i)
      a[r][r + i] = f.coeff(m - i);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i)
      a[n + r][r + i] = g.coeff(n - i);
  Rational det = 1;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    while (piv < N && a[piv][c] == 0)
      ++piv;
    if (piv == N)
      return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < N; ++r) {
      Rational k = a[r][c] / a[c][c];
      for (std::size_t j = c; j < N; ++j)
        a[r][j] -= k * a[c][j];
    }
  }
  return det;
}

ZPoly random_zpoly(std::size_t deg, std::mt19937_64& rng)
{
  std::vector<Rational> c(deg + 1);
  for (auto& x : c)
    x = Rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 3));
  if (c.back() == 0)
    c.back() = 7;
  return ZPoly(c);
}

std::vector<u64> primes_with_common_factor(const ZPoly& f, const ZPoly& g)
{
  std::vector<u64> out;
  for (const auto& e : exceptional_primes(f, g))
    if (e.prime >= 5 && e.gcd && e.gcd->degree() >= 1)
      out.push_back(e.prime.convert_to<u64>());
  return out;
}

const ExceptionalPrime& at(const std::vector<ExceptionalPrime>& v, u64 p)
{
  for (const auto& e : v)
    if (e.prime == p)
      return e;
  throw std::out_of_range("prime not listed");
}

} // namespace

TEST_CASE("zpoly parsing")
{
  ZPoly f = parse_zpoly("4/9*b^4 - 2*b + 1");
  CHECK(f.degree() == 4);
  CHECK(f.coeff(4) == Rational(4, 9));
  CHECK(f.coeff(1) == -2);
  CHECK(to_string(f, "b") == "4/9*b^4 - 2*b + 1");
  CHECK(parse_zpoly("(b-1)*(b+1)") == parse_zpoly("b^2 - 1"));
  CHECK(parse_zpoly("binom(b,3)") == parse_zpoly("(b^3 - 3*b^2 + 2*b)/6"));
  CHECK(parse_zpoly("-x^2") == parse_zpoly("0 - x^2"));
  CHECK_THROWS_AS(parse_zpoly("x*y"), std::invalid_argument);
  CHECK_THROWS_AS(parse_zpoly("1/x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_zpoly("(x"), std::invalid_argument);
}

TEST_CASE("resultant")
{
  CHECK(resultant(parse_zpoly("x - 3"), parse_zpoly("x - 8")) == -5);
  CHECK(resultant(parse_zpoly("x^2 + 1"), parse_zpoly("x^2 - 1")) == 4);
  ZPoly f = parse_zpoly("x^3 - 2*x + 5");
  CHECK(resultant(f, f) == 0);
  CHECK_THROWS_AS(resultant(ZPoly::constant(2), ZPoly::constant(3)), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    ZPoly a = random_zpoly(1 + rng() % 6, rng);
    ZPoly b = random_zpoly(rng() % 6, rng);
    if (b.degree() < 1 && a.degree() < 1)
      continue;
    CHECK(resultant(a, b) == sylvester(a, b));
    CHECK(resultant(b, a) == sylvester(b, a));
  }
}

TEST_CASE("integer factorization")
{
  Factorization f = factor_integer(-7533);
  CHECK(f.sign == -1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<BigInt, unsigned>(3, 5));
  CHECK(f.factors[1] == std::pair<BigInt, unsigned>(31, 1));
  CHECK(f.to_string() == "-1 * 3^5 * 31");
  CHECK(factor_integer(1).factors.empty());
  CHECK(factor_integer(1).sign == 1);
  CHECK_THROWS_AS(factor_integer(0), std::invalid_argument);

  auto big = factor_integer(15052321);
  REQUIRE(big.factors.size() == 1);
  CHECK(big.factors[0].first == 15052321);

  // trial-division oracle on composites with large cofactors
  BigInt n = BigInt(1000003) * 1000033 * 999983 * 4;
  auto fn = factor_integer(n);
  CHECK(fn.value() == n);
  for (const auto& [pr, e] : fn.factors)
    CHECK(is_probable_prime(pr));
  CHECK(fn.factors.size() == 4);
  BigInt semi = BigInt("1000000007") * BigInt("998244353") * BigInt("1000000009");
  CHECK(factor_integer(semi).factors.size() == 3);
  CHECK(factor_integer(semi).value() == semi);
}

TEST_CASE("reduction mod p")
{
  CHECK(reduce_mod_p(parse_zpoly("4/9*x"), 7) == parse_poly(Field::prime(7), "2*x"));
  CHECK_THROWS_AS(reduce_mod_p(parse_zpoly("4/9*x"), 3), std::domain_error);
  CHECK(reduce_mod_p(parse_zpoly("12*x^2 - 3"), 5) == parse_poly(Field::prime(5), "2*x^2 + 2"));
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    ZPoly a = random_zpoly(3, rng), b = random_zpoly(4, rng);
    for (u64 p : {7, 11, 13})
      CHECK(reduce_mod_p(a * b, p) == reduce_mod_p(a, p) * reduce_mod_p(b, p));
  }
}

TEST_CASE("resultant vanishing mod p matches a common factor")
{
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Rational> ca(3), cb(3);
    for (auto& x : ca)
      x = static_cast<long>(rng() % 30) - 15;
    for (auto& x : cb)
      x = static_cast<long>(rng() % 30) - 15;
    ca[2] = 1;
    cb[2] = 1;
    ZPoly a(ca), b(cb);
    Rational r = resultant(a, b);
    if (r == 0)
      continue;
    for (u64 p : {5, 7, 11, 13, 17, 19, 23}) {
      bool divides = mod_p(boost::multiprecision::numerator(r), p) == 0;
      CHECK(divides == (gcd_poly(reduce_mod_p(a, p), reduce_mod_p(b, p)).degree() >= 1));
    }
  }
}

TEST_CASE("exceptional primes of the r1/r2 core pairs")
{
  ZPoly p1 = parse_zpoly("25*x^2 - 25*x - 59");
  ZPoly p2 = parse_zpoly("1250*x^4 - 2500*x^3 - 4362*x^2 + 5612*x + 5981");
  auto e1 = exceptional_primes(p1, p2);
  CHECK(primes_with_common_factor(p1, p2) == std::vector<u64>{31});
  CHECK(to_string(*at(e1, 31).gcd) == "x^2 + 30*x + 15");
  CHECK(at(e1, 31).irreducible);
  CHECK(at(e1, 5).gcd->degree() == 0);
  CHECK(gcd_poly(reduce_mod_p(p1, 11), reduce_mod_p(p2, 11)).degree() == 0);

  ZPoly p3 = p2 - (ZPoly::monomial(50, 2) * p1) + (ZPoly::monomial(50, 1) * p1);
  CHECK(p3 == parse_zpoly("-2662*x^2 + 2662*x + 5981"));
  CHECK(p1.scaled(2662) + p3.scaled(25) == ZPoly::constant(-7533));

  ZPoly q1 = parse_zpoly("25*x^4 - 197*x^2 + 100");
  ZPoly q2 = parse_zpoly("625*x^8 - 8518*x^6 + 31641*x^4 - 32452*x^2 + 10648");
  CHECK(primes_with_common_factor(q1, q2) == std::vector<u64>{19, 156797});
  auto e2 = exceptional_primes(q1, q2);
  CHECK(to_string(*at(e2, 19).gcd) == "x^2 + 5");
  CHECK(at(e2, 19).irreducible);
  CHECK(to_string(*at(e2, 156797).gcd) == "x^2 + 79228");
  CHECK(at(e2, 156797).irreducible);

  ZPoly s1 = parse_zpoly("25*x^4 - 2*x^2 + 49");
  ZPoly s2 = parse_zpoly("625*x^8 - 1138*x^6 + 2238*x^4 - 1834*x^2 + 2053");
  CHECK(primes_with_common_factor(s1, s2) == std::vector<u64>{12497});
  auto e3 = exceptional_primes(s1, s2);
  CHECK(to_string(*at(e3, 12497).gcd) == "x^2 + 9356");
  CHECK(at(e3, 12497).roots == std::vector<u64>{2013, 10484});
  CHECK_FALSE(at(e3, 12497).irreducible);

  CHECK_THROWS_AS(exceptional_primes(p1, p1 * p2), std::domain_error);
  auto lin = exceptional_primes(parse_zpoly("x - 1"), parse_zpoly("x + 1"));
  REQUIRE(lin.size() == 1);
  CHECK(lin[0].prime == 2);
  CHECK(to_string(*lin[0].gcd) == "x + 1");
}
