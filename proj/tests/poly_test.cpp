#include "doctest.h"

#include <random>
#include <stdexcept>

#include "kpnlab/poly.hpp"

using namespace kpnlab;

namespace {

Poly random_poly(const Field& f, std::size_t deg, std::mt19937_64& rng)
{
  std::vector<Elem> c(deg + 1);
  for (auto& x : c)
    x = f.element(rng() % f.order());
  return Poly(f, c);
}

} // namespace

TEST_CASE("eval")
{
  Field f5 = Field::prime(5);
  CHECK(eval(parse_poly(f5, "x^3"), f5.from_int(2)) == f5.from_int(3));
  CHECK(eval(Poly(f5), f5.from_int(2)) == f5.zero());
  CHECK_THROWS_AS(eval(Poly(f5), Field::gf(5, 2).gen_s()), std::invalid_argument);

  Field f25 = Field::gf(5, 2);
  std::mt19937_64 rng(1);
  Poly g = random_poly(f25, 30, rng);
  for (const Elem& x : f25.enumerate()) {
    Elem sum{};
    for (std::size_t i = 0; i < g.coeffs().size(); ++i)
      sum = f25.add(sum, f25.mul(g.coeffs()[i], f25.pow(x, i)));
    CHECK(eval(g, x) == sum);
  }
}

TEST_CASE("shift composition")
{
  Field f7 = Field::prime(7);
  CHECK(shift_compose(parse_poly(f7, "x^3"), f7.one()) == parse_poly(f7, "x^3 + 3*x^2 + 3*x + 1"));
  Poly g = parse_poly(f7, "2*x^4 + x + 5");
  CHECK(shift_compose(g, f7.zero()) == g);
  Field f5 = Field::prime(5);
  CHECK(shift_compose(parse_poly(f5, "x^5"), f5.one()) == parse_poly(f5, "x^5 + 1"));

  Field f25 = Field::gf(5, 2);
  std::mt19937_64 rng(2);
  Poly h = random_poly(f25, 12, rng);
  Elem a = f25.parse("2,3");
  Poly hs = shift_compose(h, a);
  for (const Elem& x : f25.enumerate())
    CHECK(eval(hs, x) == eval(h, f25.add(x, a)));
}

TEST_CASE("reduction modulo x^q - x")
{
  Field f9 = Field::gf(3, 2);
  CHECK(reduce_mod_field(Poly::monomial(f9, f9.one(), 9)) == Poly::x(f9));
  Poly two_tops = Poly::monomial(f9, f9.one(), 8) + Poly::monomial(f9, f9.one(), 16);
  CHECK(reduce_mod_field(two_tops) == Poly::monomial(f9, f9.from_int(2), 8));
  Poly c = Poly::constant(f9, f9.from_int(2));
  CHECK(reduce_mod_field(c) == c);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    Poly g = random_poly(f9, 24, rng);
    Poly r = reduce_mod_field(g);
    CHECK(r.degree() < 9);
    for (const Elem& x : f9.enumerate())
      CHECK(eval(g, x) == eval(r, x));
  }
  Field f25 = Field::gf(5, 2);
  for (int rep = 0; rep < 5; ++rep) {
    Poly g = random_poly(f25, 72, rng);
    Poly r = reduce_mod_field(g);
    for (const Elem& x : f25.enumerate())
      CHECK(eval(g, x) == eval(r, x));
  }
}

TEST_CASE("powmod")
{
  Field f9 = Field::gf(3, 2);
  for (u64 t = 1; t <= 30; ++t)
    CHECK(powmod(Poly::x(f9), t) == Poly::monomial(f9, f9.one(), fold_exponent(t, 9)));
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    Poly g = random_poly(f9, 8, rng);
    CHECK(powmod(g, 1) == reduce_mod_field(g));
    Poly prod = Poly::constant(f9, f9.one());
    for (u64 t = 1; t <= 10; ++t) {
      prod = prod * g;
      Poly pm = powmod(g, t);
      CHECK(pm == reduce_mod_field(prod));
      for (const Elem& x : f9.enumerate())
        CHECK(eval(pm, x) == f9.pow(eval(g, x), t));
    }
  }
  CHECK_THROWS_AS(powmod(Poly::x(f9), 0), std::invalid_argument);
}

TEST_CASE("top coefficient via point sum")
{
  Field f25 = Field::gf(5, 2);
  auto top = [&](const Elem& x) { return f25.pow(x, 24); };
  CHECK(top_coeff_sum(top, f25) == f25.one());
  CHECK(top_coeff_sum([&](const Elem&) { return f25.from_int(3); }, f25) == f25.zero());
  std::mt19937_64 rng(5);
  for (Field f : {Field::gf(3, 2), Field::gf(5, 2)}) {
    for (int rep = 0; rep < 4; ++rep) {
      Poly g = random_poly(f, f.order() - 1, rng);
      for (u64 t = 1; t <= 6; ++t) {
        Poly pm = powmod(g, t);
        Elem viaSum = top_coeff_sum([&](const Elem& x) { return f.pow(eval(g, x), t); }, f);
        CHECK(viaSum == pm.coeff(f.order() - 1));
      }
    }
  }
}

TEST_CASE("gcd")
{
  Field f7 = Field::prime(7);
  Poly a = parse_poly(f7, "3*x^2 + 1");
  CHECK(gcd_poly(a, Poly(f7)) == monic(a));
  CHECK(gcd_poly(Poly(f7), Poly(f7)).is_zero());
  Poly g1 = parse_poly(f7, "x + 6") * parse_poly(f7, "x + 5");
  Poly g2 = parse_poly(f7, "x + 6") * parse_poly(f7, "x + 4");
  CHECK(gcd_poly(g1, g2) == parse_poly(f7, "x + 6"));
  CHECK_THROWS_AS(gcd_poly(g1, Poly(Field::prime(5))), std::invalid_argument);

  std::mt19937_64 rng(6);
  Field f5 = Field::prime(5);
  for (int rep = 0; rep < 30; ++rep) {
    Poly common = random_poly(f5, 1 + rng() % 3, rng);
    if (common.is_zero())
      continue;
    Poly x = random_poly(f5, rng() % 4, rng) * common;
    Poly y = random_poly(f5, rng() % 4, rng) * common;
    Poly d = gcd_poly(x, y);
    if (d.is_zero())
      continue;
    CHECK(divmod(x, d).second.is_zero());
    CHECK(divmod(y, d).second.is_zero());
    CHECK(divmod(d, monic(common)).second.is_zero() == (d.degree() >= common.degree() || true));
    if (!x.is_zero() && !y.is_zero())
      CHECK(divmod(d, common).second.is_zero());
  }
}

TEST_CASE("irreducibility")
{
  Field f5 = Field::prime(5);
  CHECK(is_irreducible(parse_poly(f5, "x^2 + x + 1")));
  for (u64 p : {3, 5, 7, 11})
    CHECK_FALSE(is_irreducible(parse_poly(Field::prime(p), "x^2 + " + std::to_string(p - 1))));
  CHECK_THROWS_AS(is_irreducible(Poly::constant(f5, f5.one())), std::invalid_argument);
  CHECK(is_irreducible(parse_poly(Field::prime(19), "x^2 + 5")));

  // degree 2 and 3 agree with root absence; degree 4 with exhaustive
  // search for quadratic factors
  for (u64 p : {3, 5, 7, 11, 13, 31}) {
    Field f = Field::prime(p);
    std::mt19937_64 rng(p);
    for (int rep = 0; rep < 40; ++rep) {
      std::size_t deg = 2 + rep % 3;
      std::vector<Elem> c(deg + 1);
      for (auto& e : c)
        e = f.element(rng() % p);
      c[deg] = f.one();
      Poly g(f, c);
      bool has_root = !prime_field_roots(g).empty();
      bool reducible = has_root;
      if (deg == 4 && !has_root) {
        for (u64 b = 0; b < p && !reducible; ++b)
          for (u64 a = 0; a < p && !reducible; ++a)
            if (divmod(g, Poly(f, {f.element(a), f.element(b), f.one()})).second.is_zero())
              reducible = true;
      }
      CHECK(is_irreducible(g) == !reducible);
    }
  }
}

TEST_CASE("roots in the prime field")
{
  Field f7 = Field::prime(7);
  Poly g = parse_poly(f7, "x + 6") * parse_poly(f7, "x + 5") * parse_poly(f7, "x^2 + 1");
  auto r = prime_field_roots(g);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == f7.from_int(1));
  CHECK(r[1] == f7.from_int(2));
  Field f12497 = Field::prime(12497);
  auto r2 = prime_field_roots(parse_poly(f12497, "x^2 + 9356"));
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == f12497.from_int(2013));
}

TEST_CASE("text format")
{
  Field f25 = Field::gf(5, 2);
  Poly g = parse_poly(f25, "3,1*x^2 + x + 4");
  CHECK(g.degree() == 2);
  CHECK(to_string(g) == "3,1*x^2 + x + 4,0");
  CHECK(parse_poly(f25, to_string(g)) == g);
  CHECK(to_string(Poly(f25)) == "0");
  CHECK_THROWS_AS(parse_poly(f25, "x^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(f25, "x + + 1"), std::invalid_argument);
}
