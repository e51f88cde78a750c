#include "doctest.h"

#include <random>
#include <stdexcept>

#include "kpnlab/difference.hpp"

using namespace kpnlab;

namespace {

Poly random_poly(const Field& f, std::size_t deg, std::mt19937_64& rng)
{
  std::vector<Elem> c(deg + 1);
  for (auto& x : c)
    x = f.element(rng() % f.order());
  return Poly(f, c);
}

Elem random_nonzero(const Field& f, std::mt19937_64& rng) { return f.element(1 + rng() % (f.order() - 1)); }

} // namespace

TEST_CASE("direction tuples")
{
  Field f = Field::gf(5, 2);
  CHECK_THROWS_AS(DirectionTuple(f, {f.one(), f.zero()}), std::invalid_argument);
  CHECK_THROWS_AS(DirectionTuple(f, {Field::gf(5, 4).gen_u()}), std::invalid_argument);
  DirectionTuple d(f, {f.one(), f.gen_s()});
  CHECK(DirectionTuple::parse(f, d.to_string()) == d);
}

TEST_CASE("second difference of a cube over GF(7)")
{
  Field f = Field::prime(7);
  DirectionTuple d(f, {f.one(), f.one()});
  CHECK(nabla_poly(parse_poly(f, "x^3"), d) == parse_poly(f, "6*x + 6"));
}

TEST_CASE("difference laws")
{
  std::mt19937_64 rng(7);
  for (const Field& f : {Field::prime(11), Field::gf(5, 2), Field::gf(3, 4)}) {
    for (int rep = 0; rep < 10; ++rep) {
      const Poly g = random_poly(f, 6, rng);
      const Poly h = random_poly(f, 6, rng);
      const Elem a = random_nonzero(f, rng), b = random_nonzero(f, rng), c = random_nonzero(f, rng);
      // order of directions does not matter
      CHECK(nabla_poly(g, DirectionTuple(f, {a, b, c})) == nabla_poly(g, DirectionTuple(f, {c, a, b})));
      // linear in f
      const DirectionTuple ab(f, {a, b});
      CHECK(nabla_poly(g + h, ab) == nabla_poly(g, ab) + nabla_poly(h, ab));
      // each direction lowers the degree of a nonconstant polynomial by at least one
      const Poly d1 = nabla_poly(g, DirectionTuple(f, {a}));
      CHECK(d1.degree() < std::max<std::ptrdiff_t>(g.degree(), 0));
      // scaling: nabla_{ca} g(x) = (nabla_a g(c x)) at x/c
      const Poly gc = shift_compose(g, f.zero()); // copy
      Poly g_scaled(f);
      {
        std::vector<Elem> co(g.degree() + 1);
        for (std::ptrdiff_t i = 0; i <= g.degree(); ++i)
          co[i] = f.mul(g.coeffs()[i], f.pow(c, static_cast<u64>(i)));
        g_scaled = Poly(f, co);
      }
      const Elem x = f.element(rng() % f.order());
      const Elem lhs = eval(nabla_poly(gc, DirectionTuple(f, {f.mul(c, a)})), f.mul(c, x));
      const Elem rhs = eval(nabla_poly(g_scaled, DirectionTuple(f, {a})), x);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("pointwise difference agrees with the polynomial")
{
  std::mt19937_64 rng(11);
  for (const Field& f : {Field::prime(13), Field::gf(7, 2), Field::gf(5, 4)}) {
    const Poly g = random_poly(f, 9, rng);
    auto fn = [&](const Elem& x) { return eval(g, x); };
    for (std::size_t k = 0; k <= 4; ++k) {
      std::vector<Elem> dirs;
      for (std::size_t i = 0; i < k; ++i)
        dirs.push_back(random_nonzero(f, rng));
      const Stencil st = make_stencil(f, dirs);
      const Poly reference = k ? nabla_poly(g, DirectionTuple(f, dirs)) : g;
      for (int rep = 0; rep < 20; ++rep) {
        const Elem x = f.element(rng() % f.order());
        CHECK(nabla_eval(fn, f, st, x) == eval(reference, x));
        if (k)
          CHECK(nabla_eval(fn, DirectionTuple(f, dirs), x) == eval(reference, x));
      }
    }
  }
}

TEST_CASE("stencil merges repeated shifts")
{
  Field f = Field::prime(7);
  // (1,1): f(x+2) - 2f(x+1) + f(x)
  Stencil st = make_stencil(f, {f.one(), f.one()});
  CHECK(st.shifts.size() == 3);
  // (1,-1): f(x) - f(x+1) - f(x-1) + f(x), zero-sum shift merged
  st = make_stencil(f, {f.one(), f.from_int(-1)});
  CHECK(st.shifts.size() == 3);
}
