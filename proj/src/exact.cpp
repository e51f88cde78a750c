#include "kpnlab/exact.hpp"

#include <cctype>
#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace kpnlab {

namespace mp = boost::multiprecision;

ZPoly::ZPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

ZPoly ZPoly::monomial(const Rational& c, std::size_t e)
{
  std::vector<Rational> v(e + 1);
  v[e] = c;
  return ZPoly(std::move(v));
}

void ZPoly::normalize()
{
  while (!c_.empty() && c_.back() == 0)
    c_.pop_back();
}

Rational ZPoly::eval(const Rational& x) const
{
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;)
    acc = acc * x + c_[i];
  return acc;
}

ZPoly ZPoly::operator+(const ZPoly& o) const
{
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = coeff(i) + o.coeff(i);
  return ZPoly(std::move(v));
}

ZPoly ZPoly::operator-(const ZPoly& o) const
{
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = coeff(i) - o.coeff(i);
  return ZPoly(std::move(v));
}

ZPoly ZPoly::operator*(const ZPoly& o) const
{
  if (is_zero() || o.is_zero())
    return {};
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      v[i + j] += c_[i] * o.c_[j];
  return ZPoly(std::move(v));
}

ZPoly ZPoly::scaled(const Rational& c) const
{
  std::vector<Rational> v = c_;
  for (auto& x : v)
    x *= c;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::pow(unsigned e) const
{
  ZPoly r = constant(1);
  for (unsigned i = 0; i < e; ++i)
    r = r * *this;
  return r;
}

namespace {

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := ('-'|'+') unary | power
// power  := atom ('^' integer)?
// atom   := integer | var | '(' expr ')' | 'binom(' expr ',' integer ')'
class ZParser {
 public:
  explicit ZParser(std::string_view s) : s_(s) {}

  ZPoly parse()
  {
    ZPoly r = expr();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const
  {
    throw std::invalid_argument("malformed polynomial '" + std::string(s_) + "': " + why);
  }
  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  BigInt integer()
  {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected integer");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  ZPoly expr()
  {
    ZPoly r = term();
    while (true) {
      if (accept('+'))
        r = r + term();
      else if (accept('-'))
        r = r - term();
      else
        return r;
    }
  }
  ZPoly term()
  {
    ZPoly r = unary();
    while (true) {
      if (accept('*')) {
        r = r * unary();
      } else if (accept('/')) {
        ZPoly d = unary();
        if (d.degree() != 0)
          fail("division by a non-constant");
        r = r.scaled(1 / d.lead());
      } else {
        return r;
      }
    }
  }
  ZPoly unary()
  {
    if (accept('-'))
      return unary().scaled(-1);
    if (accept('+'))
      return unary();
    return power();
  }
  ZPoly power()
  {
    ZPoly base = atom();
    if (accept('^')) {
      BigInt e = integer();
      if (e > 4096)
        fail("exponent too large");
      return base.pow(e.convert_to<unsigned>());
    }
    return base;
  }
  ZPoly atom()
  {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)))
      return ZPoly::constant(Rational(integer()));
    if (accept('(')) {
      ZPoly r = expr();
      if (!accept(')'))
        fail("expected ')'");
      return r;
    }
    if (s_.substr(pos_, 6) == "binom(") {
      pos_ += 6;
      ZPoly arg = expr();
      if (!accept(','))
        fail("expected ',' in binom");
      BigInt k = integer();
      if (!accept(')'))
        fail("expected ')' after binom");
      if (k > 64)
        fail("binom order too large");
      unsigned kk = k.convert_to<unsigned>();
      ZPoly r = ZPoly::constant(1);
      for (unsigned i = 0; i < kk; ++i)
        r = (r * (arg - ZPoly::constant(i))).scaled(Rational(1, i + 1));
      return r;
    }
    if (c >= 'a' && c <= 'z') {
      if (var_ && *var_ != c)
        fail("more than one variable");
      var_ = c;
      ++pos_;
      return ZPoly::monomial(1, 1);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::optional<char> var_;
};

} // namespace

ZPoly parse_zpoly(std::string_view text) { return ZParser(text).parse(); }

std::string to_string(const ZPoly& f, std::string_view var)
{
  if (f.is_zero())
    return "0";
  std::string s;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    Rational c = f.coeffs()[i];
    if (c == 0)
      continue;
    if (s.empty()) {
      if (c < 0) {
        s += "-";
        c = -c;
      }
    } else {
      s += c < 0 ? " - " : " + ";
      if (c < 0)
        c = -c;
    }
    if (i == 0 || c != 1) {
      s += c.str();
      if (i > 0)
        s += "*";
    }
    if (i > 0) {
      s += var;
      if (i > 1)
        s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::pair<Rational, std::vector<BigInt>> primitive_part(const ZPoly& f)
{
  if (f.is_zero())
    return {Rational(0), {}};
  BigInt den = 1;
  for (const auto& c : f.coeffs())
    den = mp::lcm(den, mp::denominator(c));
  std::vector<BigInt> v;
  BigInt g = 0;
  for (const auto& c : f.coeffs()) {
    BigInt x = mp::numerator(c) * (den / mp::denominator(c));
    g = mp::gcd(g, x);
    v.push_back(x);
  }
  if (v.back() < 0)
    g = -g;
  for (auto& x : v)
    x /= g;
  return {Rational(g, den), v};
}

namespace {

using IPoly = std::vector<BigInt>;

std::ptrdiff_t ideg(const IPoly& a) { return static_cast<std::ptrdiff_t>(a.size()) - 1; }

void itrim(IPoly& a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

// lc(b)^(deg a - deg b + 1) a mod b
IPoly prem(IPoly a, const IPoly& b)
{
  const std::ptrdiff_t db = ideg(b);
  const BigInt& lb = b.back();
  std::ptrdiff_t steps = ideg(a) - db + 1;
  while (ideg(a) >= db) {
    BigInt la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& x : a)
      x *= lb;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] -= la * b[j];
    itrim(a);
    --steps;
  }
  if (steps > 0) {
    BigInt m = mp::pow(lb, static_cast<unsigned>(steps));
    for (auto& x : a)
      x *= m;
  }
  return a;
}

BigInt ipow(const BigInt& b, std::ptrdiff_t e) { return mp::pow(b, static_cast<unsigned>(e)); }

BigInt subresultant(IPoly a, IPoly b)
{
  int s = 1;
  if (ideg(a) < ideg(b)) {
    std::swap(a, b);
    if (ideg(a) % 2 == 1 && ideg(b) % 2 == 1)
      s = -s;
  }
  if (ideg(b) == 0)
    return s * ipow(b.back(), ideg(a));
  BigInt g = 1, h = 1;
  while (true) {
    std::ptrdiff_t delta = ideg(a) - ideg(b);
    if (ideg(a) % 2 == 1 && ideg(b) % 2 == 1)
      s = -s;
    IPoly r = prem(a, b);
    if (r.empty())
      return 0;
    a = std::move(b);
    BigInt div = g * ipow(h, delta);
    for (auto& x : r)
      x /= div;
    b = std::move(r);
    g = a.back();
    if (delta > 0)
      h = ipow(g, delta) / ipow(h, delta - 1);
    if (ideg(b) <= 0)
      break;
  }
  BigInt res = ipow(b.back(), ideg(a)) / ipow(h, ideg(a) - 1);
  return s * res;
}

} // namespace

namespace {

Rational rpow(const Rational& b, std::ptrdiff_t e)
{
  return Rational(mp::pow(mp::numerator(b), static_cast<unsigned>(e)), mp::pow(mp::denominator(b), static_cast<unsigned>(e)));
}

} // namespace

Rational resultant(const ZPoly& f, const ZPoly& g)
{
  if (f.degree() < 1 && g.degree() < 1)
    throw std::invalid_argument("resultant of two constants is undefined here");
  if (f.is_zero() || g.is_zero())
    return 0;
  auto [cf, pf] = primitive_part(f);
  auto [cg, pg] = primitive_part(g);
  Rational scale = rpow(cf, g.degree()) * rpow(cg, f.degree());
  if (f.degree() == 0)
    return scale;
  if (g.degree() == 0)
    return scale;
  return scale * Rational(subresultant(pf, pg));
}

BigInt Factorization::value() const
{
  BigInt v = sign;
  for (const auto& [pr, e] : factors)
    v *= mp::pow(pr, e);
  return v;
}

std::string Factorization::to_string() const
{
  std::string s = sign < 0 ? "-1" : "1";
  for (const auto& [pr, e] : factors) {
    s += " * " + pr.str();
    if (e > 1)
      s += "^" + std::to_string(e);
  }
  return s;
}

bool is_probable_prime(const BigInt& n)
{
  if (n < 2)
    return false;
  static const unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned b : bases) {
    if (n == b)
      return true;
    if (n % b == 0)
      return false;
  }
  if (n < (BigInt(1) << 64))
    return is_prime_u64(n.convert_to<u64>());
  BigInt d = n - 1;
  unsigned r = 0;
  while (!mp::bit_test(d, 0)) {
    d >>= 1;
    ++r;
  }
  for (unsigned b : bases) {
    BigInt x = mp::powm(BigInt(b), d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

namespace {

BigInt brent_rho(const BigInt& n)
{
  if (!mp::bit_test(n, 0))
    return 2;
  for (unsigned c = 1;; ++c) {
    BigInt y = 2, x, ys, q = 1, g = 1;
    std::size_t r = 1;
    auto f = [&](const BigInt& v) { return (v * v + c) % n; };
    do {
      x = y;
      for (std::size_t i = 0; i < r; ++i)
        y = f(y);
      std::size_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::size_t i = 0; i < std::min<std::size_t>(128, r - k); ++i) {
          y = f(y);
          q = q * (x > y ? x - y : y - x) % n;
        }
        g = mp::gcd(q, n);
        k += 128;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = mp::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n)
      return g;
  }
}

void split(const BigInt& n, std::vector<BigInt>& primes)
{
  if (n == 1)
    return;
  if (is_probable_prime(n)) {
    primes.push_back(n);
    return;
  }
  BigInt d = brent_rho(n);
  split(d, primes);
  split(n / d, primes);
}

} // namespace

Factorization factor_integer(const BigInt& n)
{
  if (n == 0)
    throw std::invalid_argument("factor_integer: zero has no factorization");
  Factorization out;
  out.sign = n < 0 ? -1 : 1;
  BigInt m = mp::abs(n);
  std::vector<BigInt> primes;
  for (u64 d = 2; d <= 1000000; d += (d == 2 ? 1 : 2)) {
    if (BigInt(d) * d > m)
      break;
    while (m % d == 0) {
      primes.emplace_back(d);
      m /= d;
    }
  }
  split(m, primes);
  std::sort(primes.begin(), primes.end());
  for (const auto& pr : primes) {
    if (!out.factors.empty() && out.factors.back().first == pr)
      ++out.factors.back().second;
    else
      out.factors.emplace_back(pr, 1u);
  }
  return out;
}

Poly reduce_mod_p(const ZPoly& f, u64 p)
{
  Field F = Field::residue_field(p);
  std::vector<Elem> v;
  for (const auto& c : f.coeffs()) {
    u64 den = mod_p(mp::denominator(c), p);
    if (den == 0)
      throw std::domain_error("reduce_mod_p: " + std::to_string(p) + " divides the denominator of " + c.str());
    v.push_back(F.from_int(static_cast<i64>(mulmod(mod_p(mp::numerator(c), p), invmod(den, p), p))));
  }
  return Poly(F, std::move(v));
}

std::vector<ExceptionalPrime> exceptional_primes(const ZPoly& f, const ZPoly& g)
{
  if (f.degree() < 1 || g.degree() < 1)
    throw std::invalid_argument("exceptional_primes: inputs must be nonconstant");
  auto [cf, pf] = primitive_part(f);
  auto [cg, pg] = primitive_part(g);
  BigInt res = subresultant(pf, pg);
  if (res == 0)
    throw std::domain_error("exceptional_primes: inputs share a factor over the rationals");
  std::vector<BigInt> candidates;
  for (const BigInt& v : {res, pf.back(), pg.back()})
    for (const auto& [pr, e] : factor_integer(v).factors)
      candidates.push_back(pr);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  ZPoly F(std::vector<Rational>(pf.begin(), pf.end()));
  ZPoly G(std::vector<Rational>(pg.begin(), pg.end()));
  std::vector<ExceptionalPrime> out;
  for (const BigInt& pr : candidates) {
    ExceptionalPrime e;
    e.prime = pr;
    if (pr < (BigInt(1) << 32)) {
      const u64 p = pr.convert_to<u64>();
      Poly gcd = gcd_poly(reduce_mod_p(F, p), reduce_mod_p(G, p));
      if (gcd.degree() >= 1) {
        e.irreducible = is_irreducible(gcd);
        for (const Elem& r : prime_field_roots(gcd))
          e.roots.push_back(r.c[0]);
      }
      e.gcd = std::move(gcd);
    }
    out.push_back(std::move(e));
  }
  return out;
}

} // namespace kpnlab
