#include "kpnlab/poly.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "kpnlab/combinatorics.hpp"

namespace kpnlab {

Poly::Poly(Field f, std::vector<Elem> coeffs) : field_(std::move(f)), coeffs_(std::move(coeffs))
{
  for (const Elem& c : coeffs_) {
    if (!field_.contains(c))
      throw std::invalid_argument("coefficient is not an element of " + field_.name());
  }
  normalize();
}

Poly Poly::monomial(const Field& f, const Elem& c, std::size_t exponent)
{
  std::vector<Elem> v(exponent + 1);
  v[exponent] = c;
  return Poly(f, std::move(v));
}

void Poly::normalize()
{
  while (!coeffs_.empty() && coeffs_.back() == Elem{})
    coeffs_.pop_back();
}

void Poly::require_same_field(const Poly& o) const
{
  if (!(field_ == o.field_))
    throw std::invalid_argument("polynomials over different fields: " + field_.name() + " vs " + o.field_.name());
}

Poly Poly::operator+(const Poly& o) const
{
  require_same_field(o);
  Poly r(field_);
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
    r.coeffs_[i] = field_.add(coeff(i), o.coeff(i));
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const
{
  require_same_field(o);
  Poly r(field_);
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
    r.coeffs_[i] = field_.sub(coeff(i), o.coeff(i));
  r.normalize();
  return r;
}

Poly Poly::operator*(const Poly& o) const
{
  require_same_field(o);
  Poly r(field_);
  if (is_zero() || o.is_zero())
    return r;
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Elem{});
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == Elem{})
      continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      r.coeffs_[i + j] = field_.add(r.coeffs_[i + j], field_.mul(coeffs_[i], o.coeffs_[j]));
  }
  r.normalize();
  return r;
}

Poly Poly::scaled(const Elem& c) const
{
  Poly r(field_);
  r.coeffs_.reserve(coeffs_.size());
  for (const Elem& a : coeffs_)
    r.coeffs_.push_back(field_.mul(a, c));
  r.normalize();
  return r;
}

Elem eval(const Poly& f, const Elem& x)
{
  const Field& F = f.field();
  if (!F.contains(x))
    throw std::invalid_argument("evaluation point is not an element of " + F.name());
  Elem acc{};
  for (std::size_t i = f.coeffs().size(); i-- > 0;)
    acc = F.add(F.mul(acc, x), f.coeffs()[i]);
  return acc;
}

Poly shift_compose(const Poly& f, const Elem& a)
{
  const Field& F = f.field();
  if (!F.contains(a))
    throw std::invalid_argument("shift is not an element of " + F.name());
  const u64 p = F.characteristic();
  const std::size_t n = f.coeffs().size();
  std::vector<Elem> apow(n, F.one());
  for (std::size_t i = 1; i < n; ++i)
    apow[i] = F.mul(apow[i - 1], a);
  std::vector<Elem> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Elem& ci = f.coeffs()[i];
    if (ci == Elem{})
      continue;
    // c_i (x+a)^i contributes c_i binom(i,j) a^(i-j) to x^j
    for (std::size_t j = 0; j <= i; ++j) {
      u64 b = lucas_binomial(i, j, p);
      if (b == 0)
        continue;
      out[j] = F.add(out[j], F.scale(F.mul(ci, apow[i - j]), b));
    }
  }
  return Poly(F, std::move(out));
}

Poly reduce_mod_field(const Poly& f)
{
  const Field& F = f.field();
  const u64 q = F.order();
  if (static_cast<u64>(f.coeffs().size()) <= q)
    return f;
  std::vector<Elem> out(q);
  for (std::size_t e = 0; e < f.coeffs().size(); ++e) {
    const u64 target = fold_exponent(e, q);
    out[target] = F.add(out[target], f.coeffs()[e]);
  }
  return Poly(F, std::move(out));
}

Poly powmod(const Poly& f, u64 t)
{
  if (t == 0)
    throw std::invalid_argument("powmod: exponent must be positive");
  Poly base = reduce_mod_field(f);
  Poly result = base;
  int top = 63;
  while (!((t >> top) & 1))
    --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    result = reduce_mod_field(result * result);
    if ((t >> bit) & 1)
      result = reduce_mod_field(result * base);
  }
  return result;
}

Elem top_coeff_sum(const std::function<Elem(const Elem&)>& h, const Field& f)
{
  Elem sum{};
  for (u64 i = 0; i < f.order(); ++i)
    sum = f.add(sum, h(f.element(i)));
  return f.neg(sum);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
  const Field& F = a.field();
  if (!(F == b.field()))
    throw std::invalid_argument("divmod: polynomials over different fields");
  if (b.is_zero())
    throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree())
    return {Poly(F), a};
  std::vector<Elem> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Elem> quot(rem.size() - db);
  const Elem lead_inv = F.inv(b.lead());
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == Elem{})
      continue;
    Elem c = F.mul(rem[i], lead_inv);
    quot[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j)
      rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b.coeffs()[j]));
  }
  rem.resize(db);
  return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
}

Poly monic(const Poly& f)
{
  if (f.is_zero())
    return f;
  return f.scaled(f.field().inv(f.lead()));
}

Poly gcd_poly(const Poly& f, const Poly& g)
{
  if (!(f.field() == g.field()))
    throw std::invalid_argument("gcd_poly: polynomials over different fields");
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly powmod_poly(const Poly& base, u64 e, const Poly& modulus)
{
  Poly result = divmod(Poly::constant(base.field(), base.field().one()), modulus).second;
  Poly b = divmod(base, modulus).second;
  while (e) {
    if (e & 1)
      result = divmod(result * b, modulus).second;
    e >>= 1;
    if (e)
      b = divmod(b * b, modulus).second;
  }
  return result;
}

bool is_irreducible(const Poly& f)
{
  if (f.degree() < 1)
    throw std::invalid_argument("is_irreducible: constant polynomial");
  const Field& F = f.field();
  const Poly x = Poly::x(F);
  Poly h = divmod(x, f).second;
  for (std::ptrdiff_t i = 1; 2 * i <= f.degree(); ++i) {
    h = powmod_poly(h, F.order(), f);
    if (gcd_poly(h - x, f).degree() > 0)
      return false;
  }
  return true;
}

namespace {

void split_roots(const Poly& g, u64 seed, std::vector<Elem>& out)
{
  const Field& F = g.field();
  if (g.degree() <= 0)
    return;
  if (g.degree() == 1) {
    Poly m = monic(g);
    out.push_back(F.neg(m.coeff(0)));
    return;
  }
  // g is a product of distinct linear factors; (x+delta)^((p-1)/2) - 1
  // separates the roots r with r+delta a square from the rest.
  const u64 p = F.characteristic();
  for (u64 delta = seed;; ++delta) {
    Poly shifted = Poly(F, {F.from_int(static_cast<i64>(delta % p)), F.one()});
    Poly w = powmod_poly(shifted, (p - 1) / 2, g) - Poly::constant(F, F.one());
    Poly d = gcd_poly(w, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_roots(d, delta + 1, out);
      split_roots(divmod(g, d).first, delta + 1, out);
      return;
    }
  }
}

} // namespace

std::vector<Elem> prime_field_roots(const Poly& f)
{
  const Field& F = f.field();
  if (F.degree() != 1)
    throw std::invalid_argument("prime_field_roots: prime fields only");
  if (f.is_zero())
    throw std::invalid_argument("prime_field_roots: zero polynomial");
  std::vector<Elem> roots;
  if (f.degree() == 0)
    return roots;
  if (F.characteristic() < 64) {
    for (u64 i = 0; i < F.order(); ++i)
      if (F.is_zero(eval(f, F.element(i))))
        roots.push_back(F.element(i));
    return roots;
  }
  const Poly x = Poly::x(F);
  Poly xp = powmod_poly(x, F.characteristic(), f);
  Poly g = gcd_poly(xp - x, f);
  split_roots(g, 0, roots);
  std::sort(roots.begin(), roots.end(), [&](const Elem& a, const Elem& b) { return F.index(a) < F.index(b); });
  return roots;
}

std::string to_string(const Poly& f, std::string_view var)
{
  if (f.is_zero())
    return "0";
  const Field& F = f.field();
  std::string s;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const Elem& c = f.coeffs()[i];
    if (c == Elem{})
      continue;
    if (!s.empty())
      s += " + ";
    const bool unit = c == F.one();
    if (i == 0 || !unit)
      s += F.format(c);
    if (i > 0) {
      if (!unit)
        s += '*';
      s += var;
      if (i > 1)
        s += "^" + std::to_string(i);
    }
  }
  return s;
}

Poly parse_poly(const Field& f, std::string_view text)
{
  std::vector<Elem> coeffs;
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
      v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
      v.remove_suffix(1);
    return v;
  };
  auto fail = [&]() { return std::invalid_argument("malformed polynomial: '" + std::string(text) + "'"); };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    std::string_view term = trim(text.substr(pos, plus == std::string_view::npos ? text.npos : plus - pos));
    if (term.empty())
      throw fail();
    Elem c = f.one();
    std::size_t exponent = 0;
    std::size_t star = term.find('*');
    std::size_t var_pos = term.find_first_of("abcdefghijklmnopqrstuvwxyz");
    if (var_pos == std::string_view::npos) {
      c = f.parse(term);
    } else {
      if (star != std::string_view::npos) {
        if (star > var_pos)
          throw fail();
        c = f.parse(trim(term.substr(0, star)));
      } else if (var_pos != 0) {
        throw fail();
      }
      std::string_view rest = trim(term.substr(var_pos + 1));
      exponent = 1;
      if (!rest.empty()) {
        if (rest.front() != '^')
          throw fail();
        rest = trim(rest.substr(1));
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
        if (ec != std::errc() || ptr != rest.data() + rest.size())
          throw fail();
      }
    }
    if (coeffs.size() <= exponent)
      coeffs.resize(exponent + 1);
    coeffs[exponent] = f.add(coeffs[exponent], c);
    if (plus == std::string_view::npos)
      break;
    pos = plus + 1;
  }
  return Poly(f, std::move(coeffs));
}

} // namespace kpnlab
