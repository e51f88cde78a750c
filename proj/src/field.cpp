#include "kpnlab/field.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace kpnlab {

Field::Field(u64 p, unsigned degree, u64 t, Elem m) : p_(p), degree_(degree), t_(t), m_(m)
{
  q_ = 1;
  for (unsigned i = 0; i < degree_; ++i)
    q_ *= p_;
  if (degree_ == 4) {
    // m^((p-1)/2) by square-and-multiply in GF(p^2).
    Pair base{m_.c[0], m_.c[1]};
    Pair acc{1, 0};
    for (u64 e = (p_ - 1) / 2; e; e >>= 1) {
      if (e & 1)
        acc = mul2(acc, base);
      base = mul2(base, base);
    }
    frob_u_ = acc;
  }
}

Field Field::prime(u64 p)
{
  if (p == 2)
    throw std::invalid_argument("even characteristic is not supported");
  if (p > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("characteristic must be below 2^32");
  if (!is_prime_u64(p))
    throw std::invalid_argument("not prime: " + std::to_string(p));
  return Field(p, 1, 0, Elem{});
}

Field Field::residue_field(u64 p)
{
  if (p == 2)
    return Field(2, 1, 0, Elem{});
  return prime(p);
}

Field Field::gf(u64 p, unsigned degree, unsigned nonresidue_rank)
{
  if (degree != 1 && degree != 2 && degree != 4)
    throw std::invalid_argument("extension degree must be 1, 2 or 4");
  Field f = prime(p);
  while (f.degree() < degree)
    f = f.extend(nth_nonresidue(f, nonresidue_rank));
  return f;
}

Field Field::extend(const Elem& d) const
{
  if (p_ == 2)
    throw std::invalid_argument("even characteristic is not supported");
  if (degree_ == 4)
    throw std::invalid_argument("extension degree would exceed 4");
  if (!contains(d))
    throw std::invalid_argument("extension parameter is not an element of the base field");
  if (is_zero(d) || is_square(d))
    throw std::invalid_argument("extension parameter " + format(d) + " is a square in " + name());
  if (degree_ == 1)
    return Field(p_, 2, d.c[0], Elem{});
  return Field(p_, 4, t_, d);
}

Field Field::subfield(unsigned degree) const
{
  if (degree == 0 || degree_ % degree != 0 || degree == 3)
    throw std::invalid_argument("no subfield of degree " + std::to_string(degree) + " in " + name());
  if (degree == degree_)
    return *this;
  if (degree == 1)
    return Field(p_, 1, 0, Elem{});
  return Field(p_, 2, t_, Elem{});
}

bool Field::contains(const Elem& x) const
{
  for (unsigned i = 0; i < 4; ++i) {
    if (i >= degree_ ? x.c[i] != 0 : x.c[i] >= p_)
      return false;
  }
  return true;
}

bool Field::is_subfield_of(const Field& other) const
{
  if (p_ != other.p_ || other.degree_ % degree_ != 0)
    return false;
  return degree_ < 2 || t_ == other.t_;
}

Elem Field::one() const
{
  Elem e;
  e.c[0] = 1;
  return e;
}

Elem Field::from_int(i64 v) const
{
  Elem e;
  e.c[0] = static_cast<std::uint32_t>(reduce_signed(v, p_));
  return e;
}

Elem Field::gen_s() const
{
  if (degree_ < 2)
    throw std::logic_error("GF(p) has no tower generator s");
  Elem e;
  e.c[1] = 1;
  return e;
}

Elem Field::gen_u() const
{
  if (degree_ < 4)
    throw std::logic_error("field has no tower generator u");
  Elem e;
  e.c[2] = 1;
  return e;
}

Elem Field::add(const Elem& x, const Elem& y) const
{
  Elem r;
  for (unsigned i = 0; i < degree_; ++i) {
    u64 s = u64{x.c[i]} + y.c[i];
    r.c[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Elem Field::sub(const Elem& x, const Elem& y) const
{
  Elem r;
  for (unsigned i = 0; i < degree_; ++i)
    r.c[i] = static_cast<std::uint32_t>(x.c[i] >= y.c[i] ? x.c[i] - y.c[i] : p_ - y.c[i] + x.c[i]);
  return r;
}

Elem Field::neg(const Elem& x) const
{
  Elem r;
  for (unsigned i = 0; i < degree_; ++i)
    r.c[i] = static_cast<std::uint32_t>(x.c[i] == 0 ? 0 : p_ - x.c[i]);
  return r;
}

Elem Field::scale(const Elem& x, u64 c) const
{
  c %= p_;
  Elem r;
  for (unsigned i = 0; i < degree_; ++i)
    r.c[i] = static_cast<std::uint32_t>((u64{x.c[i]} * c) % p_);
  return r;
}

Field::Pair Field::mul2(Pair a, Pair b) const
{
  u64 r0 = (a[0] * b[0] % p_ + (a[1] * b[1] % p_) * t_) % p_;
  u64 r1 = (a[0] * b[1] + a[1] * b[0] % p_) % p_;
  return {r0, r1};
}

Elem Field::mul(const Elem& x, const Elem& y) const
{
  Elem r;
  if (degree_ == 1) {
    r.c[0] = static_cast<std::uint32_t>(u64{x.c[0]} * y.c[0] % p_);
    return r;
  }
  if (degree_ == 2) {
    Pair z = mul2({x.c[0], x.c[1]}, {y.c[0], y.c[1]});
    r.c[0] = static_cast<std::uint32_t>(z[0]);
    r.c[1] = static_cast<std::uint32_t>(z[1]);
    return r;
  }
  // (A + Bu)(C + Du) = (AC + BD m) + (AD + BC) u
  Pair a{x.c[0], x.c[1]}, b{x.c[2], x.c[3]};
  Pair c{y.c[0], y.c[1]}, d{y.c[2], y.c[3]};
  Pair ac = mul2(a, c);
  Pair bdm = mul2(mul2(b, d), {m_.c[0], m_.c[1]});
  Pair ad = mul2(a, d);
  Pair bc = mul2(b, c);
  r.c[0] = static_cast<std::uint32_t>((ac[0] + bdm[0]) % p_);
  r.c[1] = static_cast<std::uint32_t>((ac[1] + bdm[1]) % p_);
  r.c[2] = static_cast<std::uint32_t>((ad[0] + bc[0]) % p_);
  r.c[3] = static_cast<std::uint32_t>((ad[1] + bc[1]) % p_);
  return r;
}

Elem Field::pow(const Elem& x, u64 n) const
{
  Elem result = one();
  Elem base = x;
  while (n) {
    if (n & 1)
      result = mul(result, base);
    n >>= 1;
    if (n)
      base = mul(base, base);
  }
  return result;
}

Elem Field::inv(const Elem& x) const
{
  if (is_zero(x))
    throw std::domain_error("inverse of zero");
  return pow(x, q_ - 2);
}

Elem Field::frobenius(const Elem& x, unsigned i) const
{
  i %= degree_;
  Elem r = x;
  for (unsigned step = 0; step < i; ++step) {
    Elem next;
    Pair a = frob2({r.c[0], r.c[1]});
    next.c[0] = static_cast<std::uint32_t>(a[0]);
    next.c[1] = static_cast<std::uint32_t>(a[1]);
    if (degree_ == 4) {
      Pair b = mul2(frob2({r.c[2], r.c[3]}), frob_u_);
      next.c[2] = static_cast<std::uint32_t>(b[0]);
      next.c[3] = static_cast<std::uint32_t>(b[1]);
    }
    r = next;
  }
  return r;
}

Elem Field::norm(const Elem& x, unsigned sub_degree) const
{
  if (sub_degree == 0 || degree_ % sub_degree != 0)
    throw std::invalid_argument("norm: subfield degree must divide the extension degree");
  Elem r = one();
  for (unsigned i = 0; i < degree_; i += sub_degree)
    r = mul(r, frobenius(x, i));
  return r;
}

Elem Field::trace(const Elem& x, unsigned sub_degree) const
{
  if (sub_degree == 0 || degree_ % sub_degree != 0)
    throw std::invalid_argument("trace: subfield degree must divide the extension degree");
  Elem r{};
  for (unsigned i = 0; i < degree_; i += sub_degree)
    r = add(r, frobenius(x, i));
  return r;
}

bool Field::is_square(const Elem& x) const
{
  if (is_zero(x))
    throw std::domain_error("is_square: zero is neither square nor non-square here");
  return pow(x, (q_ - 1) / 2) == one();
}

u64 Field::index(const Elem& x) const
{
  u64 idx = 0;
  for (unsigned i = degree_; i-- > 0;)
    idx = idx * p_ + x.c[i];
  return idx;
}

Elem Field::element(u64 index) const
{
  if (index >= q_)
    throw std::out_of_range("element index out of range");
  Elem e;
  for (unsigned i = 0; i < degree_; ++i) {
    e.c[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return e;
}

std::vector<Elem> Field::enumerate() const
{
  std::vector<Elem> out;
  out.reserve(q_);
  for (u64 i = 0; i < q_; ++i)
    out.push_back(element(i));
  return out;
}

std::string Field::format(const Elem& x) const
{
  std::string s;
  for (unsigned i = 0; i < degree_; ++i) {
    if (i)
      s += ',';
    s += std::to_string(x.c[i]);
  }
  return s;
}

Elem Field::parse(std::string_view text) const
{
  Elem e;
  unsigned slot = 0;
  std::size_t pos = 0;
  auto trim = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ')
      v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ')
      v.remove_suffix(1);
    return v;
  };
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    if (slot >= degree_)
      throw std::invalid_argument("too many coefficients for " + name() + ": '" + std::string(text) + "'");
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("malformed field element: '" + std::string(text) + "'");
    e.c[slot++] = static_cast<std::uint32_t>(reduce_signed(v, p_));
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  if (slot != 1 && slot != degree_)
    throw std::invalid_argument("expected 1 or " + std::to_string(degree_) + " coefficients: '" + std::string(text) + "'");
  return e;
}

std::string Field::name() const
{
  if (degree_ == 1)
    return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(degree_) + ")";
}

Elem nth_nonresidue(const Field& f, unsigned rank)
{
  for (u64 i = 1; i < f.order(); ++i) {
    Elem x = f.element(i);
    if (!f.is_square(x)) {
      if (rank == 0)
        return x;
      --rank;
    }
  }
  throw std::logic_error("not enough non-residues in " + f.name());
}

Elem smallest_nonresidue(const Field& f) { return nth_nonresidue(f, 0); }

} // namespace kpnlab
