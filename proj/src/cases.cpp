#include "kpnlab/cases.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/crc.hpp>

#include "kpnlab/combinatorics.hpp"

#ifndef KPNLAB_DEFAULT_BANK
#define KPNLAB_DEFAULT_BANK "data/case_bank.txt"
#endif

namespace kpnlab {

// ---- non-square lemma ----------------------------------------------------

namespace {

bool is_qnr(u64 a, u64 p) { return a % p != 0 && powmod(a, (p - 1) / 2, p) == p - 1; }

} // namespace

NonquadWitness nonquad_search(u64 p)
{
  if (p < 5 || !is_prime_u64(p))
    throw std::invalid_argument("nonquad_search: p must be a prime >= 5");
  const Field F2 = Field::gf(p, 2);
  NonquadWitness w;
  w.p = p;
  w.t = F2.tower_t();
  const u64 inv2 = invmod(2, p);
  for (u64 k = 1; k < p; ++k) {
    if (!is_qnr(k, p))
      continue;
    const u64 disc = reduce_signed(static_cast<i64>(k * k) - 10 * static_cast<i64>(k) + 9, p);
    if (!is_qnr(disc, p))
      continue;
    const u64 m1 = mulmod(reduce_signed(3 - static_cast<i64>(k), p), inv2, p);
    const u64 rhs = mulmod(reduce_signed(static_cast<i64>(mulmod(m1, m1, p)) - static_cast<i64>(k), p),
                           invmod(w.t, p), p);
    auto r = sqrt_mod(rhs, p);
    if (!r)
      throw std::logic_error("nonquad_search: (m1^2 - k)/t is not a square");
    w.k = k;
    w.m1 = m1;
    w.m2 = std::min(*r, (p - *r) % p);
    w.m = Elem{{static_cast<std::uint32_t>(m1), static_cast<std::uint32_t>(w.m2), 0, 0}};
    return w;
  }
  throw std::logic_error("nonquad_search: no admissible k");
}

bool check_nonquad(const NonquadWitness& w)
{
  const Field F2 = Field::gf(w.p, 2);
  if (F2.tower_t() != w.t || F2.is_zero(w.m))
    return false;
  const u64 p = w.p;
  const bool k_nonsquare = is_qnr(w.k, p);
  const bool m_nonsquare = !F2.is_square(w.m);
  const bool norm_shift = F2.norm(F2.add(F2.one(), w.m), 1) == F2.from_int(4);
  const bool trace_rel = reduce_signed(static_cast<i64>(2 * w.m1 + w.k) - 3, p) == 0;
  const bool norm_m = F2.norm(w.m, 1) == F2.from_int(static_cast<i64>(w.k));
  return k_nonsquare && m_nonsquare && norm_shift && trace_rel && norm_m;
}

// ---- Fermat-type equations ----------------------------------------------

bool fermat_like_has_solution(u64 p)
{
  const Field F = Field::gf(p, 2);
  // Values of z^(p-1) for z != 0: the norm-one subgroup.
  std::vector<bool> in_image(F.order(), false);
  for (u64 i = 1; i < F.order(); ++i)
    in_image[F.index(F.pow(F.element(i), p - 1))] = true;
  const Elem minus_one = F.neg(F.one());
  for (u64 i = 0; i < F.order(); ++i) {
    if (!in_image[i])
      continue;
    if (in_image[F.index(F.sub(minus_one, F.element(i)))])
      return true;
  }
  return false;
}

WeilCount count_fermat_projective(u64 p)
{
  if (p != 5 && p != 7)
    throw std::invalid_argument("count_fermat_projective: p must be 5 or 7");
  const Field F = Field::gf(p, 4);
  const u64 q = F.order();
  // hist[v] = #{x : x^(p-1) = v}
  std::vector<u64> hist(q, 0);
  for (u64 i = 0; i < q; ++i)
    ++hist[F.index(F.pow(F.element(i), p - 1))];
  const Elem minus_one = F.neg(F.one());
  const u64 zero_idx = 0;

  WeilCount r;
  r.p = p;
  // Chart w = 1: y^(p-1) + z^(p-1) = -1.
  for (u64 v = 0; v < q; ++v) {
    if (!hist[v])
      continue;
    const u64 other = F.index(F.sub(minus_one, F.element(v)));
    const u64 pairs = hist[v] * hist[other];
    r.points += pairs;
    if (v != zero_idx && other != zero_idx)
      r.points_nonzero += pairs;
  }
  // Line w = 0, chart z = 1: y^(p-1) = -1. The point [1:0:0] is not on the curve.
  const u64 at_infinity = hist[F.index(minus_one)];
  r.points += at_infinity;
  r.zero_locus = r.points - r.points_nonzero;
  r.bound = 5 * p * p * p - 6 * p * p + 1;
  return r;
}

// ---- top-coefficient identities -----------------------------------------

DiagonalCheck verify_diagonal_identity(u64 p, unsigned k, u64 a, u64 b)
{
  if (k < 1 || p < 2 * k + 2 || a > p - 1 || b > p - 1 || a + b != p + k)
    throw std::invalid_argument("verify_diagonal_identity: need p >= 2k+2, a + b = p + k, a, b <= p-1");
  const Field F = Field::gf(p, 2);
  const u64 n = a + b * p;
  const Stencil st = make_stencil(F, std::vector<Elem>(k, F.one()));
  auto f = [&](const Elem& x) { return F.pow(x, n); };
  const Elem top = top_coeff_sum([&](const Elem& c) { return F.norm(nabla_eval(f, F, st, c), 1); }, F);

  DiagonalCheck r;
  r.numeric = top.c[0];
  BigInt value = binomial(a, k + 1);
  value = value * value * s_direct(k, 2 * k + 2);
  if ((k + 1) % 2)
    value = -value;
  r.formula = mod_p(value, p);
  r.holds = top == F.from_int(static_cast<i64>(r.formula));
  r.nonzero = r.formula != 0;
  return r;
}

// ---- bank ----------------------------------------------------------------

LinearExpr LinearExpr::parse(std::string_view text)
{
  LinearExpr e;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s += ch;
  if (s.empty())
    throw std::invalid_argument("empty linear expression");
  std::size_t i = 0;
  while (i < s.size()) {
    i64 sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("bad linear expression: " + s);
    }
    i64 coef = 1;
    bool have_num = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      coef = std::stoll(s.substr(i, j - i));
      have_num = true;
      i = j;
      if (i < s.size() && s[i] == '*')
        ++i;
    }
    i64* slot = &e.c0;
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      switch (s[i]) {
        case 'p': slot = &e.cp; break;
        case 'a': slot = &e.ca; break;
        case 'b': slot = &e.cb; break;
        default: throw std::invalid_argument("bad variable in linear expression: " + s);
      }
      ++i;
    } else if (!have_num) {
      throw std::invalid_argument("bad linear expression: " + s);
    }
    *slot += sign * coef;
  }
  return e;
}

const FormulaFactor* CaseFormula::core() const
{
  for (const auto& f : factors)
    if (f.core)
      return &f;
  return nullptr;
}

const CaseFormula& CoeffCase::formula(i64 t) const
{
  for (const auto& f : formulas)
    if (f.t == t)
      return f;
  throw std::invalid_argument("case " + id + " has no formula for t = " + std::to_string(t));
}

bool CoeffCase::has_t(i64 t) const
{
  return std::any_of(formulas.begin(), formulas.end(), [t](const CaseFormula& f) { return f.t == t; });
}

u64 CoeffCase::exponent(u64 p, i64 a, i64 b) const
{
  u64 n = 0, pw = 1;
  for (const auto& d : digits) {
    const i64 v = d.at(static_cast<i64>(p), a, b);
    if (v < 0 || v >= static_cast<i64>(p))
      throw std::invalid_argument("case " + id + ": digit out of range");
    n += static_cast<u64>(v) * pw;
    pw *= p;
  }
  return n;
}

const CoeffCase& CaseBank::find(std::string_view id) const
{
  for (const auto& c : cases)
    if (c.id == id)
      return c;
  throw std::invalid_argument("unknown case id: " + std::string(id));
}

std::string bank_checksum(std::string_view text)
{
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

namespace {

std::string trim(std::string_view s)
{
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

// "key rest-of-line"
std::pair<std::string, std::string> split_key(const std::string& line)
{
  auto sp = line.find_first_of(" \t");
  if (sp == std::string::npos)
    return {line, ""};
  return {line.substr(0, sp), trim(std::string_view(line).substr(sp))};
}

std::vector<std::string> words(const std::string& s)
{
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

i64 parse_assign(const std::string& tok, const std::string& name)
{
  if (tok.rfind(name + "=", 0) != 0)
    throw std::invalid_argument("expected " + name + "=<int>, got " + tok);
  return std::stoll(tok.substr(name.size() + 1));
}

} // namespace

CaseBank parse_bank(std::string_view text)
{
  CaseBank bank;
  bank.checksum = bank_checksum(text);
  std::istringstream in{std::string(text)};
  CoeffCase* cur = nullptr;
  CaseFormula* form = nullptr;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("case bank line " + std::to_string(lineno) + ": " + msg);
  };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos)
      raw.resize(h);
    const std::string line = trim(raw);
    if (line.empty())
      continue;
    auto [key, rest] = split_key(line);
    try {
      if (key == "version") {
        bank.version = std::stoi(rest);
      } else if (key == "case") {
        if (rest.empty())
          fail("case without id");
        bank.cases.emplace_back();
        cur = &bank.cases.back();
        cur->id = rest;
        form = nullptr;
      } else if (!cur) {
        fail("'" + key + "' outside a case");
      } else if (key == "anchor") {
        cur->anchor = rest;
      } else if (key == "digits") {
        auto w = words(rest);
        if (w.size() != 4)
          fail("digits needs four expressions");
        for (int i = 0; i < 4; ++i)
          cur->digits[i] = LinearExpr::parse(w[i]);
      } else if (key == "range") {
        auto w = words(rest);
        if (w.size() != 3 || (w[0] != "a" && w[0] != "b"))
          fail("range <a|b> <lo> <hi>");
        auto& lo = w[0] == "a" ? cur->a_lo : cur->b_lo;
        auto& hi = w[0] == "a" ? cur->a_hi : cur->b_hi;
        lo = LinearExpr::parse(w[1]);
        hi = LinearExpr::parse(w[2]);
        if (w[0] == "a")
          cur->has_a = true;
      } else if (key == "dirs") {
        std::string tok;
        std::istringstream ds(rest);
        cur->dirs.clear();
        while (std::getline(ds, tok, ','))
          cur->dirs.push_back(trim(tok));
      } else if (key == "norm") {
        cur->norm_degree = static_cast<unsigned>(std::stoul(rest));
        if (cur->norm_degree != 1 && cur->norm_degree != 2)
          fail("norm must be 1 or 2");
      } else if (key == "formula") {
        cur->formulas.push_back(CaseFormula{parse_assign(rest, "t"), {}});
        form = &cur->formulas.back();
      } else if (key == "factor" || key == "core") {
        if (!form)
          fail("factor before formula");
        auto [var, expr] = split_key(rest);
        if (var.size() != 1 || (var[0] != 'a' && var[0] != 'b'))
          fail("factor variable must be a or b");
        form->factors.push_back(FormulaFactor{var[0], parse_zpoly(expr), key == "core", expr});
      } else if (key == "spot") {
        auto w = words(rest);
        if (w.size() != 3)
          fail("spot t=<int> b=<int> <value>");
        cur->spots.push_back(SpotValue{parse_assign(w[0], "t"), parse_assign(w[1], "b"), BigInt(w[2])});
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("case bank line", 0) == 0)
        throw;
      fail(e.what());
    }
  }
  if (bank.version != 1)
    throw std::invalid_argument("case bank: unsupported version " + std::to_string(bank.version));
  for (const auto& c : bank.cases)
    if (c.dirs.empty() || c.formulas.empty())
      throw std::invalid_argument("case bank: incomplete case " + c.id);
  return bank;
}

CaseBank load_bank(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open case bank " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bank(ss.str());
}

std::string default_bank_path()
{
  if (const char* env = std::getenv("KPNLAB_BANK"); env && *env)
    return env;
  return KPNLAB_DEFAULT_BANK;
}

Rational coeff_formula_exact(const CoeffCase& c, i64 t, i64 b, i64 a)
{
  Rational v = 1;
  for (const auto& f : c.formula(t).factors)
    v *= f.poly.eval(Rational(f.var == 'a' ? a : b));
  return v;
}

u64 coeff_formula(const CoeffCase& c, i64 t, i64 b, u64 p, i64 a)
{
  for (const auto& f : c.formula(t).factors)
    for (const auto& co : f.poly.coeffs())
      if (mod_p(boost::multiprecision::denominator(co), p) == 0)
        throw std::domain_error("coeff_formula: p divides a denominator of case " + c.id);
  const Rational v = coeff_formula_exact(c, t, b, a);
  const u64 d = mod_p(boost::multiprecision::denominator(v), p);
  return mulmod(mod_p(boost::multiprecision::numerator(v), p), invmod(d, p), p);
}

CoeffCheck verify_coeff_numeric(const CoeffCase& c, u64 p, i64 t, bool check_permutation)
{
  if (p != 5 && p != 7 && p != 11)
    throw std::invalid_argument("verify_coeff_numeric: p must be 5, 7 or 11");
  const Field F = Field::gf(p, 4);
  std::vector<Elem> dirs;
  for (const auto& tok : c.dirs)
    dirs.push_back(tok == "t" ? F.from_int(t) : F.from_int(std::stoll(tok)));
  const DirectionTuple tuple(F, dirs);
  const Stencil st = make_stencil(F, dirs);

  CoeffCheck out;
  const i64 P = static_cast<i64>(p);
  const i64 a_lo = c.has_a ? c.a_lo.at(P, 0, 0) : 0;
  const i64 a_hi = c.has_a ? c.a_hi.at(P, 0, 0) : 0;
  for (i64 a = a_lo; a <= a_hi; ++a) {
    for (i64 b = c.b_lo.at(P, a, 0); b <= c.b_hi.at(P, a, 0); ++b) {
      CoeffRow row;
      row.a = a;
      row.b = b;
      row.n = c.exponent(p, a, b);
      const u64 n = row.n;
      auto f = [&](const Elem& x) { return F.pow(x, n); };
      const Elem top = top_coeff_sum(
          [&](const Elem& x) { return F.norm(nabla_eval(f, F, st, x), c.norm_degree); }, F);
      row.numeric = F.format(top);
      row.formula = coeff_formula(c, t, b, p, a);
      row.match = top == F.from_int(static_cast<i64>(row.formula));
      if (check_permutation && row.formula != 0) {
        row.permutation = is_permutation(monomial_difference(n, tuple), F).verdict;
        if (*row.permutation)
          out.ok = false;
      }
      if (!row.match)
        out.ok = false;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

// ---- constructions -------------------------------------------------------

Counterexample counterexample_1pp2(u64 p)
{
  const NonquadWitness w = nonquad_search(p);
  const Field F2 = Field::gf(p, 2);
  if (F2.is_square(w.m))
    throw std::logic_error("counterexample_1pp2: m is a square");
  Counterexample r{w, F2.extend(w.m)};
  const Field& F = r.field;
  const Elem one_plus_m = F2.add(F2.one(), w.m);
  r.norm_condition = F2.norm(F2.div(F2.from_int(2), one_plus_m), 1) == F2.one();

  // (1+m) x1^p + 2 x1 = 0 with x1 in GF(p^2)*.
  for (u64 i = 1; i < F2.order(); ++i) {
    const Elem x1 = F2.element(i);
    if (F2.is_zero(F2.add(F2.mul(one_plus_m, F2.frobenius(x1, 1)), F2.scale(x1, 2)))) {
      r.x1 = x1;
      break;
    }
  }
  if (F2.is_zero(r.x1))
    return r;
  r.v = F.add(F.one(), F.gen_u());
  r.x = F.sub(r.x1, F.mul(F2.frobenius(r.x1, 1), F.gen_u()));
  r.x_prime = F.zero();
  const u64 n = 1 + p + p * p;
  const DirectionTuple dirs(F, {F.one(), r.v});
  const FieldFn h = monomial_difference(n, dirs);
  r.verified = r.x != r.x_prime && h(r.x) == h(r.x_prime);
  return r;
}

ThreeDirectionChecks three_direction_checks(u64 p)
{
  if (p != 5 && p != 7)
    throw std::invalid_argument("three_direction_checks: p must be 5 or 7");
  const Field F = Field::gf(p, 4);
  ThreeDirectionChecks r;
  const Elem minus_one = F.neg(F.one());
  for (u64 i = 1; i < F.order(); ++i) {
    const Elem w = F.element(i);
    if (F.pow(w, p * p - 1) == minus_one) {
      r.w = w;
      r.w_condition = true;
      break;
    }
  }
  if (r.w_condition)
    r.pattern = is_permutation(monomial_difference(3 + p * p, DirectionTuple(F, {F.one(), r.w, r.w})), F);

  const DirectionTuple ones(F, {F.one(), F.one(), F.one()});
  const FieldFn cube = monomial_difference(2 + 2 * p * p, ones);
  r.closed_form = true;
  for (u64 i = 0; i < F.order() && r.closed_form; ++i) {
    const Elem x = F.element(i);
    const Elem rhs = F.add(F.add(F.scale(F.pow(x, p * p), 12), F.scale(x, 12)), F.from_int(36));
    r.closed_form = cube(x) == rhs;
  }
  r.cube = is_permutation(cube, F);
  return r;
}

} // namespace kpnlab
