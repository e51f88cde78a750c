#include "kpnlab/combinatorics.hpp"

#include <stdexcept>

namespace kpnlab {

std::vector<u64> base_p_digits(u64 n, u64 p)
{
  if (p < 2)
    throw std::invalid_argument("base must be at least 2");
  std::vector<u64> digits;
  while (n) {
    digits.push_back(n % p);
    n /= p;
  }
  return digits;
}

ExponentProfile ExponentProfile::of(u64 n, u64 p)
{
  ExponentProfile prof{n, p, base_p_digits(n, p), 0};
  for (u64 d : prof.digits)
    prof.digit_sum += d;
  return prof;
}

u64 lucas_binomial(u64 alpha, u64 beta, u64 p)
{
  u64 result = 1 % p;
  while (alpha || beta) {
    u64 a = alpha % p;
    u64 b = beta % p;
    if (b > a)
      return 0;
    // small binomial mod p: a!/(b!(a-b)!) with a < p
    u64 num = 1, den = 1;
    for (u64 i = 0; i < b; ++i) {
      num = mulmod(num, a - i, p);
      den = mulmod(den, i + 1, p);
    }
    result = mulmod(result, mulmod(num, invmod(den, p), p), p);
    alpha /= p;
    beta /= p;
  }
  return result;
}

BigInt binomial(u64 n, u64 k)
{
  if (k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  BigInt r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt s_direct(unsigned k, unsigned r)
{
  if (k < 1 || k > 12 || r > 40)
    throw std::invalid_argument("s_direct: requires 1 <= k <= 12 and r <= 40");
  BigInt sum = 0;
  for (unsigned i = 0; i <= k; ++i) {
    for (unsigned j = 0; j <= k; ++j) {
      BigInt term = binomial(k, i) * binomial(k, j);
      BigInt diff = static_cast<long>(i) - static_cast<long>(j);
      term *= boost::multiprecision::pow(diff, r);
      if ((i + j) % 2)
        sum -= term;
      else
        sum += term;
    }
  }
  return sum;
}

std::optional<BigInt> s_closed(unsigned k, unsigned r)
{
  if (r % 2 == 1 || r < 2 * k)
    return BigInt(0);
  if (r != 2 * k && r != 2 * k + 2)
    return std::nullopt;
  BigInt fact = 1;
  for (unsigned i = 2; i <= 2 * k; ++i)
    fact *= i;
  if (k % 2)
    fact = -fact;
  if (r == 2 * k)
    return fact;
  return fact * k * (k + 1) * (2 * k + 1) / 6;
}

u64 mod_p(const BigInt& x, u64 p)
{
  BigInt r = x % p;
  if (r < 0)
    r += p;
  return static_cast<u64>(r);
}

} // namespace kpnlab
