#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kpnlab/modarith.hpp"

namespace kpnlab {

using BigInt = boost::multiprecision::cpp_int;

/// Base-p digits of n, least significant first. Empty for n = 0.
std::vector<u64> base_p_digits(u64 n, u64 p);

/// An exponent together with its base-p digits (a, b, c, d, ...).
struct ExponentProfile {
  u64 n = 0;
  u64 p = 0;
  std::vector<u64> digits;
  u64 digit_sum = 0;

  static ExponentProfile of(u64 n, u64 p);
  /// Digit i, zero beyond the stored length.
  u64 digit(std::size_t i) const { return i < digits.size() ? digits[i] : 0; }
};

/// binom(alpha, beta) mod p, computed digitwise (binom(n, k) = 0 for n < k).
u64 lucas_binomial(u64 alpha, u64 beta, u64 p);

/// Exact binomial coefficient.
BigInt binomial(u64 n, u64 k);

/// S(k, r) = sum_{i,j=0..k} (-1)^(i+j) binom(k,i) binom(k,j) (i-j)^r, evaluated
/// exactly. Requires 1 <= k <= 12 and r <= 40.
BigInt s_direct(unsigned k, unsigned r);

/// Closed forms for S(k, r): zero when r is odd or r < 2k,
/// (-1)^k (2k)! at r = 2k, and (-1)^k (2k)! k(k+1)(2k+1)/6 at r = 2k+2.
/// nullopt everywhere else.
std::optional<BigInt> s_closed(unsigned k, unsigned r);

/// x mod p in [0, p) for a signed big integer.
u64 mod_p(const BigInt& x, u64 p);

} // namespace kpnlab
