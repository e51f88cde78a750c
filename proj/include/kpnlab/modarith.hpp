#pragma once

#include <cstdint>
#include <optional>

namespace kpnlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m)
{
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// Inverse of a modulo a prime m; a must be nonzero mod m.
u64 invmod(u64 a, u64 m);

/// Reduces a signed integer into [0, m).
inline u64 reduce_signed(i64 v, u64 m)
{
  i64 r = v % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Deterministic Miller-Rabin for the whole 64-bit range.
bool is_prime_u64(u64 n);

/// Square root modulo an odd prime (Tonelli-Shanks). Returns the smaller
/// of the two roots, or nullopt for non-residues.
std::optional<u64> sqrt_mod(u64 a, u64 p);

} // namespace kpnlab
