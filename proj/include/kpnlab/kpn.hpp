#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kpnlab/difference.hpp"
#include "kpnlab/poly.hpp"

namespace kpnlab {

using FieldFn = std::function<Elem(const Elem&)>;

enum class PermWitness { none, collision, root_count, hermite_dickson };

struct PermReport {
  bool verdict = true;
  PermWitness kind = PermWitness::none;
  Elem x1{}, x2{};  // collision: h(x1) = h(x2), x1 before x2
  u64 roots = 0;    // root_count
  u64 t = 0;        // hermite_dickson: reduced f^t has degree q-1
  Elem coeff{};     // ... with this leading coefficient
};

/// Bijection test by image tally; on failure the first collision in
/// enumeration order.
PermReport is_permutation(const FieldFn& h, const Field& F);

/// Hermite-Dickson criterion for deg f < q: exactly one root, and
/// deg(f^t mod x^q - x) <= q-2 for 1 <= t <= q-2 with p not dividing t.
PermReport hermite_dickson(const Poly& f);

struct KpnReport {
  u64 n = 0;
  unsigned k = 0;
  Field field;
  bool verdict = true;
  bool normalized = true;
  /// Failing tuple and its collision when verdict is false.
  std::optional<DirectionTuple> dirs;
  PermReport perm;
  u64 tuples_tested = 0;
  u64 tuples_total = 0;

  explicit KpnReport(Field f) : field(std::move(f)) {}
};

/// Largest field handled by the table-driven sweep.
inline constexpr u64 kMaxSweepOrder = 4096;

/// Whether x^n is k-PN over F. With normalize, a_1 = 1 and a_2 <= ... <= a_k
/// in enumeration order. Tuples are visited in a fixed pseudorandom order
/// and the sweep stops at the first failure; the reported failure is the
/// first in that order for any number of jobs.
/// Requires 1 <= n <= q-1, 1 <= k <= 4, q <= kMaxSweepOrder.
KpnReport is_kpn(u64 n, unsigned k, const Field& F, bool normalize = true, unsigned jobs = 1);

/// Replays a false verdict by direct evaluation. True iff the recorded
/// tuple and collision are genuine.
bool verify_witness(const KpnReport& r);

/// x^n' k-PN over sub, with n' = fold_exponent(n, |sub|).
bool subfield_filter(u64 n, unsigned k, const Field& F, const Field& sub);

struct ClassifyOptions {
  bool coprime_to_p = false;
  /// Decide each class {n, np, np^2, ...} (mod q-1) once through its
  /// smallest member; every member passing the other filters is reported.
  bool frobenius_reduce = false;
  bool subfield_prefilter = true;
  unsigned jobs = 1;
};

struct ClassifyResult {
  std::vector<u64> exponents;
  u64 candidates = 0;
  u64 rejected_by_subfield = 0;
  u64 swept = 0;
};

/// All n in [1, q-1] passing the filters with x^n k-PN over F.
/// k <= 3 for GF(p^4), k <= 4 otherwise.
ClassifyResult classify(const Field& F, unsigned k, const ClassifyOptions& opt = {});

/// Fold of n*p into [1, q-1].
u64 frobenius_shift(u64 n, const Field& F);

enum class CollisionStrategy { exhaustive, birthday };

struct CollisionResult {
  bool found = false;
  Elem x1{}, x2{};
  u64 probes = 0;
};

struct CollisionOptions {
  u64 budget = 1000000;
  CollisionStrategy strategy = CollisionStrategy::exhaustive;
  u64 seed = 0x6b706e6c6162ULL;
  /// Slots of the direct-mapped table used by the birthday strategy.
  std::size_t table_bits = 22;
};

/// Searches for x1 != x2 with h(x1) = h(x2). Exhaustive walks elements in
/// enumeration order; birthday probes pseudorandom elements through a
/// direct-mapped table with eviction. Any returned pair is re-verified.
CollisionResult find_collision(const FieldFn& h, const Field& F, const CollisionOptions& opt = {});

/// x -> nabla_{dirs} x^n evaluated with Field::pow.
FieldFn monomial_difference(u64 n, const DirectionTuple& dirs);

} // namespace kpnlab
