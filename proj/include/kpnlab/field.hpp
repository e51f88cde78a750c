#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kpnlab/modarith.hpp"

namespace kpnlab {

/// Element of GF(p), GF(p^2) or GF(p^4) as coefficients over GF(p) in the
/// flattened tower basis (1), (1,s) or (1,s,u,su). Unused slots are zero.
struct Elem {
  std::array<std::uint32_t, 4> c{};

  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

/// Finite field GF(p^e), e in {1,2,4}, built as a tower of quadratic
/// extensions: GF(p^2) = GF(p)[s]/(s^2 - t), GF(p^4) = GF(p^2)[u]/(u^2 - m).
///
/// A Field is an immutable value; two fields compare equal exactly when
/// they have the same characteristic, degree and tower parameters.
class Field {
 public:
  /// GF(p). Throws std::invalid_argument for composite p or p = 2.
  static Field prime(u64 p);
  /// GF(p) including p = 2, for polynomial gcd/root work over residue
  /// fields. Extensions of GF(2) remain unsupported.
  static Field residue_field(u64 p);

  /// GF(p^degree) with the rank-th smallest non-residues as tower
  /// parameters (rank 0 is the default tower).
  static Field gf(u64 p, unsigned degree, unsigned nonresidue_rank = 0);

  /// F[X]/(X^2 - d). d must be a non-square of this field and the
  /// resulting degree must not exceed 4.
  Field extend(const Elem& d) const;

  /// The subfield of the given degree sharing this tower.
  Field subfield(unsigned degree) const;

  u64 characteristic() const { return p_; }
  unsigned degree() const { return degree_; }
  u64 order() const { return q_; }
  /// s^2 = t (meaningful for degree >= 2).
  u64 tower_t() const { return t_; }
  /// u^2 = m, an element of GF(p^2) (meaningful for degree 4).
  const Elem& tower_m() const { return m_; }

  bool contains(const Elem& x) const;
  bool is_subfield_of(const Field& other) const;

  Elem zero() const { return Elem{}; }
  Elem one() const;
  Elem from_int(i64 v) const;
  /// The tower generator s (degree >= 2) or u (degree 4).
  Elem gen_s() const;
  Elem gen_u() const;

  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem scale(const Elem& x, u64 c) const;
  Elem inv(const Elem& x) const;
  Elem div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }
  /// x^n with x^0 = 1 for every x, including 0.
  Elem pow(const Elem& x, u64 n) const;

  /// x^(p^i) as a GF(p)-linear map on coefficients.
  Elem frobenius(const Elem& x, unsigned i) const;
  /// Norm to the subfield of degree sub_degree.
  Elem norm(const Elem& x, unsigned sub_degree) const;
  Elem trace(const Elem& x, unsigned sub_degree) const;
  /// x^((q-1)/2) == 1. Throws std::domain_error for x = 0.
  bool is_square(const Elem& x) const;
  bool is_zero(const Elem& x) const { return x == Elem{}; }

  /// Position in enumeration order: c0 + c1 p + c2 p^2 + c3 p^3.
  u64 index(const Elem& x) const;
  Elem element(u64 index) const;
  std::vector<Elem> enumerate() const;

  /// Comma-separated coefficients, e.g. "3,1,0,0".
  std::string format(const Elem& x) const;
  /// Accepts the format above; a single integer is read as a prime-field
  /// element. Throws std::invalid_argument on malformed text.
  Elem parse(std::string_view text) const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b)
  {
    return a.p_ == b.p_ && a.degree_ == b.degree_ && a.t_ == b.t_ && a.m_ == b.m_;
  }

 private:
  Field(u64 p, unsigned degree, u64 t, Elem m);

  using Pair = std::array<u64, 2>;
  Pair mul2(Pair a, Pair b) const;
  Pair frob2(Pair a) const { return {a[0], a[1] == 0 ? 0 : p_ - a[1]}; }

  u64 p_;
  unsigned degree_;
  u64 q_;
  u64 t_ = 0;
  Elem m_{};
  // u^p = frob_u_ * u, frob_u_ = m^((p-1)/2) in GF(p^2).
  Pair frob_u_{0, 0};
};

/// First element in enumeration order that is a non-square.
Elem smallest_nonresidue(const Field& f);

/// The rank-th non-square in enumeration order.
Elem nth_nonresidue(const Field& f, unsigned rank);

/// Extends f by a square root of d; see Field::extend.
inline Field extend_quadratic(const Field& f, const Elem& d) { return f.extend(d); }

} // namespace kpnlab
