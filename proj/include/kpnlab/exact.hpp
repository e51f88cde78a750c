#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kpnlab/combinatorics.hpp"
#include "kpnlab/poly.hpp"

namespace kpnlab {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial with rational coefficients, index = exponent.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<Rational> coeffs);

  static ZPoly constant(const Rational& c) { return ZPoly({c}); }
  /// c * x^e
  static ZPoly monomial(const Rational& c, std::size_t e);

  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lead() const { return c_.back(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  ZPoly scaled(const Rational& c) const;
  ZPoly pow(unsigned e) const;

  friend bool operator==(const ZPoly&, const ZPoly&) = default;

 private:
  void normalize();
  std::vector<Rational> c_;
};

/// Parses sums of terms like `4/9*b^4 - 2*b + 1` in a single variable
/// (any lowercase letter).
ZPoly parse_zpoly(std::string_view text);
std::string to_string(const ZPoly& f, std::string_view var = "x");

/// Integer content times primitive part: f = content * prim with prim
/// having coprime integer coefficients and positive leading coefficient.
std::pair<Rational, std::vector<BigInt>> primitive_part(const ZPoly& f);

/// Resultant via the subresultant remainder sequence on the primitive
/// integer parts. Throws if both inputs are constant.
Rational resultant(const ZPoly& f, const ZPoly& g);

struct Factorization {
  int sign = 1;
  std::vector<std::pair<BigInt, unsigned>> factors;

  BigInt value() const;
  /// "-1 * 3^5 * 31"
  std::string to_string() const;
};

/// Miller-Rabin with the first thirteen prime bases; deterministic below
/// 3.3e24.
bool is_probable_prime(const BigInt& n);

/// Trial division to 10^6, then Brent's variant of Pollard rho.
Factorization factor_integer(const BigInt& n);

/// Coefficientwise image in GF(p). Throws std::domain_error if p divides a
/// denominator.
Poly reduce_mod_p(const ZPoly& f, u64 p);

struct ExceptionalPrime {
  BigInt prime;
  /// Monic gcd of the reductions; nullopt when prime >= 2^32.
  std::optional<Poly> gcd;
  bool irreducible = false;
  std::vector<u64> roots;
};

/// Every prime dividing resultant(f, g) or a leading coefficient of the
/// primitive integer parts, with the gcd of the reductions there.
/// Throws std::domain_error if the resultant is zero.
std::vector<ExceptionalPrime> exceptional_primes(const ZPoly& f, const ZPoly& g);

} // namespace kpnlab
