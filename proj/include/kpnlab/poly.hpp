#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpnlab/field.hpp"

namespace kpnlab {

/// Folds an exponent onto [0, q-1] so that x^e and x^fold(e) agree as
/// functions on GF(q): e >= 1 maps to ((e-1) mod (q-1)) + 1, 0 stays 0.
inline u64 fold_exponent(u64 e, u64 q) { return e == 0 ? 0 : (e - 1) % (q - 1) + 1; }

/// Dense univariate polynomial over a Field; index = exponent.
class Poly {
 public:
  static constexpr std::ptrdiff_t kZeroDegree = -1;

  explicit Poly(Field f) : field_(std::move(f)) {}
  Poly(Field f, std::vector<Elem> coeffs);

  static Poly monomial(const Field& f, const Elem& c, std::size_t exponent);
  static Poly x(const Field& f) { return monomial(f, f.one(), 1); }
  static Poly constant(const Field& f, const Elem& c) { return monomial(f, c, 0); }

  const Field& field() const { return field_; }
  /// kZeroDegree for the zero polynomial.
  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Elem{}; }
  const Elem& lead() const { return coeffs_.back(); }
  const std::vector<Elem>& coeffs() const { return coeffs_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Elem& c) const;

  friend bool operator==(const Poly& a, const Poly& b)
  {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();
  void require_same_field(const Poly& o) const;

  Field field_;
  std::vector<Elem> coeffs_;
};

/// Horner evaluation. Throws if x is not an element of f's field.
Elem eval(const Poly& f, const Elem& x);

/// f(x + a), expanded with binomial coefficients reduced mod p.
Poly shift_compose(const Poly& f, const Elem& a);

/// The unique polynomial of degree < q inducing the same function as f,
/// obtained by folding exponents with fold_exponent.
Poly reduce_mod_field(const Poly& f);

/// reduce_mod_field(f^t), square-and-multiply with reduction after each
/// product. t >= 1.
Poly powmod(const Poly& f, u64 t);

/// Coefficient of x^(q-1) in the reduced polynomial representing h,
/// computed as -sum_{c in F} h(c).
Elem top_coeff_sum(const std::function<Elem(const Elem&)>& h, const Field& f);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly monic(const Poly& f);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd_poly(const Poly& f, const Poly& g);
/// base^e mod modulus.
Poly powmod_poly(const Poly& base, u64 e, const Poly& modulus);

/// Irreducibility over the coefficient field (distinct-degree test).
/// Throws for constant input.
bool is_irreducible(const Poly& f);

/// Roots of f lying in its coefficient field, sorted by enumeration order.
/// Prime fields only; uses gcd with x^p - x and Cantor-Zassenhaus splitting.
std::vector<Elem> prime_field_roots(const Poly& f);

/// "c_k*x^k + ... + c_0" with coefficients in the element text format.
std::string to_string(const Poly& f, std::string_view var = "x");
Poly parse_poly(const Field& f, std::string_view text);

} // namespace kpnlab
