#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpnlab/difference.hpp"
#include "kpnlab/exact.hpp"
#include "kpnlab/kpn.hpp"

namespace kpnlab {

// ---- non-square lemma ----------------------------------------------------

struct NonquadWitness {
  u64 p = 0;
  u64 t = 0;  // s^2 = t in GF(p^2)
  u64 k = 0;  // Norm(m)
  u64 m1 = 0;
  u64 m2 = 0;
  Elem m{};   // m1 + m2 s in GF(p^2)
};

/// Smallest non-square k with k^2 - 10k + 9 a non-square; m1 = (3-k)/2 and
/// m2 the smaller root of (m1^2 - k)/t. Requires p >= 5.
NonquadWitness nonquad_search(u64 p);

/// The five witness conditions, re-checked with field primitives.
bool check_nonquad(const NonquadWitness& w);

// ---- Fermat-type equations ----------------------------------------------

/// Whether u^(p-1) + y^(p-1) + 1 = 0 has a solution with u, y in GF(p^2)*.
bool fermat_like_has_solution(u64 p);

struct WeilCount {
  u64 p = 0;
  u64 points = 0;          // projective points of y^(p-1)+z^(p-1)+w^(p-1) = 0 over GF(p^4)
  u64 points_nonzero = 0;  // ... with no zero coordinate
  u64 zero_locus = 0;
  u64 bound = 0;           // 5p^3 - 6p^2 + 1
};

/// Exact count over GF(p^4); p in {5, 7}.
WeilCount count_fermat_projective(u64 p);

// ---- top-coefficient identities -----------------------------------------

struct DiagonalCheck {
  u64 numeric = 0;
  u64 formula = 0;
  bool holds = false;
  bool nonzero = false;
  bool ok() const { return holds && nonzero; }
};

/// Coefficient of x^(p^2-1) in (nabla^k_{1,...,1} x^(a+bp))^(1+p) over
/// GF(p^2), by point sum, against (-1)^(k+1) binom(a,k+1)^2 S(k,2k+2) mod p.
/// Requires p >= 2k+2, a + b = p + k, a, b <= p-1.
DiagonalCheck verify_diagonal_identity(u64 p, unsigned k, u64 a, u64 b);

// ---- coefficient formula bank -------------------------------------------

/// c0 + cp*p + ca*a + cb*b
struct LinearExpr {
  i64 c0 = 0, cp = 0, ca = 0, cb = 0;
  i64 at(i64 p, i64 a, i64 b) const { return c0 + cp * p + ca * a + cb * b; }
  static LinearExpr parse(std::string_view text);
};

struct FormulaFactor {
  char var = 'b';
  ZPoly poly;
  bool core = false;
  std::string text;
};

struct CaseFormula {
  i64 t = 1;
  std::vector<FormulaFactor> factors;
  /// The factor marked core, if any.
  const FormulaFactor* core() const;
};

struct SpotValue {
  i64 t = 1;
  i64 b = 0;
  BigInt value;
};

struct CoeffCase {
  std::string id;
  std::string anchor;
  std::array<LinearExpr, 4> digits;  // exponent a + b p + c p^2 + d p^3
  LinearExpr a_lo, a_hi, b_lo, b_hi; // variable ranges, linear in p
  bool has_a = false;                // a ranges; otherwise a = 0
  std::vector<std::string> dirs;     // "1", "t", or integer tokens
  unsigned norm_degree = 1;          // 1: power 1+p+p^2+p^3, 2: power 1+p^2
  std::vector<CaseFormula> formulas;
  std::vector<SpotValue> spots;

  const CaseFormula& formula(i64 t) const;
  bool has_t(i64 t) const;
  u64 exponent(u64 p, i64 a, i64 b) const;
};

struct CaseBank {
  int version = 0;
  std::string checksum;
  std::vector<CoeffCase> cases;

  const CoeffCase& find(std::string_view id) const;
};

/// CRC-32 of the bank text, as 8 lowercase hex digits.
std::string bank_checksum(std::string_view text);
CaseBank parse_bank(std::string_view text);
CaseBank load_bank(const std::string& path);
/// KPNLAB_BANK if set, else the bank shipped with the sources.
std::string default_bank_path();

/// The case's formula at (t, a, b), reduced mod p. Throws
/// std::domain_error when p divides a denominator.
u64 coeff_formula(const CoeffCase& c, i64 t, i64 b, u64 p, i64 a = 0);

/// Exact value of the formula (spot-value checks).
Rational coeff_formula_exact(const CoeffCase& c, i64 t, i64 b, i64 a = 0);

struct CoeffRow {
  i64 a = 0, b = 0;
  u64 n = 0;
  std::string numeric;  // element text format
  u64 formula = 0;
  bool match = false;
  /// When the formula is nonzero: whether nabla f is a permutation (it must
  /// not be).
  std::optional<bool> permutation;
};

struct CoeffCheck {
  bool ok = true;
  std::vector<CoeffRow> rows;
};

/// Top coefficient of (nabla f)^(norm power) by point sum against the bank
/// formula, for every admissible (a, b). p in {5, 7, 11}.
CoeffCheck verify_coeff_numeric(const CoeffCase& c, u64 p, i64 t, bool check_permutation = true);

// ---- constructions -------------------------------------------------------

struct Counterexample {
  NonquadWitness lemma;
  Field field;   // GF(p^2)[u]/(u^2 - m)
  Elem v{}, x{}, x_prime{}, x1{};
  bool norm_condition = false;  // Norm(2/(1+m)) = 1
  bool verified = false;        // nabla_{1,v} x^(1+p+p^2) agrees at x and x'
};

/// Non-injectivity witness for nabla_{1,v} x^(1+p+p^2) over GF(p^4).
Counterexample counterexample_1pp2(u64 p);

struct ThreeDirectionChecks {
  Elem w{};
  bool w_condition = false;                 // w^(p^2-1) = -1
  PermReport pattern;                       // nabla_{1,w,w} x^(3+p^2)
  bool closed_form = false;                 // nabla_{1,1,1} x^(2+2p^2) = 12x^(p^2)+12x+36
  PermReport cube;                          // ... as a map
};

ThreeDirectionChecks three_direction_checks(u64 p);

} // namespace kpnlab
