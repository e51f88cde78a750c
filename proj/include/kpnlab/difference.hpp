#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpnlab/poly.hpp"

namespace kpnlab {

/// Ordered nonzero directions (a_1, ..., a_k) over one field.
class DirectionTuple {
 public:
  /// Throws std::invalid_argument on a zero entry or an element outside f.
  DirectionTuple(Field f, std::vector<Elem> dirs);

  const Field& field() const { return field_; }
  std::size_t size() const { return dirs_.size(); }
  const std::vector<Elem>& dirs() const { return dirs_; }
  const Elem& operator[](std::size_t i) const { return dirs_[i]; }

  /// "e1;e2;e3" in the element text format.
  std::string to_string() const;
  static DirectionTuple parse(const Field& f, std::string_view text);

  friend bool operator==(const DirectionTuple& a, const DirectionTuple& b)
  {
    return a.field_ == b.field_ && a.dirs_ == b.dirs_;
  }

 private:
  Field field_;
  std::vector<Elem> dirs_;
};

/// The iterated difference g -> g(x + a_i) - g(x), applied for each direction.
Poly nabla_poly(const Poly& f, const DirectionTuple& dirs);

/// Distinct subset sums of a direction tuple with their signed
/// multiplicities; zero coefficients are dropped.
struct Stencil {
  std::vector<Elem> shifts;
  std::vector<u64> coeffs; // in [1, p)
};

/// sum over S of (-1)^(k-|S|) at shift sum_{i in S} a_i, merged by shift.
/// Works for the empty tuple (k = 0) as well.
Stencil make_stencil(const Field& f, const std::vector<Elem>& dirs);

/// Pointwise difference from a precomputed stencil.
Elem nabla_eval(const std::function<Elem(const Elem&)>& f, const Field& F, const Stencil& st, const Elem& x);

/// Pointwise difference, k = |dirs| <= 8.
Elem nabla_eval(const std::function<Elem(const Elem&)>& f, const DirectionTuple& dirs, const Elem& x);

} // namespace kpnlab
