#include "kpnlab/difference.hpp"

#include <map>
#include <stdexcept>

namespace kpnlab {

DirectionTuple::DirectionTuple(Field f, std::vector<Elem> dirs) : field_(std::move(f)), dirs_(std::move(dirs))
{
  for (const Elem& a : dirs_) {
    if (!field_.contains(a))
      throw std::invalid_argument("direction is not an element of " + field_.name());
    if (field_.is_zero(a))
      throw std::invalid_argument("directions must be nonzero");
  }
}

std::string DirectionTuple::to_string() const
{
  std::string s;
  for (std::size_t i = 0; i < dirs_.size(); ++i) {
    if (i)
      s += ';';
    s += field_.format(dirs_[i]);
  }
  return s;
}

DirectionTuple DirectionTuple::parse(const Field& f, std::string_view text)
{
  std::vector<Elem> dirs;
  std::size_t pos = 0;
  while (true) {
    std::size_t semi = text.find(';', pos);
    dirs.push_back(f.parse(text.substr(pos, semi == std::string_view::npos ? text.npos : semi - pos)));
    if (semi == std::string_view::npos)
      break;
    pos = semi + 1;
  }
  return DirectionTuple(f, std::move(dirs));
}

Poly nabla_poly(const Poly& f, const DirectionTuple& dirs)
{
  if (dirs.size() == 0)
    throw std::invalid_argument("nabla_poly: empty direction tuple");
  if (!(f.field() == dirs.field()))
    throw std::invalid_argument("nabla_poly: directions and polynomial over different fields");
  Poly g = f;
  for (const Elem& a : dirs.dirs())
    g = shift_compose(g, a) - g;
  return g;
}

Stencil make_stencil(const Field& f, const std::vector<Elem>& dirs)
{
  const std::size_t k = dirs.size();
  if (k > 8)
    throw std::invalid_argument("make_stencil: at most 8 directions");
  const u64 p = f.characteristic();
  std::map<Elem, u64> acc;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Elem shift{};
    unsigned bits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        shift = f.add(shift, dirs[i]);
        ++bits;
      }
    }
    u64& c = acc[shift];
    c = (k - bits) % 2 ? (c + p - 1) % p : (c + 1) % p;
  }
  Stencil st;
  for (const auto& [shift, c] : acc) {
    if (c == 0)
      continue;
    st.shifts.push_back(shift);
    st.coeffs.push_back(c);
  }
  return st;
}

Elem nabla_eval(const std::function<Elem(const Elem&)>& f, const Field& F, const Stencil& st, const Elem& x)
{
  Elem sum{};
  for (std::size_t i = 0; i < st.shifts.size(); ++i)
    sum = F.add(sum, F.scale(f(F.add(x, st.shifts[i])), st.coeffs[i]));
  return sum;
}

Elem nabla_eval(const std::function<Elem(const Elem&)>& f, const DirectionTuple& dirs, const Elem& x)
{
  return nabla_eval(f, dirs.field(), make_stencil(dirs.field(), dirs.dirs()), x);
}

} // namespace kpnlab
