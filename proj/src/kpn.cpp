#include "kpnlab/kpn.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "kpnlab/parallel.hpp"

namespace kpnlab {

PermReport is_permutation(const FieldFn& h, const Field& F)
{
  const u64 q = F.order();
  if (q > (u64{1} << 26))
    throw std::invalid_argument("is_permutation: field too large for a full tally; use find_collision");
  constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> first(q, unseen);
  PermReport r;
  for (u64 i = 0; i < q; ++i) {
    Elem x = F.element(i);
    Elem y = h(x);
    if (!F.contains(y))
      throw std::invalid_argument("is_permutation: image outside " + F.name());
    u64 v = F.index(y);
    if (first[v] != unseen) {
      r.verdict = false;
      r.kind = PermWitness::collision;
      r.x1 = F.element(first[v]);
      r.x2 = x;
      return r;
    }
    first[v] = static_cast<std::uint32_t>(i);
  }
  return r;
}

PermReport hermite_dickson(const Poly& f)
{
  const Field& F = f.field();
  const u64 q = F.order();
  const u64 p = F.characteristic();
  if (f.degree() >= static_cast<std::ptrdiff_t>(q))
    throw std::invalid_argument("hermite_dickson: degree must be below q");
  PermReport r;
  u64 roots = 0;
  for (u64 i = 0; i < q; ++i)
    if (F.is_zero(eval(f, F.element(i))))
      ++roots;
  if (roots != 1) {
    r.verdict = false;
    r.kind = PermWitness::root_count;
    r.roots = roots;
    return r;
  }
  Poly power = f;
  for (u64 t = 1; t + 2 <= q; ++t) {
    if (t > 1)
      power = reduce_mod_field(power * f);
    if (t % p == 0)
      continue;
    if (power.degree() == static_cast<std::ptrdiff_t>(q - 1)) {
      r.verdict = false;
      r.kind = PermWitness::hermite_dickson;
      r.t = t;
      r.coeff = power.lead();
      return r;
    }
  }
  return r;
}

u64 frobenius_shift(u64 n, const Field& F)
{
  const u64 q = F.order();
  u64 m = static_cast<u64>(static_cast<unsigned __int128>(n) * F.characteristic() % (q - 1));
  return m == 0 ? q - 1 : m;
}

namespace {

using u16 = std::uint16_t;

struct Tables {
  u64 q = 0;
  u16 one = 1;
  std::vector<u16> add; // q*q
  std::vector<u16> neg;
  std::vector<u16> order; // nonzero elements, fixed pseudorandom order
  std::vector<u16> exp;   // generator powers, length q-1
  std::vector<u16> log;   // log[0] unused
};

constexpr u64 kShuffleSeed = 0x4b504e2d7377ULL;

std::shared_ptr<const Tables> build_tables(const Field& F)
{
  const u64 q = F.order();
  auto t = std::make_shared<Tables>();
  t->q = q;
  t->one = static_cast<u16>(F.index(F.one()));
  t->add.resize(q * q);
  t->neg.resize(q);
  std::vector<Elem> els = F.enumerate();
  for (u64 i = 0; i < q; ++i) {
    t->neg[i] = static_cast<u16>(F.index(F.neg(els[i])));
    for (u64 j = 0; j < q; ++j)
      t->add[i * q + j] = static_cast<u16>(F.index(F.add(els[i], els[j])));
  }
  for (u64 i = 1; i < q; ++i)
    t->order.push_back(static_cast<u16>(i));
  // Fisher-Yates with an explicit modulus so the order does not depend on
  // the standard library's distributions.
  std::mt19937_64 rng(kShuffleSeed);
  for (std::size_t i = t->order.size(); i > 1; --i)
    std::swap(t->order[i - 1], t->order[rng() % i]);

  std::vector<u64> prime_divisors;
  u64 m = q - 1;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      prime_divisors.push_back(d);
      while (m % d == 0)
        m /= d;
    }
  }
  if (m > 1)
    prime_divisors.push_back(m);
  Elem g{};
  for (u64 i = 1; i < q; ++i) {
    g = els[i];
    bool primitive = std::all_of(prime_divisors.begin(), prime_divisors.end(),
                                 [&](u64 r) { return F.pow(g, (q - 1) / r) != F.one(); });
    if (primitive)
      break;
  }
  t->exp.resize(q - 1);
  t->log.resize(q);
  Elem c = F.one();
  for (u64 i = 0; i + 1 < q; ++i) {
    u16 idx = static_cast<u16>(F.index(c));
    t->exp[i] = idx;
    t->log[idx] = static_cast<u16>(i);
    c = F.mul(c, g);
  }
  return t;
}

std::shared_ptr<const Tables> tables_for(const Field& F)
{
  if (F.order() > kMaxSweepOrder)
    throw std::invalid_argument("sweep: " + F.name() + " exceeds the table limit of " + std::to_string(kMaxSweepOrder) + " elements");
  using Key = std::tuple<u64, unsigned, u64, Elem>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const Tables>> cache;
  Key key{F.characteristic(), F.degree(), F.tower_t(), F.tower_m()};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  auto t = build_tables(F);
  cache.emplace(key, t);
  return t;
}

std::vector<u16> power_table(const Tables& T, u64 n)
{
  std::vector<u16> pw(T.q);
  pw[0] = n == 0 ? T.one : 0;
  const u64 order = T.q - 1;
  const u64 e = n % order;
  for (u64 x = 1; x < T.q; ++x)
    pw[x] = T.exp[static_cast<u64>(T.log[x]) * e % order];
  return pw;
}

struct Failure {
  std::vector<u16> tuple;
  u16 x1 = 0, x2 = 0;
};

class Sweeper {
 public:
  Sweeper(const Tables& T, const std::vector<u16>& power, unsigned k, bool normalize)
      : T_(T), k_(k), normalize_(normalize), G_(k + 1, std::vector<u16>(T.q)), stamp_(T.q, 0), seen_at_(T.q, 0),
        tuple_(k, 0)
  {
    G_[0] = power;
  }

  /// Level at which work is split between workers.
  unsigned outer_level() const { return normalize_ ? std::min(2u, k_) : 1; }
  std::size_t outer_count() const { return candidates_size(outer_level()); }

  /// Sweeps every tuple whose outer-level entry is the o-th candidate.
  /// Returns true on failure (recorded in failure()).
  bool run_outer(std::size_t o)
  {
    tested_ = 0;
    const unsigned L = outer_level();
    if (normalize_ && L == 2)
      set_level(1, T_.one);
    u16 a = candidate(L, o);
    if (L == k_)
      return final_check(a);
    set_level(L, a);
    return descend(L + 1);
  }

  u64 tested() const { return tested_; }
  const Failure& failure() const { return failure_; }

 private:
  std::size_t candidates_size(unsigned level) const
  {
    return normalize_ && level == 1 ? 1 : T_.order.size();
  }
  u16 candidate(unsigned level, std::size_t i) const
  {
    return normalize_ && level == 1 ? T_.one : T_.order[i];
  }
  bool admissible(unsigned level, u16 a) const
  {
    return !(normalize_ && level >= 3 && a < tuple_[level - 2]);
  }

  void set_level(unsigned level, u16 a)
  {
    tuple_[level - 1] = a;
    const auto& prev = G_[level - 1];
    auto& cur = G_[level];
    const u64 q = T_.q;
    for (u64 x = 0; x < q; ++x) {
      u16 shifted = T_.add[x * q + a];
      cur[x] = T_.add[static_cast<u64>(prev[shifted]) * q + T_.neg[prev[x]]];
    }
  }

  bool final_check(u16 a)
  {
    tuple_[k_ - 1] = a;
    ++tested_;
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    const auto& prev = G_[k_ - 1];
    const u64 q = T_.q;
    for (u64 x = 0; x < q; ++x) {
      u16 v = T_.add[static_cast<u64>(prev[T_.add[x * q + a]]) * q + T_.neg[prev[x]]];
      if (stamp_[v] == epoch_) {
        failure_.tuple = tuple_;
        failure_.x1 = seen_at_[v];
        failure_.x2 = static_cast<u16>(x);
        return true;
      }
      stamp_[v] = epoch_;
      seen_at_[v] = static_cast<u16>(x);
    }
    return false;
  }

  bool descend(unsigned level)
  {
    const std::size_t n = candidates_size(level);
    for (std::size_t i = 0; i < n; ++i) {
      u16 a = candidate(level, i);
      if (!admissible(level, a))
        continue;
      if (level == k_) {
        if (final_check(a))
          return true;
      } else {
        set_level(level, a);
        if (descend(level + 1))
          return true;
      }
    }
    return false;
  }

  const Tables& T_;
  unsigned k_;
  bool normalize_;
  std::vector<std::vector<u16>> G_;
  std::vector<std::uint32_t> stamp_;
  std::vector<u16> seen_at_;
  std::uint32_t epoch_ = 0;
  std::vector<u16> tuple_;
  u64 tested_ = 0;
  Failure failure_;
};

u64 binom_u64(u64 n, u64 k)
{
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

KpnReport sweep(const Field& F, const Tables& T, u64 n, unsigned k, bool normalize, unsigned jobs)
{
  KpnReport rep(F);
  rep.n = n;
  rep.k = k;
  rep.normalized = normalize;
  const u64 nz = F.order() - 1;
  rep.tuples_total = 1;
  if (normalize)
    rep.tuples_total = k == 1 ? 1 : binom_u64(nz + k - 2, k - 1);
  else
    for (unsigned i = 0; i < k; ++i)
      rep.tuples_total *= nz;

  const std::vector<u16> power = power_table(T, n);
  Sweeper probe(T, power, k, normalize);
  const std::size_t outer = probe.outer_count();
  std::vector<u64> tested(outer, 0);
  std::vector<Failure> failures(outer);
  std::atomic<std::size_t> best{outer};

  auto work = [&](Sweeper& s, std::size_t o) {
    if (o > best.load())
      return;
    if (s.run_outer(o)) {
      failures[o] = s.failure();
      std::size_t cur = best.load();
      while (o < cur && !best.compare_exchange_weak(cur, o)) {
      }
    }
    tested[o] = s.tested();
  };

  if (jobs <= 1 || outer < 2) {
    for (std::size_t o = 0; o < outer && o <= best.load(); ++o)
      work(probe, o);
  } else {
    std::vector<std::unique_ptr<Sweeper>> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, outer));
    for (unsigned w = 0; w < workers; ++w)
      pool.push_back(std::make_unique<Sweeper>(T, power, k, normalize));
    parallel_for(workers, workers, [&](std::size_t w) {
      for (std::size_t o = w; o < outer; o += workers) {
        if (o > best.load())
          break;
        work(*pool[w], o);
      }
    });
  }

  const std::size_t b = best.load();
  const std::size_t end = std::min(b + 1, outer);
  for (std::size_t o = 0; o < end; ++o)
    rep.tuples_tested += tested[o];
  if (b < outer) {
    rep.verdict = false;
    std::vector<Elem> dirs;
    for (u16 a : failures[b].tuple)
      dirs.push_back(F.element(a));
    rep.dirs.emplace(F, std::move(dirs));
    rep.perm.verdict = false;
    rep.perm.kind = PermWitness::collision;
    rep.perm.x1 = F.element(failures[b].x1);
    rep.perm.x2 = F.element(failures[b].x2);
  }
  return rep;
}

void check_sweep_args(u64 n, unsigned k, const Field& F)
{
  if (n < 1 || n >= F.order())
    throw std::invalid_argument("exponent must lie in [1, q-1] = [1, " + std::to_string(F.order() - 1) + "]");
  if (k < 1 || k > 4)
    throw std::invalid_argument("k must lie in [1, 4]");
}

} // namespace

KpnReport is_kpn(u64 n, unsigned k, const Field& F, bool normalize, unsigned jobs)
{
  check_sweep_args(n, k, F);
  auto T = tables_for(F);
  return sweep(F, *T, n, k, normalize, jobs);
}

FieldFn monomial_difference(u64 n, const DirectionTuple& dirs)
{
  const Field F = dirs.field();
  Stencil st = make_stencil(F, dirs.dirs());
  return [F, st, n](const Elem& x) {
    return nabla_eval([&](const Elem& y) { return F.pow(y, n); }, F, st, x);
  };
}

bool verify_witness(const KpnReport& r)
{
  if (r.verdict || !r.dirs || r.perm.kind != PermWitness::collision)
    return false;
  const Field& F = r.field;
  if (r.perm.x1 == r.perm.x2 || !F.contains(r.perm.x1) || !F.contains(r.perm.x2))
    return false;
  if (!(r.dirs->field() == F) || r.dirs->size() != r.k)
    return false;
  FieldFn h = monomial_difference(r.n, *r.dirs);
  return h(r.perm.x1) == h(r.perm.x2);
}

bool subfield_filter(u64 n, unsigned k, const Field& F, const Field& sub)
{
  if (!sub.is_subfield_of(F))
    throw std::invalid_argument("subfield_filter: " + sub.name() + " is not a subfield of " + F.name());
  return is_kpn(fold_exponent(n, sub.order()), k, sub).verdict;
}

ClassifyResult classify(const Field& F, unsigned k, const ClassifyOptions& opt)
{
  if (k < 1 || k > 4 || (F.degree() == 4 && k > 3))
    throw std::invalid_argument("classify: unsupported k = " + std::to_string(k) + " for " + F.name());
  const u64 q = F.order();
  const u64 p = F.characteristic();
  auto T = tables_for(F);

  // Subfield verdicts, indexed by the folded exponent.
  std::vector<std::pair<u64, std::vector<char>>> sub_ok;
  if (opt.subfield_prefilter) {
    for (unsigned d = 1; d < F.degree(); d *= 2) {
      Field sub = F.subfield(d);
      auto TS = tables_for(sub);
      std::vector<char> ok(sub.order(), 0);
      for (u64 m = 1; m < sub.order(); ++m)
        ok[m] = sweep(sub, *TS, m, k, true, 1).verdict;
      sub_ok.emplace_back(sub.order(), std::move(ok));
    }
  }

  auto passes_filters = [&](u64 n) { return !opt.coprime_to_p || n % p != 0; };

  ClassifyResult res;
  std::vector<u64> to_decide;
  std::vector<std::vector<u64>> members;
  std::vector<char> assigned(q, 0);
  for (u64 n = 1; n < q; ++n) {
    if (assigned[n])
      continue;
    std::vector<u64> cls{n};
    assigned[n] = 1;
    if (opt.frobenius_reduce) {
      for (u64 m = frobenius_shift(n, F); m != n; m = frobenius_shift(m, F)) {
        cls.push_back(m);
        assigned[m] = 1;
      }
      std::sort(cls.begin(), cls.end());
    }
    std::vector<u64> kept;
    for (u64 m : cls)
      if (passes_filters(m))
        kept.push_back(m);
    if (kept.empty())
      continue;
    res.candidates += kept.size();
    to_decide.push_back(cls.front());
    members.push_back(std::move(kept));
  }

  std::vector<char> verdict(to_decide.size(), 0);
  std::vector<char> filtered(to_decide.size(), 0);
  parallel_for(to_decide.size(), opt.jobs, [&](std::size_t i) {
    const u64 n = to_decide[i];
    for (const auto& [sq, ok] : sub_ok) {
      if (!ok[fold_exponent(n, sq)]) {
        filtered[i] = 1;
        return;
      }
    }
    verdict[i] = sweep(F, *T, n, k, true, 1).verdict;
  });

  for (std::size_t i = 0; i < to_decide.size(); ++i) {
    if (filtered[i])
      res.rejected_by_subfield += members[i].size();
    else
      ++res.swept;
    if (verdict[i])
      res.exponents.insert(res.exponents.end(), members[i].begin(), members[i].end());
  }
  std::sort(res.exponents.begin(), res.exponents.end());
  return res;
}

namespace {

u64 splitmix(u64 x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

CollisionResult find_collision(const FieldFn& h, const Field& F, const CollisionOptions& opt)
{
  if (opt.budget == 0)
    throw std::invalid_argument("find_collision: budget must be positive");
  const u64 q = F.order();
  CollisionResult res;
  auto accept = [&](u64 i1, u64 i2) {
    Elem a = F.element(i1), b = F.element(i2);
    if (a == b || h(a) != h(b))
      return false;
    res.found = true;
    res.x1 = i1 < i2 ? a : b;
    res.x2 = i1 < i2 ? b : a;
    return true;
  };

  if (opt.strategy == CollisionStrategy::exhaustive) {
    std::unordered_map<u64, u64> seen;
    const u64 limit = std::min(q, opt.budget);
    for (u64 i = 0; i < limit; ++i) {
      ++res.probes;
      u64 v = F.index(h(F.element(i)));
      auto [it, fresh] = seen.emplace(v, i);
      if (!fresh && accept(it->second, i))
        return res;
    }
    return res;
  }

  struct Slot {
    u64 image = 0;
    u64 input = 0;
    bool used = false;
  };
  const std::size_t size = std::size_t{1} << opt.table_bits;
  std::vector<Slot> table(size);
  std::mt19937_64 rng(opt.seed);
  for (u64 probe = 0; probe < opt.budget; ++probe) {
    ++res.probes;
    u64 i = rng() % q;
    u64 v = F.index(h(F.element(i)));
    Slot& s = table[splitmix(v) & (size - 1)];
    if (s.used && s.image == v && s.input != i && accept(s.input, i))
      return res;
    s = {v, i, true};
  }
  return res;
}

} // namespace kpnlab
