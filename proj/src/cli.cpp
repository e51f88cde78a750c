#include "kpnlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "kpnlab/cases.hpp"
#include "kpnlab/combinatorics.hpp"
#include "kpnlab/exact.hpp"
#include "kpnlab/kpn.hpp"
#include "kpnlab/parallel.hpp"

#ifndef KPNLAB_DEFAULT_GOLDENS
#define KPNLAB_DEFAULT_GOLDENS "data/goldens"
#endif

namespace kpnlab::cli {

using nlohmann::json;

namespace {

struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json big(const BigInt& v)
{
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

Field make_field(u64 p, unsigned ext, unsigned rank = 0)
{
  if (!is_prime_u64(p))
    throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (p == 2)
    throw std::invalid_argument("characteristic 2 is not supported");
  if (ext != 1 && ext != 2 && ext != 4)
    throw std::invalid_argument("unsupported extension degree " + std::to_string(ext) + " (use 1, 2 or 4)");
  if (ext == 4 && p > 65521)
    throw std::invalid_argument("unsupported field GF(" + std::to_string(p) + "^4)");
  return Field::gf(p, ext, rank);
}

void require_sweepable(const Field& f, unsigned k)
{
  const bool ok = f.order() <= kMaxSweepOrder && k >= 1 && k <= 4 && !(f.degree() == 4 && k > 3);
  if (!ok)
    throw std::invalid_argument("unsupported (p, e, k) combination: " + f.name() + ", k = " + std::to_string(k));
}

DirectionTuple parse_dirs(const Field& f, const std::string& text)
{
  try {
    return DirectionTuple::parse(f, text);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("malformed field elements '" + text + "': " + e.what());
  }
}

json witness(const Field& f, const DirectionTuple* dirs, const Elem& x1, const Elem& x2)
{
  json w;
  if (dirs)
    w["dirs"] = dirs->to_string();
  w["field"] = f.name();
  w["x1"] = f.format(x1);
  w["x2"] = f.format(x2);
  return w;
}

struct Run {
  json params = json::object();
  json payload = json::object();
  json witnesses = json::array();
  int code = kTrue;
  std::vector<std::string> messages;
};

// ---- subcommands ---------------------------------------------------------

struct FieldOpts {
  u64 p = 5;
  unsigned ext = 1;
  unsigned rank = 0;
  void add(CLI::App* app)
  {
    app->add_option("--p", p, "characteristic")->required();
    app->add_option("--ext", ext, "extension degree (1, 2, 4)");
    app->add_option("--tower", rank, "tower parameter rank (0 = smallest non-residues)");
  }
  void echo(json& params) const
  {
    params["p"] = p;
    params["ext"] = ext;
    params["tower"] = rank;
  }
};

void cmd_classify(Run& r, const FieldOpts& fo, unsigned k, bool coprime, bool frob, bool no_sub, unsigned jobs)
{
  fo.echo(r.params);
  r.params["k"] = k;
  r.params["coprime"] = coprime;
  r.params["frobenius"] = frob;
  r.params["subfield_prefilter"] = !no_sub;
  const Field f = make_field(fo.p, fo.ext, fo.rank);
  require_sweepable(f, k);
  ClassifyOptions opt;
  opt.coprime_to_p = coprime;
  opt.frobenius_reduce = frob;
  opt.subfield_prefilter = !no_sub;
  opt.jobs = jobs;
  const ClassifyResult res = classify(f, k, opt);
  r.payload["field"] = f.name();
  r.payload["exponents"] = res.exponents;
  r.payload["candidates"] = res.candidates;
  r.payload["rejected_by_subfield"] = res.rejected_by_subfield;
  r.payload["swept"] = res.swept;
}

void cmd_test(Run& r, const FieldOpts& fo, unsigned k, u64 n, bool full, unsigned jobs, bool replay)
{
  fo.echo(r.params);
  r.params["k"] = k;
  r.params["n"] = n;
  r.params["normalize"] = !full;
  const Field f = make_field(fo.p, fo.ext, fo.rank);
  require_sweepable(f, k);
  if (n < 1 || n >= f.order())
    throw std::invalid_argument("n must lie in [1, q-1]");
  const KpnReport rep = is_kpn(n, k, f, !full, jobs);
  r.payload["field"] = f.name();
  r.payload["verdict"] = rep.verdict;
  r.payload["normalized"] = rep.normalized;
  r.payload["tuples_tested"] = rep.tuples_tested;
  r.payload["tuples_total"] = rep.tuples_total;
  if (!rep.verdict) {
    r.code = kFalsified;
    r.witnesses.push_back(witness(f, &*rep.dirs, rep.perm.x1, rep.perm.x2));
    if (replay && !verify_witness(rep))
      throw std::logic_error("witness replay failed");
    if (replay)
      r.payload["witness_verified"] = true;
  }
}

void cmd_skr(Run& r, unsigned k, unsigned rr)
{
  r.params["k"] = k;
  r.params["r"] = rr;
  if (k < 1 || k > 12 || rr > 40)
    throw std::invalid_argument("S(k,r) needs 1 <= k <= 12, r <= 40");
  const BigInt v = s_direct(k, rr);
  r.payload["value"] = big(v);
  if (auto c = s_closed(k, rr)) {
    r.payload["closed"] = big(*c);
    if (*c != v)
      r.code = kFalsified;
  }
}

void cmd_nonquad(Run& r, u64 p, u64 pmax)
{
  r.params["p"] = p;
  r.params["pmax"] = pmax;
  if (!is_prime_u64(p) || p < 5)
    throw std::invalid_argument("p must be a prime >= 5");
  const NonquadWitness w = nonquad_search(p);
  const Field f2 = Field::gf(p, 2);
  r.payload["t"] = w.t;
  r.payload["k"] = w.k;
  r.payload["m1"] = w.m1;
  r.payload["m2"] = w.m2;
  r.payload["m"] = f2.format(w.m);
  const bool ok = check_nonquad(w);
  r.payload["invariants"] = ok;
  if (!ok)
    r.code = kFalsified;
  if (pmax) {
    json failures = json::array();
    u64 checked = 0;
    for (u64 q = p; q <= pmax; ++q) {
      if (!is_prime_u64(q))
        continue;
      ++checked;
      if (!check_nonquad(nonquad_search(q)))
        failures.push_back(q);
    }
    r.payload["range_checked"] = checked;
    r.payload["range_failures"] = failures;
    if (!failures.empty())
      r.code = kFalsified;
  }
}

void cmd_lucas(Run& r, u64 alpha, u64 beta, u64 p)
{
  r.params["alpha"] = alpha;
  r.params["beta"] = beta;
  r.params["p"] = p;
  if (!is_prime_u64(p))
    throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (alpha > 100000)
    throw std::invalid_argument("alpha is limited to 100000");
  const u64 lucas = lucas_binomial(alpha, beta, p);
  const u64 direct = mod_p(binomial(alpha, beta), p);
  r.payload["value"] = lucas;
  r.payload["direct"] = direct;
  if (lucas != direct)
    r.code = kFalsified;
}

const CaseBank& bank()
{
  static const CaseBank b = load_bank(default_bank_path());
  return b;
}

std::string bank_checksum_or_empty()
{
  try {
    return bank().checksum;
  } catch (const std::exception&) {
    return "";
  }
}

void check_report_checksum(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot read report " + path);
  json rep;
  try {
    in >> rep;
  } catch (const json::exception&) {
    throw std::invalid_argument("report " + path + " is not JSON");
  }
  const std::string recorded = rep.value("bank_checksum", "");
  if (recorded != bank().checksum)
    throw std::invalid_argument("case bank checksum " + bank().checksum + " does not match report (" + recorded + ")");
}

void cmd_coeff(Run& r, const std::string& id, u64 p, i64 t, std::optional<i64> b, i64 a, bool list,
               const std::string& report, unsigned k, u64 da, u64 db)
{
  if (!report.empty())
    check_report_checksum(report);
  if (list) {
    r.params["list"] = true;
    json cases = json::array();
    for (const auto& c : bank().cases) {
      json ts = json::array();
      for (const auto& f : c.formulas)
        ts.push_back(f.t);
      cases.push_back({{"id", c.id}, {"anchor", c.anchor}, {"t", ts}, {"dirs", c.dirs}, {"norm", c.norm_degree}});
    }
    r.payload["cases"] = cases;
    return;
  }
  if (id.empty())
    throw std::invalid_argument("coeff needs --case (or --list)");
  r.params["case"] = id;
  r.params["p"] = p;
  if (id == "diagonal") {
    r.params["k"] = k;
    r.params["a"] = da;
    r.params["b"] = db;
    if (!is_prime_u64(p))
      throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    const DiagonalCheck c = verify_diagonal_identity(p, k, da, db);
    r.payload["numeric"] = c.numeric;
    r.payload["formula"] = c.formula;
    r.payload["holds"] = c.holds;
    r.payload["nonzero"] = c.nonzero;
    if (!c.ok())
      r.code = kFalsified;
    return;
  }
  const CoeffCase& c = bank().find(id);
  r.params["t"] = t;
  if (!c.has_t(t))
    throw std::invalid_argument("case " + id + " has no formula for t = " + std::to_string(t));
  if (!is_prime_u64(p))
    throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (b) {
    r.params["b"] = *b;
    r.params["a"] = a;
    r.payload["value"] = coeff_formula(c, t, *b, p, a);
    const Rational exact = coeff_formula_exact(c, t, *b, a);
    std::ostringstream os;
    os << exact;
    r.payload["exact"] = os.str();
    return;
  }
  const CoeffCheck chk = verify_coeff_numeric(c, p, t);
  json rows = json::array();
  for (const auto& row : chk.rows) {
    json jr{{"a", row.a}, {"b", row.b}, {"n", row.n}, {"numeric", row.numeric}, {"formula", row.formula}, {"match", row.match}};
    if (row.permutation)
      jr["permutation"] = *row.permutation;
    rows.push_back(jr);
  }
  r.payload["rows"] = rows;
  r.payload["ok"] = chk.ok;
  if (!chk.ok)
    r.code = kFalsified;
}

void cmd_exceptional(Run& r, const std::string& id, const std::string& fs, const std::string& gs)
{
  ZPoly f, g;
  std::string var = "x";
  if (!id.empty()) {
    r.params["case"] = id;
    const CoeffCase& c = bank().find(id);
    const FormulaFactor* c1 = c.has_t(1) ? c.formula(1).core() : nullptr;
    const FormulaFactor* c2 = c.has_t(2) ? c.formula(2).core() : nullptr;
    if (!c1 || !c2)
      throw std::invalid_argument("case " + id + " has no core pair for t = 1, 2");
    f = c1->poly;
    g = c2->poly;
    var = "b";
  } else {
    if (fs.empty() || gs.empty())
      throw std::invalid_argument("exceptional needs --case or both --f and --g");
    r.params["f"] = fs;
    r.params["g"] = gs;
    f = parse_zpoly(fs);
    g = parse_zpoly(gs);
  }
  r.payload["f"] = to_string(f, var);
  r.payload["g"] = to_string(g, var);
  const Rational res = resultant(f, g);
  const BigInt num = boost::multiprecision::numerator(res);
  r.payload["resultant"] = factor_integer(num).to_string();
  // Every prime dividing the resultant or a leading coefficient is listed;
  // `exceptional` keeps those >= 5 where the reductions share a factor.
  json primes = json::array();
  json exceptional = json::array();
  for (const auto& e : exceptional_primes(f, g)) {
    const bool common = !e.gcd || e.gcd->degree() >= 1;
    json jp{{"prime", big(e.prime)}, {"irreducible", e.irreducible}, {"roots", e.roots}, {"common_factor", common}};
    jp["gcd"] = e.gcd ? json(to_string(*e.gcd, var)) : json(nullptr);
    primes.push_back(jp);
    if (common && e.prime >= 5)
      exceptional.push_back(big(e.prime));
  }
  r.payload["primes"] = primes;
  r.payload["exceptional"] = exceptional;
}

void cmd_weil(Run& r, u64 p, bool fermat)
{
  r.params["p"] = p;
  r.params["fermat"] = fermat;
  if (!is_prime_u64(p))
    throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (fermat) {
    if (p < 5 || p > 1000)
      throw std::invalid_argument("fermat check needs 5 <= p <= 1000");
    r.payload["solvable"] = fermat_like_has_solution(p);
    return;
  }
  const WeilCount w = count_fermat_projective(p);
  r.payload["points"] = w.points;
  r.payload["points_nonzero"] = w.points_nonzero;
  r.payload["zero_locus"] = w.zero_locus;
  r.payload["bound"] = w.bound;
  const bool holds = w.points >= w.bound && w.points_nonzero > 0;
  r.payload["holds"] = holds;
  if (!holds)
    r.code = kFalsified;
}

void cmd_collide(Run& r, const FieldOpts& fo, u64 n, const std::string& dirs_text, const std::string& strategy,
                 u64 budget, u64 seed, unsigned table_bits, bool replay)
{
  fo.echo(r.params);
  r.params["n"] = n;
  r.params["dirs"] = dirs_text;
  r.params["strategy"] = strategy;
  r.params["budget"] = budget;
  r.params["seed"] = seed;
  r.params["table_bits"] = table_bits;
  const Field f = make_field(fo.p, fo.ext, fo.rank);
  const DirectionTuple dirs = parse_dirs(f, dirs_text);
  CollisionOptions opt;
  if (strategy == "exhaustive")
    opt.strategy = CollisionStrategy::exhaustive;
  else if (strategy == "birthday")
    opt.strategy = CollisionStrategy::birthday;
  else
    throw std::invalid_argument("unknown strategy '" + strategy + "'");
  if (table_bits < 4 || table_bits > 30)
    throw std::invalid_argument("table bits must lie in [4, 30]");
  opt.budget = budget;
  opt.seed = seed;
  opt.table_bits = table_bits;
  const FieldFn h = monomial_difference(n, dirs);
  const CollisionResult c = find_collision(h, f, opt);
  r.payload["field"] = f.name();
  r.payload["found"] = c.found;
  r.payload["probes"] = c.probes;
  if (c.found) {
    r.code = kFalsified;
    r.witnesses.push_back(witness(f, &dirs, c.x1, c.x2));
    if (replay) {
      if (c.x1 == c.x2 || h(c.x1) != h(c.x2))
        throw std::logic_error("witness replay failed");
      r.payload["witness_verified"] = true;
    }
  }
}

void cmd_counterexample(Run& r, u64 p, const std::string& construction, bool replay)
{
  r.params["p"] = p;
  r.params["construction"] = construction;
  if (!is_prime_u64(p) || p < 5)
    throw std::invalid_argument("p must be a prime >= 5");
  if (construction == "1pp2") {
    const Counterexample c = counterexample_1pp2(p);
    const Field f2 = Field::gf(p, 2);
    r.payload["field"] = c.field.name();
    r.payload["n"] = 1 + p + p * p;
    r.payload["m"] = f2.format(c.lemma.m);
    r.payload["x1"] = f2.format(c.x1);
    r.payload["norm_condition"] = c.norm_condition;
    r.payload["verified"] = c.verified;
    const DirectionTuple dirs(c.field, {c.field.one(), c.v});
    r.witnesses.push_back(witness(c.field, &dirs, c.x, c.x_prime));
    if (replay) {
      const FieldFn h = monomial_difference(1 + p + p * p, dirs);
      if (c.x == c.x_prime || h(c.x) != h(c.x_prime))
        throw std::logic_error("witness replay failed");
    }
    if (!c.verified || !c.norm_condition)
      r.code = kFalsified;
  } else if (construction == "three") {
    const ThreeDirectionChecks t = three_direction_checks(p);
    const Field f = Field::gf(p, 4);
    r.payload["field"] = f.name();
    r.payload["w"] = f.format(t.w);
    r.payload["w_condition"] = t.w_condition;
    r.payload["pattern_permutation"] = t.pattern.verdict;
    r.payload["closed_form"] = t.closed_form;
    r.payload["cube_permutation"] = t.cube.verdict;
    if (t.w_condition) {
      const DirectionTuple d(f, {f.one(), t.w, t.w});
      r.witnesses.push_back(witness(f, &d, t.pattern.x1, t.pattern.x2));
    }
    const DirectionTuple ones(f, {f.one(), f.one(), f.one()});
    r.witnesses.push_back(witness(f, &ones, t.cube.x1, t.cube.x2));
    if (!(t.w_condition && !t.pattern.verdict && t.closed_form && !t.cube.verdict))
      r.code = kFalsified;
  } else {
    throw std::invalid_argument("unknown construction '" + construction + "' (use 1pp2 or three)");
  }
}

std::string golden_text(const Outcome& o)
{
  json g{{"exit", o.code}, {"report", canonical(o.report)}};
  return g.dump(2) + "\n";
}

void cmd_goldens(Run& r, const std::string& mode, const std::string& dir)
{
  r.params["mode"] = mode;
  r.params["dir"] = dir;
  namespace fs = std::filesystem;
  if (mode == "record")
    fs::create_directories(dir);
  else if (!fs::is_directory(dir))
    throw std::invalid_argument("golden directory " + dir + " does not exist");
  json mismatches = json::array();
  for (const auto& e : golden_suite()) {
    const std::string text = golden_text(execute(e.args));
    const fs::path path = fs::path(dir) / (e.name + ".json");
    if (mode == "record") {
      std::ofstream(path, std::ios::binary) << text;
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    if (in)
      ss << in.rdbuf();
    if (!in || ss.str() != text) {
      mismatches.push_back(e.name);
      r.messages.push_back("golden mismatch: " + e.name + (in ? "" : " (missing)"));
    }
  }
  r.payload["entries"] = golden_suite().size();
  r.payload["mismatches"] = mismatches;
  if (!mismatches.empty())
    r.code = kFalsified;
}

const char* const kSubcommands[] = {"classify", "test", "lemma", "coeff", "exceptional",
                                    "weil", "collide", "counterexample", "goldens"};

} // namespace

json canonical(const json& report)
{
  json c = report;
  c.erase("duration_ms");
  c.erase("jobs");
  if (c.contains("witnesses") && c["witnesses"].is_array()) {
    std::vector<json> w(c["witnesses"].begin(), c["witnesses"].end());
    std::sort(w.begin(), w.end(), [](const json& a, const json& b) { return a.dump() < b.dump(); });
    c["witnesses"] = w;
  }
  return c;
}

std::string default_golden_dir()
{
  if (const char* env = std::getenv("KPNLAB_GOLDENS"); env && *env)
    return env;
  return KPNLAB_DEFAULT_GOLDENS;
}

Outcome execute(const std::vector<std::string>& args)
{
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      std::find(std::begin(kSubcommands), std::end(kSubcommands), args[0]) == std::end(kSubcommands))
    throw std::invalid_argument("unknown subcommand '" + args[0] + "'");

  CLI::App app{"kpnlab: k-th order differences of monomials over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  unsigned jobs = default_jobs();
  std::string out_path;
  bool replay = false;
  app.add_option("--jobs", jobs, "worker threads (default KPNLAB_JOBS or 1)")->check(CLI::Range(1u, 256u));
  app.add_option("--out", out_path, "also write the report to this file");
  app.add_flag("--verify-witness", replay, "replay every witness through the library");

  FieldOpts fo;
  unsigned k = 2;
  u64 n = 1;
  bool coprime = false, frob = false, no_sub = false, full = false;

  auto* classify_cmd = app.add_subcommand("classify", "all n with x^n k-PN over GF(p^e)");
  classify_cmd->fallthrough();
  fo.add(classify_cmd);
  classify_cmd->add_option("--k", k)->required();
  classify_cmd->add_flag("--coprime", coprime, "only n prime to p");
  classify_cmd->add_flag("--frobenius", frob, "decide one exponent per Frobenius class");
  classify_cmd->add_flag("--no-subfield", no_sub, "skip the subfield pre-filter");

  auto* test_cmd = app.add_subcommand("test", "whether x^n is k-PN over GF(p^e)");
  test_cmd->fallthrough();
  FieldOpts fo_test;
  fo_test.add(test_cmd);
  test_cmd->add_option("--k", k)->required();
  test_cmd->add_option("--n", n)->required();
  test_cmd->add_flag("--full", full, "sweep every direction tuple");

  auto* lemma_cmd = app.add_subcommand("lemma", "auxiliary identities");
  lemma_cmd->fallthrough();
  lemma_cmd->require_subcommand(1);
  unsigned sk = 2, sr = 4;
  auto* skr = lemma_cmd->add_subcommand("skr", "S(k,r) by direct summation");
  skr->fallthrough();
  skr->add_option("--k", sk)->required();
  skr->add_option("--r", sr)->required();
  u64 np = 5, npmax = 0;
  auto* nonquad = lemma_cmd->add_subcommand("nonquad", "non-square witness m in GF(p^2)");
  nonquad->fallthrough();
  nonquad->add_option("--p", np)->required();
  nonquad->add_option("--pmax", npmax, "also check every prime up to pmax");
  u64 la = 0, lb = 0, lp = 5;
  auto* lucas = lemma_cmd->add_subcommand("lucas", "binom(alpha, beta) mod p digitwise");
  lucas->fallthrough();
  lucas->add_option("--alpha", la)->required();
  lucas->add_option("--beta", lb)->required();
  lucas->add_option("--p", lp)->required();

  auto* coeff_cmd = app.add_subcommand("coeff", "top-coefficient formulas");
  coeff_cmd->fallthrough();
  std::string case_id, report_path;
  u64 cp = 5, da = 0, db = 0;
  i64 ct = 1, ca = 0;
  std::optional<i64> cb;
  unsigned ck = 2;
  bool list = false;
  coeff_cmd->add_option("--case", case_id, "bank case id, or 'diagonal'");
  coeff_cmd->add_option("--p", cp);
  coeff_cmd->add_option("--t", ct);
  coeff_cmd->add_option("--b", cb, "evaluate the formula at b instead of verifying");
  coeff_cmd->add_option("--a", ca, "second family variable for --b");
  coeff_cmd->add_option("--k", ck, "diagonal: number of directions");
  coeff_cmd->add_option("--digit-a", da, "diagonal: low digit");
  coeff_cmd->add_option("--digit-b", db, "diagonal: high digit");
  coeff_cmd->add_flag("--list", list);
  coeff_cmd->add_option("--report", report_path, "refuse to run unless the bank matches this report");

  auto* exc_cmd = app.add_subcommand("exceptional", "primes where two integer polynomials share a factor");
  exc_cmd->fallthrough();
  std::string ef, eg, ecase;
  exc_cmd->add_option("--case", ecase);
  exc_cmd->add_option("--f", ef);
  exc_cmd->add_option("--g", eg);

  auto* weil_cmd = app.add_subcommand("weil", "points of y^(p-1)+z^(p-1)+w^(p-1) = 0 over GF(p^4)");
  weil_cmd->fallthrough();
  u64 wp = 5;
  bool fermat = false;
  weil_cmd->add_option("--p", wp)->required();
  weil_cmd->add_flag("--fermat", fermat, "solvability of u^(p-1)+y^(p-1)+1 = 0 in GF(p^2)* instead");

  auto* col_cmd = app.add_subcommand("collide", "collision search for nabla x^n");
  col_cmd->fallthrough();
  FieldOpts fo_col;
  fo_col.add(col_cmd);
  u64 cn = 1, budget = 1000000, seed = CollisionOptions{}.seed;
  std::string dirs_text, strategy = "exhaustive";
  unsigned table_bits = 22;
  col_cmd->add_option("--n", cn)->required();
  col_cmd->add_option("--dirs", dirs_text, "directions, e.g. \"1;1;2\"")->required();
  col_cmd->add_option("--strategy", strategy, "exhaustive | birthday");
  col_cmd->add_option("--budget", budget);
  col_cmd->add_option("--seed", seed);
  col_cmd->add_option("--table-bits", table_bits);

  auto* cx_cmd = app.add_subcommand("counterexample", "explicit non-injectivity witnesses");
  cx_cmd->fallthrough();
  u64 xp = 5;
  std::string construction = "1pp2";
  cx_cmd->add_option("--p", xp)->required();
  cx_cmd->add_option("--construction", construction, "1pp2 | three");

  auto* gold_cmd = app.add_subcommand("goldens", "record or check the golden reports");
  gold_cmd->fallthrough();
  gold_cmd->require_subcommand(1);
  std::string gdir = default_golden_dir();
  gold_cmd->add_option("--dir", gdir);
  auto* g_record = gold_cmd->add_subcommand("record");
  auto* g_check = gold_cmd->add_subcommand("check");
  g_record->fallthrough();
  g_check->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested(std::string(kVersion) + "\n");
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }

  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  std::string command;
  if (*classify_cmd) {
    command = "classify";
    cmd_classify(r, fo, k, coprime, frob, no_sub, jobs);
  } else if (*test_cmd) {
    command = "test";
    cmd_test(r, fo_test, k, n, full, jobs, replay);
  } else if (*lemma_cmd) {
    if (*skr) {
      command = "lemma skr";
      cmd_skr(r, sk, sr);
    } else if (*nonquad) {
      command = "lemma nonquad";
      cmd_nonquad(r, np, npmax);
    } else {
      command = "lemma lucas";
      cmd_lucas(r, la, lb, lp);
    }
  } else if (*coeff_cmd) {
    command = "coeff";
    cmd_coeff(r, case_id, cp, ct, cb, ca, list, report_path, ck, da, db);
  } else if (*exc_cmd) {
    command = "exceptional";
    cmd_exceptional(r, ecase, ef, eg);
  } else if (*weil_cmd) {
    command = "weil";
    cmd_weil(r, wp, fermat);
  } else if (*col_cmd) {
    command = "collide";
    cmd_collide(r, fo_col, cn, dirs_text, strategy, budget, seed, table_bits, replay);
  } else if (*cx_cmd) {
    command = "counterexample";
    cmd_counterexample(r, xp, construction, replay);
  } else {
    command = *g_record ? "goldens record" : "goldens check";
    cmd_goldens(r, *g_record ? "record" : "check", gdir);
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  Outcome o;
  o.code = r.code;
  o.messages = std::move(r.messages);
  o.report = json{{"version", kVersion},
                  {"bank_checksum", bank_checksum_or_empty()},
                  {"command", command},
                  {"params", r.params},
                  {"payload", r.payload},
                  {"witnesses", r.witnesses},
                  {"duration_ms", static_cast<long long>(ms)},
                  {"jobs", jobs}};
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
      throw std::invalid_argument("cannot write " + out_path);
    f << o.report.dump(2) << "\n";
  }
  return o;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  try {
    Outcome o = execute(args);
    out << o.report.dump(2) << "\n";
    for (const auto& m : o.messages)
      err << m << "\n";
    return o.code;
  } catch (const HelpRequested& h) {
    out << h.what();
    return kTrue;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
  }
  return kUsage;
}

const std::vector<GoldenEntry>& golden_suite()
{
  static const std::vector<GoldenEntry> suite = [] {
    std::vector<GoldenEntry> s = {
        {"lemma-skr-2-6", {"lemma", "skr", "--k", "2", "--r", "6"}},
        {"lemma-skr-3-8", {"lemma", "skr", "--k", "3", "--r", "8"}},
        {"lemma-skr-4-9", {"lemma", "skr", "--k", "4", "--r", "9"}},
        {"lemma-lucas", {"lemma", "lucas", "--alpha", "1000", "--beta", "37", "--p", "7"}},
        {"lemma-nonquad", {"lemma", "nonquad", "--p", "5", "--pmax", "499"}},
        {"classify-gf25-k2", {"classify", "--p", "5", "--ext", "2", "--k", "2"}},
        {"classify-gf49-k2", {"classify", "--p", "7", "--ext", "2", "--k", "2"}},
        {"classify-gf25-k3", {"classify", "--p", "5", "--ext", "2", "--k", "3"}},
        {"classify-gf49-k3", {"classify", "--p", "7", "--ext", "2", "--k", "3"}},
        {"classify-gf625-k2", {"classify", "--p", "5", "--ext", "4", "--k", "2", "--coprime", "--frobenius"}},
        {"classify-gf625-k3", {"classify", "--p", "5", "--ext", "4", "--k", "3", "--coprime"}},
        {"test-gf625-k2-n7", {"test", "--p", "5", "--ext", "4", "--k", "2", "--n", "7"}},
        {"test-gf625-k2-n31", {"test", "--p", "5", "--ext", "4", "--k", "2", "--n", "31"}},
        {"test-gf625-k2-n3", {"test", "--p", "5", "--ext", "4", "--k", "2", "--n", "3"}},
        {"coeff-diagonal-7", {"coeff", "--case", "diagonal", "--p", "7", "--k", "2", "--digit-a", "4", "--digit-b", "5"}},
        {"coeff-spot-a1", {"coeff", "--case", "k2-full-a1", "--p", "7", "--t", "2", "--b", "2"}},
        {"exceptional-k2-full-a1", {"exceptional", "--case", "k2-full-a1"}},
        {"exceptional-k2-full-a2", {"exceptional", "--case", "k2-full-a2"}},
        {"exceptional-k2-full-a1c1", {"exceptional", "--case", "k2-full-a1c1"}},
        {"exceptional-k3-full-a3", {"exceptional", "--case", "k3-full-a3"}},
        {"exceptional-k3-full-a2c1", {"exceptional", "--case", "k3-full-a2c1"}},
        {"weil-5", {"weil", "--p", "5"}},
        {"fermat-5", {"weil", "--p", "5", "--fermat"}},
        {"fermat-7", {"weil", "--p", "7", "--fermat"}},
        {"collide-17", {"collide", "--p", "17", "--ext", "4", "--n", std::to_string(3 + 5 * 17 + 12 * 17 * 17 * 17),
                        "--dirs", "1;1;1"}},
        {"counterexample-5", {"counterexample", "--p", "5"}},
        {"counterexample-13", {"counterexample", "--p", "13"}},
        {"counterexample-three-5", {"counterexample", "--p", "5", "--construction", "three"}},
    };
    for (const char* id : {"k2-full-a0", "k2-full-a1", "k2-full-a2", "k2-full-a1c1", "k3-full-a3", "k3-full-a2c1",
                           "k2-half-ac1", "k2-half-ac0", "k3-half-ac1"})
      for (const char* t : {"1", "2"})
        if (bank().find(id).has_t(std::stoll(t)))
          s.push_back({std::string("coeff-") + id + "-t" + t + "-p5", {"coeff", "--case", id, "--p", "5", "--t", t}});
    return s;
  }();
  return suite;
}

} // namespace kpnlab::cli
