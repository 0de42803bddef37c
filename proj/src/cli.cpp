#include "fszlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "fszlab/centralizer.hpp"
#include "fszlab/error.hpp"
#include "fszlab/fsz.hpp"
#include "fszlab/numtheory.hpp"
#include "fszlab/parallel.hpp"
#include "fszlab/residue.hpp"
#include "fszlab/sylow.hpp"
#include "fszlab/verify.hpp"

namespace fszlab::cli {

namespace {

using json = nlohmann::ordered_json;

// ---- JSON encodings ---------------------------------------------------------

json to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json to_json(const FieldSpec& f) { return {{"p", f.p()}, {"n", f.n()}, {"modulus", f.modulus()}}; }

json to_json(const CycNum& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back({to_json(c.get_num()), to_json(c.get_den())});
  json out = {{"p", x.p()}, {"coeffs", coeffs}};
  if (const auto r = x.as_rational()) out["rational_value"] = rational_string(*r);
  return out;
}

json to_json(const SylowElem& x) {
  json a = json::array();
  for (const auto& row : x.a().to_rows()) a.push_back(row);
  return {{"n", x.n()}, {"q", x.spec().q()}, {"L_upper", x.l().upper_entries()}, {"A", a}};
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

// ---- reports ------------------------------------------------------------------

enum class Format { json, csv, pretty };

struct Report {
  explicit Report(std::string a = {}) : anchor(std::move(a)) {}
  std::string anchor;
  json inputs = json::object();
  json outputs = json::object();
  bool oracle_match = true;
  // Flat table for csv and pretty output.
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void add_row(Report& r, std::vector<std::string> row) { r.rows.push_back(std::move(row)); }

void emit(const Report& r, Format fmt, double seconds, std::ostream& out) {
  if (fmt == Format::json) {
    const json doc = {{"paper_anchor", r.anchor}, {"inputs", r.inputs}, {"outputs", r.outputs},
                      {"oracle_match", r.oracle_match}};
    out << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::string> header = r.header;
  std::vector<std::vector<std::string>> rows = r.rows;
  if (header.empty()) {
    header = {"key", "value"};
    for (const auto& [k, v] : r.outputs.items()) rows.push_back({k, scalar_text(v)});
  }
  if (fmt == Format::csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
        std::string c = cells[i];
        if (quote) {
          std::string e;
          for (char ch : c) e += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          c = '"' + e + '"';
        }
        out << (i ? "," : "") << c;
      }
      out << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return;
  }
  out << r.anchor << '\n';
  for (const auto& [k, v] : r.inputs.items()) out << "  " << k << " = " << scalar_text(v) << '\n';
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    out << ' ';
    for (std::size_t i = 0; i < cells.size(); ++i) out << ' ' << std::left << std::setw(int(width[i])) << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  if (!r.header.empty())
    for (const auto& [k, v] : r.outputs.items())
      if (v.is_primitive()) out << k << ": " << scalar_text(v) << '\n';
  out << "oracle_match: " << (r.oracle_match ? "yes" : "NO") << '\n';
  out << "elapsed: " << std::fixed << std::setprecision(3) << seconds << " s\n";
}

// ---- arguments ----------------------------------------------------------------

struct Params {
  std::optional<std::uint32_t> p;
  std::optional<std::uint64_t> q;
  unsigned n = 1;
  std::optional<unsigned> n_opt;
  unsigned j = 1;
  std::optional<std::uint32_t> d;
  std::optional<std::string> c, z, x, elem, zparam;
  std::optional<std::uint32_t> y;
  std::optional<std::uint64_t> k, l;
  std::vector<std::string> u;
  std::string mode = "fast";
  std::uint64_t budget = 2'000'000;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  std::uint64_t limit = 0;
  unsigned threads = 0;
  std::string output = "json";
  bool all = false;
  bool quick = false;
  bool corrupt_modulus = false;
};

const FieldSpec& field_from_q(std::uint64_t q) {
  const auto pp = prime_power(q);
  if (!pp || pp->first == 2) throw DomainError("q must be an odd prime power");
  return field_of_order(q);
}

const FieldSpec& sylow_field(const Params& a) {
  if (!a.q && !a.p) throw DomainError("--q (or --p) is required");
  const FieldSpec& f = field_from_q(a.q ? *a.q : *a.p);
  if (a.p && *a.p != f.p()) throw DomainError("--p does not match the characteristic of --q");
  return f;
}

std::uint32_t need_p(const Params& a) {
  if (!a.p) throw DomainError("--p is required");
  if (*a.p == 2 || !is_prime(*a.p)) throw DomainError("--p must be an odd prime");
  return *a.p;
}

// "[c0,...] mod (p,n)" or an integer in the prime field.
FieldElem parse_elem(const FieldSpec& f, const std::string& text) {
  if (text.find('[') != std::string::npos) {
    const FieldElem e = FieldElem::parse(text);
    if (&e.spec() != &f) throw DomainError("element " + text + " is not in the field of order " + std::to_string(f.q()));
    return e;
  }
  std::size_t used = 0;
  const long long v = std::stoll(text, &used);
  if (used != text.size()) throw DomainError("cannot read field element '" + text + "'");
  return FieldElem::from_int(f, v);
}

GmMode parse_mode(const std::string& m) {
  if (m == "fast") return GmMode::fast;
  if (m == "brute") return GmMode::brute;
  throw DomainError("--mode must be fast or brute");
}

std::string symbolic_power(std::uint64_t q, std::uint64_t e) { return std::to_string(q) + "^" + std::to_string(e); }

std::string g_name(const PthPowerTarget& t, std::uint32_t d) {
  return "g_" + std::to_string(t.j) + (d == 1 ? "" : "^" + std::to_string(d));
}

json target_inputs(const PthPowerTarget& t) {
  return {{"field", to_json(*t.spec)}, {"j", t.j}, {"n", t.n}, {"m", t.m}, {"sigma", t.sigma}};
}

// ---- subcommands ----------------------------------------------------------------

Report cmd_field(const Params& a) {
  const FieldSpec& f = field_make(need_p(a), a.n);
  Report r{"finite-field-construction"};
  r.inputs = {{"p", f.p()}, {"n", f.n()}};
  const auto qr = qr_set(f).size();
  r.outputs = {{"field", to_json(f)},
               {"q", f.q()},
               {"qr_count", qr},
               {"minus_one_is_square", f.minus_one_is_square()},
               {"log_tables", f.has_log_tables()}};
  r.oracle_match = qr == (f.q() + 1) / 2 && is_irreducible_mod_p(f.modulus(), f.p());
  if (a.elem) {
    const FieldElem e = parse_elem(f, *a.elem);
    json ej = {{"text", e.to_string()}, {"trace", e.trace()}, {"legendre", e.legendre()}};
    if (!e.is_zero()) ej["inverse"] = e.inv().to_string();
    // Euler's criterion computed with a plain power.
    const Code euler = f.pow(e.code(), (f.q() - 1) / 2);
    r.oracle_match = r.oracle_match && (e.is_zero() || (euler == 1) == (e.legendre() == 1));
    r.outputs["element"] = ej;
  }
  return r;
}

Report cmd_qr(const Params& a) {
  if (!a.q) throw DomainError("--q is required");
  const FieldSpec& f = field_from_q(*a.q);
  Report r{"quadratic-residue-count"};
  r.inputs = {{"q", f.q()}};
  r.header = {"code", "residue"};
  json residues = json::array();
  std::uint64_t euler = 1;
  for (Code x = 1; x < f.q(); ++x) euler += f.pow(x, (f.q() - 1) / 2) == 1;
  for (const auto& e : qr_set(f)) {
    residues.push_back(e.to_string());
    add_row(r, {std::to_string(e.code()), e.to_string()});
  }
  r.outputs = {{"field", to_json(f)}, {"count", residues.size()}, {"expected", (f.q() + 1) / 2},
               {"residues", residues}};
  r.oracle_match = residues.size() == (f.q() + 1) / 2 && euler == residues.size();
  return r;
}

Report cmd_qrdiff(const Params& a) {
  if (!a.q) throw DomainError("--q is required");
  const FieldSpec& f = field_from_q(*a.q);
  Report r{"qr-shift-intersection"};
  r.inputs = {{"q", f.q()}};
  if (a.c) r.inputs["c"] = *a.c;
  r.header = {"q", "c", "closed", "enum", "match"};
  std::vector<FieldElem> cs;
  if (a.c) {
    cs.push_back(parse_elem(f, *a.c));
  } else {
    for (Code c = 1; c < f.q(); ++c) cs.emplace_back(f, c);
  }
  json rows = json::array();
  for (const auto& c : cs) {
    if (c.is_zero()) throw DomainError("c must be nonzero");
    const auto closed = qr_diff_count(c, CountMode::closed);
    const auto counted = qr_diff_count(c, CountMode::enumerate);
    rows.push_back({{"inputs", {{"q", f.q()}, {"c", c.to_string()}}},
                    {"closed", closed},
                    {"enum", counted},
                    {"match", closed == counted}});
    add_row(r, {std::to_string(f.q()), c.to_string(), std::to_string(closed), std::to_string(counted),
                closed == counted ? "true" : "false"});
    r.oracle_match = r.oracle_match && closed == counted;
  }
  r.outputs = {{"rows", rows}};
  return r;
}

Report cmd_gauss(const Params& a) {
  const std::uint32_t p = need_p(a);
  const FieldSpec& f = field_make(p, a.n);
  Report r{"gauss-sum-lift"};
  r.inputs = {{"p", p}, {"n", a.n}};
  const CycNum def = gauss_sum(f), lifted = gauss_sum_lifted(p, a.n);
  const CycNum sq = gauss_sum(field_make(p, 1)).pow(2);
  const mpq_class expected_sq(static_cast<long>(sign_pow((p - 1) / 2)) * static_cast<long>(p));
  r.outputs = {{"definitional", to_json(def)},
               {"lifted", to_json(lifted)},
               {"equal", def == lifted},
               {"G_p_squared", to_json(sq)},
               {"expected_G_p_squared", rational_string(expected_sq)}};
  r.header = {"quantity", "value"};
  add_row(r, {"G(" + std::to_string(f.q()) + ")", def.to_string()});
  add_row(r, {"-(-G(" + std::to_string(p) + "))^" + std::to_string(a.n), lifted.to_string()});
  add_row(r, {"G(" + std::to_string(p) + ")^2", sq.to_string()});
  r.oracle_match = def == lifted && sq == CycNum::rational(p, expected_sq);
  return r;
}

Report cmd_fibers(const Params& a) {
  const std::uint32_t p = need_p(a);
  const FieldSpec& f = field_make(p, a.n);
  Report r{"trace-fiber-residues"};
  r.inputs = {{"p", p}, {"n", a.n}, {"all", a.all}};
  std::vector<Code> zs;
  if (a.all) {
    for (Code z = 1; z < f.q(); ++z) zs.push_back(z);
  } else {
    zs.push_back(a.z ? parse_elem(f, *a.z).code() : 1);
    r.inputs["z"] = f.format(zs[0]);
  }
  if (a.y) r.inputs["y"] = *a.y;
  r.header = {"z", "y", "closed", "enum", "match"};
  json rows = json::array(), totals = json::array();
  for (Code z : zs) {
    if (z == 0) throw DomainError("z must be nonzero");
    std::uint64_t total = 0;
    for (std::uint32_t y = 0; y < p; ++y) {
      if (a.y && *a.y != y) continue;
      const FiberCountQuery query{FieldElem(f, z), y};
      const auto closed = trace_fiber_qr_count(query, CountMode::closed);
      const auto counted = trace_fiber_qr_count(query, CountMode::enumerate);
      total += counted;
      rows.push_back({{"inputs", {{"p", p}, {"n", a.n}, {"z", f.format(z)}, {"y", y}}},
                      {"closed", closed},
                      {"enum", counted},
                      {"match", closed == counted}});
      add_row(r, {f.format(z), std::to_string(y), std::to_string(closed), std::to_string(counted),
                  closed == counted ? "true" : "false"});
      r.oracle_match = r.oracle_match && closed == counted;
    }
    if (!a.y) {
      totals.push_back({{"z", f.format(z)}, {"total", total}, {"expected", (f.q() + 1) / 2}});
      r.oracle_match = r.oracle_match && total == (f.q() + 1) / 2;
    }
  }
  if (a.y && *a.y >= p) throw DomainError("y must lie in [0, p)");
  r.outputs = {{"rows", rows}};
  if (!a.y) r.outputs["totals"] = totals;
  return r;
}

Report cmd_binom(const Params& a) {
  const std::uint32_t p = need_p(a);
  const auto pj = checked_pow(p, a.j);
  if (!pj || *pj > 1'000'000) throw DomainError("p^j too large");
  const std::uint64_t half = (*pj - 1) / 2;
  Report r{"binomial-vanishing"};
  r.inputs = {{"p", p}, {"j", a.j}};
  if (a.k) r.inputs["k"] = *a.k;
  if (a.l) r.inputs["l"] = *a.l;
  r.header = {"k", "l", "big_integer", "lucas", "predicted", "match"};
  const std::uint32_t top = sign_pow(std::uint64_t(a.j) * (p - 1) / 2) == 1 ? 1 : p - 1;
  json rows = json::array();
  for (std::uint64_t k = 0; k <= half; ++k) {
    if (a.k && *a.k != k) continue;
    for (std::uint64_t l = 0; l <= half; ++l) {
      if (a.l && *a.l != l) continue;
      const auto big = binom_product_sum_mod(p, a.j, k, l, BinomPath::big_integer);
      const auto lucas = binom_product_sum_mod(p, a.j, k, l, BinomPath::lucas);
      std::optional<std::uint32_t> predicted;
      if (k + l < *pj - 1) predicted = 0;
      if (k == half && l == half) predicted = top;
      const bool match = big == lucas && (!predicted || *predicted == big);
      json row = {{"inputs", {{"p", p}, {"j", a.j}, {"k", k}, {"l", l}}}, {"big_integer", big}, {"lucas", lucas}};
      row["predicted"] = predicted ? json(*predicted) : json(nullptr);
      row["match"] = match;
      rows.push_back(row);
      add_row(r, {std::to_string(k), std::to_string(l), std::to_string(big), std::to_string(lucas),
                  predicted ? std::to_string(*predicted) : "-", match ? "true" : "false"});
      r.oracle_match = r.oracle_match && match;
    }
  }
  if ((a.k && *a.k > half) || (a.l && *a.l > half)) throw DomainError("k and l must lie in [0, (p^j-1)/2]");
  r.outputs = {{"rows", rows}};
  return r;
}

PthPowerTarget target_of(const Params& a) {
  const FieldSpec& f = sylow_field(a);
  return make_target(f, a.j, a.d.value_or(1));
}

Report cmd_solve(const Params& a) {
  const PthPowerTarget t = target_of(a);
  const FieldSpec& f = *t.spec;
  const FieldElem x = parse_elem(f, a.x.value_or("1"));
  const SylowElem sol = solve_pth_power(t, x);
  Report r{"pth-root-construction"};
  r.inputs = target_inputs(t);
  r.inputs["d"] = t.d;
  r.inputs["x"] = x.to_string();
  // Independent check: the full matrix raised to the m-th power.
  const bool by_matrix = sol.embed().pow(t.m) == t.matrix();
  r.outputs = {{"target", g_name(t, t.d)},
               {"solution", to_json(sol)},
               {"upsilon", upsilon(sol.l(), t.j).to_string()},
               {"characterization", satisfies_characterization(t, sol)},
               {"block_power_matches", sylow_pow(sol, t.m) == t.element()},
               {"matrix_power_matches", by_matrix}};
  r.oracle_match = by_matrix && satisfies_characterization(t, sol);
  return r;
}

Report cmd_count(const Params& a) {
  const PthPowerTarget t = target_of(a);
  const FieldSpec& f = *t.spec;
  const GmMode mode = parse_mode(a.mode);
  Report r{"root-characterization"};
  r.inputs = target_inputs(t);
  r.inputs["mode"] = a.mode;
  std::vector<std::uint32_t> ds;
  if (a.d) {
    ds.push_back(*a.d);
  } else {
    for (std::uint32_t d = 1; d < f.p(); ++d) ds.push_back(d);
  }
  r.header = {"d", "closed", "observed", "match"};
  json rows = json::array();
  if (mode == GmMode::brute) {
    const PowerScan scan = scan_powers(t, {}, a.budget, a.threads);
    for (auto d : ds) {
      const mpz_class closed = solution_count(t.with_d(d));
      const bool match = closed == scan.solutions[d] && scan.characterized[d] == scan.solutions[d];
      rows.push_back({{"d", d}, {"closed", to_json(closed)}, {"scanned", scan.solutions[d]},
                      {"characterized", scan.characterized[d]}, {"match", match}});
      add_row(r, {std::to_string(d), closed.get_str(), std::to_string(scan.solutions[d]), match ? "true" : "false"});
      r.oracle_match = r.oracle_match && match;
    }
    r.outputs = {{"elements", scan.elements},
                 {"power_formula_failures", scan.power_formula_failures},
                 {"membership_mismatches", scan.membership_mismatches},
                 {"rows", rows}};
    r.oracle_match = r.oracle_match && scan.power_formula_failures == 0 && scan.membership_mismatches == 0;
    return r;
  }
  // Fast mode: closed counts, with the characterization checked against
  // matrix powers on seeded random elements.
  const auto size = checked_pow(f.q(), static_cast<unsigned>(t.n * t.n));
  std::mt19937_64 rng(a.seed);
  std::uint64_t disagreements = 0;
  const std::uint64_t samples = a.samples;
  for (std::uint64_t s = 0; s < samples; ++s) {
    SylowElem x = SylowElem::identity(f, t.n);
    if (size) {
      x = sylow_from_index(t.n, f, std::uniform_int_distribution<std::uint64_t>(0, *size - 1)(rng));
    } else {
      std::vector<Code> upper(t.n * (t.n - 1) / 2), lower(t.n * (t.n + 1) / 2);
      std::uniform_int_distribution<Code> pick(0, f.q() - 1);
      for (auto& c : upper) c = pick(rng);
      for (auto& c : lower) c = pick(rng);
      x = SylowElem::from_free(UniTriMat::from_upper(f, t.n, upper), lower);
    }
    const MatFq xm = x.embed().pow(t.m);
    for (auto d : ds) {
      const PthPowerTarget td = t.with_d(d);
      if ((xm == td.matrix()) != satisfies_characterization(td, x)) ++disagreements;
    }
  }
  for (auto d : ds) {
    const mpz_class closed = solution_count(t.with_d(d));
    rows.push_back({{"d", d}, {"closed", to_json(closed)}});
    add_row(r, {std::to_string(d), closed.get_str(), "-", "-"});
  }
  r.inputs["samples"] = samples;
  r.inputs["seed"] = a.seed;
  r.outputs = {{"group_order", symbolic_power(f.q(), t.n * t.n)},
               {"sample_disagreements", disagreements},
               {"rows", rows}};
  r.oracle_match = disagreements == 0;
  return r;
}

std::vector<LabeledElem> u_set(const Params& a, const PthPowerTarget& t, bool& exhaustive) {
  const FieldSpec& f = *t.spec;
  std::vector<std::string> names = a.u;
  if (names.empty()) names = {"identity", "U"};
  std::vector<LabeledElem> out;
  exhaustive = false;
  for (const auto& name : names) {
    if (name == "identity") {
      out.push_back({"identity", SylowElem::identity(f, t.n)});
    } else if (name == "U") {
      out.push_back({"U", witness_u(f, t.n)});
    } else if (name == "all") {
      const std::uint64_t size = sylow_check_budget(t.n, f, a.budget);
      for (std::uint64_t i = 0; i < size; ++i) out.push_back({"#" + std::to_string(i), sylow_from_index(t.n, f, i)});
      exhaustive = true;
    } else {
      std::ifstream in(name);
      if (!in) throw DomainError("cannot open u file " + name);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw DomainError("u file " + name + ": " + e.what());
      }
      if (doc.value("n", t.n) != t.n || doc.value("q", f.q()) != f.q())
        throw DomainError("u file " + name + " is for a different group");
      const auto upper = doc.at("L_upper").get<std::vector<Code>>();
      const auto rows = doc.at("A").get<std::vector<std::vector<std::int64_t>>>();
      for (auto v : upper)
        if (v >= f.q()) throw DomainError("u file " + name + ": entry out of range");
      out.push_back({name, SylowElem::from_blocks(UniTriMat::from_upper(f, t.n, upper), MatFq::from_rows(f, rows))});
    }
  }
  return out;
}

Report cmd_fsz(const Params& a) {
  const PthPowerTarget t = target_of(a);
  const FieldSpec& f = *t.spec;
  const GmMode mode = parse_mode(a.mode);
  bool exhaustive = false;
  const auto us = u_set(a, t, exhaustive);
  if (mode == GmMode::brute && exhaustive) {
    const mpz_class work = sylow_order_of_group(t.n, f) * mpz_class(std::to_string(us.size()));
    if (work > mpz_class(std::to_string(a.budget)))
      throw BudgetExceeded("a brute-force scan over every u", symbolic_power(f.q(), 2 * t.n * t.n), work.get_str());
  }
  const FszReport rep = fsz_test_at(t, us, exhaustive, mode, a.budget, a.threads);
  Report r{"sylow-non-fsz"};
  r.inputs = target_inputs(t);
  r.inputs["mode"] = a.mode;
  json ulabels = json::array();
  for (const auto& u : us) ulabels.push_back(u.label);
  r.inputs["u"] = exhaustive ? json("all") : ulabels;
  r.header = {"u"};
  for (std::uint32_t d = 1; d < f.p(); ++d) r.header.push_back("|G(u," + g_name(t, d) + ")|");
  json rows = json::array();
  bool routes_agree = true;
  for (const auto& row : rep.rows) {
    json counts = json::object();
    std::vector<std::string> cells = {row.u.label};
    for (std::uint32_t d = 1; d < f.p(); ++d) {
      counts[std::to_string(d)] = to_json(row.counts[d - 1]);
      cells.push_back(row.counts[d - 1].get_str());
    }
    rows.push_back({{"u", row.u.label}, {"counts", counts}});
    if (!exhaustive || us.size() <= 256) r.rows.push_back(cells);
    if (mode == GmMode::brute)
      for (std::uint32_t d = 1; d < f.p(); ++d)
        routes_agree = routes_agree && gm_count_fast(row.u.elem, t.with_d(d)) == row.counts[d - 1];
  }
  json betas = json::array();
  bool any_irrational = false;
  for (Code z = 1; z < f.q(); ++z) {
    const BetaValue b = beta_linear(FieldElem(f, z), t);
    any_irrational = any_irrational || !b.rational;
    betas.push_back({{"zparam", f.format(z)}, {"rational", b.rational}, {"coeffs", to_json(b.value)}});
  }
  r.outputs = {{"group", rep.group}, {"m", rep.m}, {"z", rep.z}, {"rows", rows},
               {"verdict", verdict_name(rep.verdict, rep.m)}, {"beta", betas}};
  if (rep.witness_row) r.outputs["witness"] = rep.rows[*rep.witness_row].u.label;
  // A count route non-FSZ verdict must come with an irrational beta, and an
  // exhaustive FSZ verdict with rational ones.
  bool consistent = routes_agree;
  if (rep.verdict == FszVerdict::non_fsz && !any_irrational) consistent = false;
  if (rep.verdict == FszVerdict::fsz && any_irrational) consistent = false;
  r.oracle_match = consistent;
  return r;
}

Report cmd_beta(const Params& a) {
  const PthPowerTarget t = target_of(a);
  const FieldSpec& f = *t.spec;
  const GmMode mode = parse_mode(a.mode);
  Report r{"linear-character-beta"};
  r.inputs = target_inputs(t);
  r.inputs["d"] = t.d;
  r.inputs["mode"] = a.mode;
  std::vector<Code> zs;
  if (a.zparam) {
    zs.push_back(parse_elem(f, *a.zparam).code());
    if (zs[0] == 0) throw DomainError("zparam must be nonzero");
  } else {
    for (Code z = 1; z < f.q(); ++z) zs.push_back(z);
  }
  std::optional<PowerScan> scan;
  if (mode == GmMode::brute) scan = scan_powers(t, {}, a.budget, a.threads);
  r.header = {"zparam", "rational", "beta"};
  json rows = json::array();
  for (Code z : zs) {
    const BetaValue b = beta_linear(FieldElem(f, z), t);
    json row = {{"zparam", f.format(z)}, {"rational", b.rational}, {"coeffs", to_json(b.value)},
                {"inner", to_json(b.inner)}};
    bool match = norm_sq(b.inner) == b.value && b.rational == b.value.is_rational();
    if (scan) {
      const BetaValue hb = beta_from_histogram(FieldElem(f, z), scan->a11_histogram[t.d]);
      row["scan_agrees"] = hb.value == b.value;
      match = match && hb.value == b.value;
    }
    rows.push_back(row);
    add_row(r, {f.format(z), b.rational ? "true" : "false", b.value.to_string()});
    r.oracle_match = r.oracle_match && match;
  }
  r.outputs = {{"target", g_name(t, t.d)}, {"rows", rows}};
  return r;
}

Report cmd_enumerate(const Params& a) {
  const FieldSpec& f = sylow_field(a);
  const std::size_t n = a.n_opt.value_or(2);
  if (n < 1) throw DomainError("--n must be positive");
  const std::uint64_t size = sylow_check_budget(n, f, a.budget);
  Report r{"sylow-enumeration"};
  r.inputs = {{"q", f.q()}, {"n", n}, {"limit", a.limit}};
  const std::uint64_t total = parallel_reduce(
      size, a.threads, std::uint64_t{0},
      [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t good = 0;
        enumerate_sylow_range(n, f, b, e, [&](std::uint64_t i, const SylowElem& x) { good += sylow_index(x) == i; });
        return good;
      },
      [](std::uint64_t& acc, std::uint64_t&& part) { acc += part; });
  json listed = json::array();
  r.header = {"index", "L_upper", "A"};
  bool members = true;
  for (std::uint64_t i = 0; i < std::min(a.limit, size); ++i) {
    const SylowElem x = sylow_from_index(n, f, i);
    members = members && is_symplectic(x.embed());
    json ej = to_json(x);
    listed.push_back({{"index", i}, {"element", ej}});
    add_row(r, {std::to_string(i), ej["L_upper"].dump(), ej["A"].dump()});
  }
  r.outputs = {{"order", symbolic_power(f.q(), n * n)}, {"order_decimal", size}, {"round_trips", total},
               {"elements", listed}};
  r.oracle_match = total == size && members;
  return r;
}

Report cmd_centralizer(const Params& a) {
  const PthPowerTarget t = target_of(a);
  const FieldSpec& f = *t.spec;
  Report r{"centralizer-structure"};
  r.inputs = target_inputs(t);
  r.inputs["d"] = t.d;
  r.inputs["samples"] = a.samples;
  r.inputs["seed"] = a.seed;
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<Code> pick(0, f.q() - 1);
  std::uint64_t ok[4] = {0, 0, 0, 0};
  for (std::uint64_t s = 0; s < a.samples; ++s) {
    const CentElem x = random_centralizer_elem(t, rng()), y = random_centralizer_elem(t, rng());
    const MatFq perturbed = x.matrix() * random_symplectic(f, t.n, rng(), 1);
    ok[0] += commutes_with_target(perturbed, t) == has_centralizer_block_form(perturbed, t);
    const auto [sx, lx] = pi(x);
    const auto [sy, ly] = pi(y);
    const auto [sxy, lxy] = pi(x * y);
    ok[1] += sxy == sx * sy && lxy == f.mul(lx, ly);
    const MatFq sym = random_symplectic(f, t.n - 1, rng());
    const Code lambda = (rng() & 1) ? 1 : f.neg(1);
    const auto [s2, l2] = pi(pi_section(t, sym, lambda));
    ok[2] += s2 == sym && l2 == lambda;
    std::vector<Code> v(2 * t.n - 2);
    for (auto& c : v) c = pick(rng);
    const CentElem k = kernel_element(t, v, pick(rng));
    ok[3] += in_kernel(k) && k.matrix().pow(f.p()).is_identity() && kernel_power_closed(k, f.p() - 1) == k.matrix().pow(f.p() - 1);
  }
  const char* names[] = {"predicate_equivalence", "pi_homomorphism", "section_identity", "kernel_order"};
  r.header = {"property", "pass", "fail"};
  json props = json::array();
  for (int i = 0; i < 4; ++i) {
    props.push_back({{"property", names[i]}, {"pass", ok[i]}, {"fail", a.samples - ok[i]}});
    add_row(r, {names[i], std::to_string(ok[i]), std::to_string(a.samples - ok[i])});
    r.oracle_match = r.oracle_match && ok[i] == a.samples;
  }
  r.outputs = {{"properties", props}};
  return r;
}

Report cmd_verify(const Params& a, bool quick, Format fmt, std::ostream& out, std::ostream& err) {
  VerifyOptions opt;
  opt.quick = quick || a.quick;
  opt.budget = a.budget;
  opt.seed = a.seed;
  opt.threads = a.threads;
  opt.corrupt_modulus = a.corrupt_modulus;
  Report r{"acceptance-suite"};
  r.inputs = {{"quick", opt.quick}, {"budget", opt.budget}, {"seed", opt.seed}};
  r.header = {"tier", "anchor", "result", "seconds", "detail"};
  json tiers = json::array();
  const auto results = run_verify(opt, [&](const TierResult& t) {
    if (fmt == Format::pretty) {
      std::ostringstream secs;
      secs << std::fixed << std::setprecision(2) << t.seconds;
      out << "AC" << t.id << ' ' << (t.pass ? "PASS" : "FAIL") << "  " << t.anchor << "  " << secs.str() << " s\n";
    }
    if (!t.pass) err << "AC" << t.id << " failed [" << t.anchor << "]: " << t.detail << '\n';
  });
  for (const auto& t : results) {
    tiers.push_back({{"tier", "AC" + std::to_string(t.id)}, {"anchor", t.anchor}, {"pass", t.pass}, {"detail", t.detail}});
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(2) << t.seconds;
    add_row(r, {"AC" + std::to_string(t.id), t.anchor, t.pass ? "PASS" : "FAIL", secs.str(), t.detail});
    r.oracle_match = r.oracle_match && t.pass;
  }
  r.outputs = {{"tiers", tiers}};
  if (fmt == Format::csv) r.header.erase(r.header.begin() + 3);
  if (fmt == Format::csv)
    for (auto& row : r.rows) row.erase(row.begin() + 3);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite-field, Gauss-sum and Sylow-subgroup experiments", "fsz-lab"};
  app.require_subcommand(1);
  Params a;
  std::string chosen;
  bool verify_quick = false;

  auto common = [&](CLI::App* s) {
    s->add_option("--budget", a.budget, "maximum number of group elements to enumerate")->check(CLI::PositiveNumber);
    s->add_option("--seed", a.seed, "seed for sampled checks");
    s->add_option("--threads", a.threads, "worker threads (default FSZ_LAB_THREADS or hardware)");
    s->add_option("--output", a.output, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    common(s);
    s->callback([&chosen, s] { chosen = s->get_parent()->get_name() == "fsz-lab" ? s->get_name()
                                                                                 : s->get_parent()->get_name() + " " + s->get_name(); });
    return s;
  };

  auto* field = leaf(&app, "field", "construct F_{p^n} and describe an element");
  field->add_option("--p", a.p)->required();
  field->add_option("--n", a.n);
  field->add_option("--elem", a.elem, "element as \"[c0,...] mod (p,n)\" or an integer");

  auto* qr = leaf(&app, "qr", "list the squares of F_q");
  qr->add_option("--q", a.q)->required();

  auto* qrdiff = leaf(&app, "qrdiff", "|QR ∩ (QR + c)| closed and enumerated");
  qrdiff->add_option("--q", a.q)->required();
  qrdiff->add_option("--c", a.c);

  auto* gauss = leaf(&app, "gauss", "Gauss sums by definition and by lifting");
  gauss->add_option("--p", a.p)->required();
  gauss->add_option("--n", a.n);

  auto* fibers = leaf(&app, "fibers", "squares in the fibres of x -> tr(zx)");
  fibers->add_option("--p", a.p)->required();
  fibers->add_option("--n", a.n);
  fibers->add_option("--z", a.z);
  fibers->add_option("--y", a.y);
  fibers->add_flag("--all", a.all, "every nonzero z");

  auto* binom = leaf(&app, "binom", "sums of products of binomial coefficients mod p");
  binom->add_option("--p", a.p)->required();
  binom->add_option("--j", a.j);
  binom->add_option("--k", a.k);
  binom->add_option("--l", a.l);

  auto* sylow = app.add_subcommand("sylow", "the Sylow p-subgroup of Sp_{p^j+1}(q)");
  sylow->require_subcommand(1);
  auto sylow_opts = [&](CLI::App* s) {
    s->add_option("--p", a.p);
    s->add_option("--q", a.q);
    s->add_option("--j", a.j);
    s->add_option("--d", a.d);
  };
  auto* solve = leaf(sylow, "solve", "a p^j-th root of g_j^d with given A_11");
  sylow_opts(solve);
  solve->add_option("--x", a.x, "value of A_11 (default 1)");
  auto* count = leaf(sylow, "count", "number of p^j-th roots of g_j^d");
  sylow_opts(count);
  count->add_option("--mode", a.mode);
  count->add_option("--samples", a.samples, "random elements checked in fast mode");
  auto* fsz = leaf(sylow, "fsz", "|G_m(u, g^d)| for each d, verdict and beta values");
  sylow_opts(fsz);
  fsz->add_option("--u", a.u, "identity, U, all, or a JSON file {L_upper, A}");
  fsz->add_option("--mode", a.mode);
  auto* beta = leaf(sylow, "beta", "beta values of the linear characters xi_lambda");
  sylow_opts(beta);
  beta->add_option("--zparam", a.zparam);
  beta->add_option("--mode", a.mode);
  auto* enumerate = leaf(sylow, "enumerate", "walk every element of P(Sp_2n(q))");
  enumerate->add_option("--p", a.p);
  enumerate->add_option("--q", a.q);
  enumerate->add_option("--n", a.n_opt, "half the matrix size (default 2)");
  enumerate->add_option("--limit", a.limit, "print the first elements");

  auto* cent = app.add_subcommand("centralizer", "the centralizer of g_j in Sp_{p^j+1}(q)");
  cent->require_subcommand(1);
  auto* check = leaf(cent, "check", "sampled structure checks");
  sylow_opts(check);
  check->add_option("--samples", a.samples);

  auto* verify = app.add_subcommand("verify", "run the acceptance tiers");
  verify->require_subcommand(1);
  auto* vall = leaf(verify, "all", "tiers 1..12");
  vall->add_flag("--quick", a.quick, "tiers 1..7 only");
  vall->add_flag("--corrupt-modulus", a.corrupt_modulus)->group("");
  auto* vquick = leaf(verify, "quick", "tiers 1..7");
  vquick->add_flag("--corrupt-modulus", a.corrupt_modulus)->group("");
  vquick->callback([&] {
    chosen = "verify quick";
    verify_quick = true;
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  if (a.threads == 0) a.threads = default_threads();
  const Format fmt = a.output == "csv" ? Format::csv : a.output == "pretty" ? Format::pretty : Format::json;

  const auto start = std::chrono::steady_clock::now();
  try {
    Report r;
    if (chosen == "field") r = cmd_field(a);
    else if (chosen == "qr") r = cmd_qr(a);
    else if (chosen == "qrdiff") r = cmd_qrdiff(a);
    else if (chosen == "gauss") r = cmd_gauss(a);
    else if (chosen == "fibers") r = cmd_fibers(a);
    else if (chosen == "binom") r = cmd_binom(a);
    else if (chosen == "sylow solve") r = cmd_solve(a);
    else if (chosen == "sylow count") r = cmd_count(a);
    else if (chosen == "sylow fsz") r = cmd_fsz(a);
    else if (chosen == "sylow beta") r = cmd_beta(a);
    else if (chosen == "sylow enumerate") r = cmd_enumerate(a);
    else if (chosen == "centralizer check") r = cmd_centralizer(a);
    else if (chosen == "verify all" || chosen == "verify quick") r = cmd_verify(a, verify_quick, fmt, out, err);
    else {
      err << "unknown subcommand\n";
      return 2;
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    emit(r, fmt, took.count(), out);
    if (!r.oracle_match) {
      err << "verification mismatch [" << r.anchor << "]\n";
      return 1;
    }
    return 0;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n' << "required budget: " << e.required() << " (" << e.required_decimal()
        << " elements)\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    err << "verification mismatch: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fszlab::cli
