#include "cli.hpp"

#include "bpart/asympt.hpp"
#include "bpart/beatty.hpp"
#include "bpart/counting.hpp"
#include "bpart/errors.hpp"
#include "bpart/genfun.hpp"
#include "bpart/saddle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bpart::cli {
namespace {

using nlohmann::ordered_json;

// One output cell. Exact integers stay decimal strings everywhere.
struct Cell {
  enum class Kind { Null, Text, Exact, Int, Bool, Num } kind = Kind::Null;
  std::string text;
  std::int64_t i = 0;
  bool flag = false;
  Real x{0};
  int rounding = 0;  // -1 round toward -inf, +1 toward +inf (interval ends)

  static Cell null() { return {}; }
  static Cell str(std::string s) { Cell c; c.kind = Kind::Text; c.text = std::move(s); return c; }
  static Cell exact(std::string s) { Cell c; c.kind = Kind::Exact; c.text = std::move(s); return c; }
  static Cell integer(std::int64_t v) { Cell c; c.kind = Kind::Int; c.i = v; return c; }
  static Cell boolean(bool v) { Cell c; c.kind = Kind::Bool; c.flag = v; return c; }
  static Cell num(const Real& v, int dir = 0) {
    Cell c;
    c.kind = Kind::Num;
    c.x = v;
    c.rounding = dir;
    return c;
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;  // JSON only
};

struct Config {
  std::string alpha_spec;
  std::string kind = "p";
  std::vector<std::uint64_t> ns;
  std::uint64_t N = 1'000'000;
  std::vector<std::string> ts;
  std::vector<std::string> xs;
  std::string what = "S";
  std::string s = "1";
  std::string tol = "1e-8";
  std::optional<std::int64_t> quotient_bound;
  std::string format = "json";
  unsigned precision_bits = kDefaultFracBits;
  bool full_precision = false;
};

int digits(const Config& cfg) { return cfg.full_precision ? 36 : 6; }

// Decimal with `d` significant digits, rounded in the requested direction.
std::string format_num(const Real& x, int d, int dir) {
  if (!isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  if (dir == 0 || x == 0) return format_real(x, d);
  const Real e = floor(log10(abs(x)));
  const Real scale = pow(Real(10), Real(d - 1) - e);
  const Real y = (dir < 0 ? floor(x * scale) : ceil(x * scale)) / scale;
  return format_real(y, d);
}

std::string render_text(const Cell& c, int d) {
  switch (c.kind) {
    case Cell::Kind::Null: return "";
    case Cell::Kind::Text:
    case Cell::Kind::Exact: return c.text;
    case Cell::Kind::Int: return std::to_string(c.i);
    case Cell::Kind::Bool: return c.flag ? "true" : "false";
    case Cell::Kind::Num: return format_num(c.x, d, c.rounding);
  }
  return "";
}

ordered_json render_json(const Cell& c, int d, bool full) {
  switch (c.kind) {
    case Cell::Kind::Null: return nullptr;
    case Cell::Kind::Text:
    case Cell::Kind::Exact: return c.text;
    case Cell::Kind::Int: return c.i;
    case Cell::Kind::Bool: return c.flag;
    case Cell::Kind::Num: {
      const std::string s = format_num(c.x, d, c.rounding);
      if (full) return s;
      const double v = std::strtod(s.c_str(), nullptr);
      if (!std::isfinite(v)) return s;
      return v;
    }
  }
  return nullptr;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void emit(const Table& t, const Config& cfg, const std::string& command, std::ostream& out) {
  const int d = digits(cfg);
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = command;
    doc["alpha"] = cfg.alpha_spec;
    for (const auto& [k, v] : t.meta) doc[k] = render_json(v, d, cfg.full_precision);
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json o;
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        o[t.columns[i]] = render_json(r[i], d, cfg.full_precision);
      }
      rows.push_back(std::move(o));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
    return;
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back(t.columns);
  for (const auto& r : t.rows) {
    std::vector<std::string> line;
    for (const auto& c : r) line.push_back(render_text(c, d));
    cells.push_back(std::move(line));
  }
  if (cfg.format == "csv") {
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << csv_field(line[i]);
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  for (std::size_t li = 0; li < cells.size(); ++li) {
    for (std::size_t i = 0; i < cells[li].size(); ++i) {
      if (i) out << "  ";
      out << std::string(width[i] - cells[li][i].size(), ' ') << cells[li][i];
    }
    out << "\n";
    if (li == 0) {
      for (std::size_t i = 0; i < width.size(); ++i) out << (i ? "  " : "") << std::string(width[i], '-');
      out << "\n";
    }
  }
}

Real parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    (void)std::stold(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return Real(s);
  } catch (const std::exception&) {
    throw ParseError("cli", std::string("cannot read ") + what + " from '" + s + "'");
  }
}

PartitionKind parse_kind(const std::string& k) {
  if (k == "p") return PartitionKind::Unrestricted;
  if (k == "q") return PartitionKind::Distinct;
  throw ParseError("cli", "--kind must be p or q");
}

Alpha load_alpha(const Config& cfg) {
  Alpha a = parse_alpha(cfg.alpha_spec);
  if (cfg.quotient_bound) a = a.with_quotient_bound(*cfg.quotient_bound);
  return a;
}

Cell real_or_null(const std::optional<Real>& v) { return v ? Cell::num(*v) : Cell::null(); }

// Estimate magnitudes: plain numbers while the float type can hold them.
Cell magnitude(const Real& log_value) {
  if (abs(log_value) < Real(11000)) return Cell::num(exp(log_value));
  return Cell::str(exp_to_decimal(log_value, 6));
}

const std::vector<std::uint64_t>& require_ns(const Config& cfg) {
  if (cfg.ns.empty()) throw DomainError("cli", "give --n or --ns");
  return cfg.ns;
}

Table cmd_count(const Config& cfg) {
  const Alpha a = load_alpha(cfg);
  const auto& ns = require_ns(cfg);
  const PartitionKind kind = parse_kind(cfg.kind);
  const PartitionTable t = count_partitions(a, *std::max_element(ns.begin(), ns.end()), kind);
  Table out;
  out.columns = {"n", "count"};
  out.meta = {{"kind", Cell::str(to_string(kind))}};
  for (std::uint64_t n : ns) {
    out.rows.push_back({Cell::integer(static_cast<std::int64_t>(n)), Cell::exact(t.counts[n].get_str())});
  }
  return out;
}

Table cmd_table(const Config& cfg) {
  const Alpha a = load_alpha(cfg);
  const PartitionKind kind = parse_kind(cfg.kind);
  std::vector<std::uint64_t> ns = cfg.ns;
  if (ns.empty()) {
    ns = kind == PartitionKind::Distinct ? std::vector<std::uint64_t>{50, 100, 200, 400, 800, 1600}
                                         : std::vector<std::uint64_t>{25, 50, 100, 200, 400, 800};
  }
  const PartitionTable t = count_partitions(a, *std::max_element(ns.begin(), ns.end()), kind);
  Table out;
  out.columns = {"n", "exact", "estimate", "ratio", "theorem_estimate", "theorem_ratio"};
  out.meta = {{"kind", Cell::str(to_string(kind))}};

  std::optional<LambdaEstimate> lam;
  if (kind == PartitionKind::Unrestricted) {
    if (a.quotient_bound()) {
      lam = lambda_constant(a, cfg.N, cfg.precision_bits);
      out.meta.push_back({"lambda_N", Cell::integer(static_cast<std::int64_t>(cfg.N))});
      out.meta.push_back({"lambda_lo", Cell::num(lam->lambda_lo, -1)});
      out.meta.push_back({"lambda_hi", Cell::num(lam->lambda_hi, +1)});
    } else {
      out.meta.push_back({"lambda_N", Cell::null()});
    }
  } else {
    out.meta.push_back({"theorem_constant", Cell::num(q_theorem_constant(a))});
  }

  for (std::uint64_t n : ns) {
    const Real log_exact = n == 0 ? Real(0) : log_integer(t.counts[n]);
    std::vector<Cell> row = {Cell::integer(static_cast<std::int64_t>(n)),
                             Cell::exact(t.counts[n].get_str())};
    if (n == 0) {
      row.insert(row.end(), 4, Cell::null());
      out.rows.push_back(std::move(row));
      continue;
    }
    const EstimateReport bare =
        kind == PartitionKind::Distinct ? constant_free_q(a, n) : constant_free_p(a, n);
    row.push_back(magnitude(bare.log_value));
    row.push_back(Cell::num(exp(bare.log_value - log_exact)));
    std::optional<EstimateReport> full;
    if (kind == PartitionKind::Distinct) {
      full = theorem_q_estimate(a, n);
    } else if (lam) {
      full = theorem_p_estimate(a, n, *lam);
    }
    if (full) {
      row.push_back(magnitude(full->log_value));
      row.push_back(Cell::num(exp(full->log_value - log_exact)));
    } else {
      row.push_back(Cell::null());
      row.push_back(Cell::null());
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

Table cmd_lambda(const Config& cfg) {
  const Alpha a = load_alpha(cfg);
  const LambdaEstimate lam = lambda_constant(a, cfg.N, cfg.precision_bits);
  Table out;
  out.columns = {"N", "A", "conditional", "log_pi", "error_radius", "rounding_slack",
                 "prefactor", "lambda_lo", "lambda_hi", "lambda_center"};
  out.rows.push_back({Cell::integer(static_cast<std::int64_t>(lam.N)), Cell::integer(lam.A),
                      Cell::boolean(lam.bound_conditional), Cell::num(lam.log_pi_alpha),
                      Cell::num(lam.error_radius, +1), Cell::num(lam.rounding_slack, +1),
                      Cell::num(lam.prefactor), Cell::num(lam.lambda_lo, -1),
                      Cell::num(lam.lambda_hi, +1), Cell::num(lam.lambda_center)});
  return out;
}

Table cmd_saddle(const Config& cfg) {
  const Alpha a = load_alpha(cfg);
  const PartitionKind kind = parse_kind(cfg.kind);
  Table out;
  out.columns = {"n", "equation", "t_star", "residual", "bracket_lo", "bracket_hi",
                 "iterations", "log_estimate", "estimate"};
  out.meta = {{"kind", Cell::str(to_string(kind))}};
  for (std::uint64_t n : require_ns(cfg)) {
    const SaddleSolution s =
        kind == PartitionKind::Distinct ? solve_q_saddle(a, n) : solve_p_saddle(a, n);
    const EstimateReport e = estimate_from_solution(a, s);
    out.rows.push_back({Cell::integer(static_cast<std::int64_t>(n)), Cell::str(to_string(s.equation)),
                        Cell::num(s.t_star), Cell::num(s.residual), Cell::num(s.bracket_lo),
                        Cell::num(s.bracket_hi), Cell::integer(s.iterations),
                        Cell::num(e.log_value), Cell::str(e.value.value_or(""))});
  }
  return out;
}

Table cmd_decomposition(const Config& cfg) {
  const Alpha a = load_alpha(cfg);
  if (cfg.ts.empty()) throw DomainError("cli", "give --t or --ts");
  const Real tol = parse_real(cfg.tol, "--tol");
  SeriesOptions opt;
  opt.frac_bits = cfg.precision_bits;
  Table out;
  out.columns = {"t", "L", "L_tail", "L1", "L1_tail", "D", "D_tail", "R", "R_tail",
                 "E", "E_tail", "residual"};
  out.meta = {{"tol", Cell::num(tol)}};
  for (const std::string& ts : cfg.ts) {
    const Real t = parse_real(ts, "--t");
    const Decomposition d = check_decomposition(a, t, tol, opt);
    out.rows.push_back({Cell::num(t),
                        Cell::num(d.log_gf.value), Cell::num(d.log_gf.tail_bound, +1),
                        Cell::num(d.euler_part.value), Cell::num(d.euler_part.tail_bound, +1),
                        Cell::num(d.divisor_part.value), Cell::num(d.divisor_part.tail_bound, +1),
                        Cell::num(d.sawtooth_part.value), Cell::num(d.sawtooth_part.tail_bound, +1),
                        Cell::num(d.fractional_part.value), Cell::num(d.fractional_part.tail_bound, +1),
                        Cell::num(d.residual, +1)});
  }
  return out;
}

Table cmd_sums(const Config& cfg) {
  const Alpha a = load_alpha(cfg);
  if (cfg.xs.empty()) throw DomainError("cli", "give --x or --xs");
  Table out;
  if (cfg.what == "S") {
    std::vector<Real> xs;
    for (const auto& s : cfg.xs) xs.push_back(parse_real(s, "--x"));
    const auto recs = discrepancy_profile(a, xs, cfg.precision_bits);
    out.columns = {"x", "S", "ostrowski_bound"};
    out.meta = {{"what", Cell::str("S")},
                {"quotient_bound", a.quotient_bound() ? Cell::integer(*a.quotient_bound()) : Cell::null()},
                {"conditional", Cell::boolean(a.quotient_bound_is_conditional())}};
    for (const auto& r : recs) {
      out.rows.push_back({Cell::num(r.x), Cell::num(r.s_value), real_or_null(r.ostrowski_bound)});
    }
    return out;
  }
  if (cfg.what == "J") {
    const Real s = parse_real(cfg.s, "--s");
    std::vector<std::uint64_t> Ls;
    for (const auto& x : cfg.xs) {
      const Real v = parse_real(x, "--x");
      if (v < 1) throw DomainError("cli", "--x must be >= 1");
      Ls.push_back(static_cast<std::uint64_t>(floor(v)));
    }
    const auto vals = j_partial_profile(a, s, Ls, cfg.precision_bits);
    out.columns = {"L", "J"};
    out.meta = {{"what", Cell::str("J")}, {"s", Cell::num(s)}};
    for (std::size_t i = 0; i < Ls.size(); ++i) {
      out.rows.push_back({Cell::integer(static_cast<std::int64_t>(Ls[i])), Cell::num(vals[i])});
    }
    return out;
  }
  throw ParseError("cli", "--what must be S or J");
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Resource:
    case ErrorKind::Tolerance:
    case ErrorKind::Bracket: return 2;
    default: return 1;
  }
}

void envelope(std::ostream& err, const std::string& kind, const std::string& message,
              const std::string& module) {
  ordered_json e;
  e["error_kind"] = kind;
  e["message"] = message;
  e["module"] = module;
  err << e.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Partitions into Beatty-sequence parts: exact counts and asymptotics", "bpart"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> single_n;
  std::optional<std::string> single_t, single_x;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha_spec, "sqrt:<d>, surd:<p>,<q>,<r>,<d>, decimal:<digits>, e, pi")
        ->required();
    sub->add_option("--format", cfg.format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--precision-bits", cfg.precision_bits, "bits for fractional parts")
        ->check(CLI::Range(53u, kMaxFracBits));
    sub->add_flag("--full-precision", cfg.full_precision, "print floats with 36 digits (as strings in JSON)");
    sub->add_option("--quotient-bound", cfg.quotient_bound, "assumed bound A on partial quotients");
  };
  auto n_opts = [&](CLI::App* sub) {
    auto* one = sub->add_option("--n", single_n, "single n");
    auto* many = sub->add_option("--ns", cfg.ns, "comma-separated n values")->delimiter(',');
    one->excludes(many);
  };
  auto kind_opt = [&](CLI::App* sub) {
    sub->add_option("--kind", cfg.kind, "p (unrestricted) or q (distinct parts)")
        ->check(CLI::IsMember({"p", "q"}));
  };

  auto* count = app.add_subcommand("count", "exact partition counts");
  common(count);
  kind_opt(count);
  n_opts(count);

  auto* table = app.add_subcommand("table", "exact counts against the asymptotic formulas");
  common(table);
  kind_opt(table);
  n_opts(table);
  table->add_option("--N", cfg.N, "truncation for Lambda (p only)");

  auto* lambda = app.add_subcommand("lambda", "enclosure of the constant Lambda");
  common(lambda);
  lambda->add_option("--N", cfg.N, "truncation point");

  auto* saddle = app.add_subcommand("saddle", "saddle-point roots and estimates");
  common(saddle);
  kind_opt(saddle);
  n_opts(saddle);

  auto* decomp = app.add_subcommand("check-decomposition", "split log generating function into five parts");
  common(decomp);
  {
    auto* one = decomp->add_option("--t", single_t, "single t");
    auto* many = decomp->add_option("--ts", cfg.ts, "comma-separated t values")->delimiter(',');
    one->excludes(many);
  }
  decomp->add_option("--tol", cfg.tol, "tolerance per component");

  auto* sums = app.add_subcommand("sums", "discrepancy sums S(x) or partial sums of J(s)");
  common(sums);
  {
    auto* one = sums->add_option("--x", single_x, "single x (for J: last index)");
    auto* many = sums->add_option("--xs", cfg.xs, "comma-separated x values")->delimiter(',');
    one->excludes(many);
  }
  sums->add_option("--what", cfg.what, "S or J")->check(CLI::IsMember({"S", "J"}));
  sums->add_option("--s", cfg.s, "exponent for J");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    envelope(err, "ParseError", e.what(), "cli");
    return 1;
  }
  if (single_n) cfg.ns = {*single_n};
  if (single_t) cfg.ts = {*single_t};
  if (single_x) cfg.xs = {*single_x};

  try {
    Table t;
    std::string name;
    if (count->parsed()) {
      name = "count";
      t = cmd_count(cfg);
    } else if (table->parsed()) {
      name = "table";
      t = cmd_table(cfg);
    } else if (lambda->parsed()) {
      name = "lambda";
      t = cmd_lambda(cfg);
    } else if (saddle->parsed()) {
      name = "saddle";
      t = cmd_saddle(cfg);
    } else if (decomp->parsed()) {
      name = "check-decomposition";
      t = cmd_decomposition(cfg);
    } else {
      name = "sums";
      t = cmd_sums(cfg);
    }
    emit(t, cfg, name, out);
  } catch (const Error& e) {
    envelope(err, to_string(e.kind()), e.what(), e.module());
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    envelope(err, "ResourceError", "out of memory", "cli");
    return 2;
  }
  return 0;
}

}  // namespace bpart::cli
