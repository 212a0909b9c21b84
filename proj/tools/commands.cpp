#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "json_io.hpp"
#include "scx/entropy.hpp"
#include "scx/exponents.hpp"
#include "scx/logmath.hpp"
#include "scx/matrix.hpp"
#include "scx/one_shot.hpp"
#include "scx/oracles.hpp"
#include "scx/protocols.hpp"
#include "scx/types.hpp"

namespace scx::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidInput("not a number: '" + s + "'");
  return v;
}

// JSON numbers cannot hold inf/nan; those go out as strings.
Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> footer;  // "key=value" lines
  Json extra = Json::object();

  std::string csv(const std::string& command) const {
    std::ostringstream s;
    s << "# scx " << command << " v1\n";
    for (std::size_t i = 0; i < columns.size(); ++i) s << (i ? "," : "") << columns[i];
    s << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s << ",";
        if (const auto* d = std::get_if<double>(&r[i])) s << format_number(*d);
        else if (const auto* n = std::get_if<long long>(&r[i])) s << *n;
        else s << std::get<std::string>(r[i]);
      }
      s << "\n";
    }
    for (const auto& f : footer) s << "# " << f << "\n";
    return s.str();
  }

  std::string json(const std::string& command) const {
    Json j = extra;
    j["command"] = command;
    j["version"] = 1;
    Json rs = Json::array();
    for (const auto& r : rows) {
      Json o = Json::object();
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (const auto* d = std::get_if<double>(&r[i])) o[columns[i]] = json_number(*d);
        else if (const auto* n = std::get_if<long long>(&r[i])) o[columns[i]] = *n;
        else o[columns[i]] = std::get<std::string>(r[i]);
      }
      rs.push_back(o);
    }
    j["rows"] = rs;
    return j.dump(2) + "\n";
  }

  CommandOutput render(const RunConfig& c) const {
    return {c.format == "json" ? json(c.command) : csv(c.command), kOk};
  }
};

template <class T>
void check_increasing(const std::vector<T>& g, const char* name) {
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1]))
      throw InvalidInput(std::string(name) + " must be strictly increasing");
}

const JointDist& need_joint(const Input& in, const std::string& what) {
  if (const auto* j = std::get_if<JointDist>(&in)) return *j;
  throw InvalidInput(what + " needs a joint distribution input ('matrix')");
}

const Dist& need_dist(const Input& in, const std::string& what) {
  if (const auto* d = std::get_if<Dist>(&in)) return *d;
  throw InvalidInput(what + " needs a single distribution input ('weights')");
}

Input need_input(const RunConfig& c) {
  if (c.input.empty()) throw InvalidInput("--input is required");
  return load_input(c.input);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::vector<double> parse_real_grid(const std::string& spec) {
  std::vector<std::string> parts = split(spec, ':');
  if (parts.size() == 3) {
    double a = to_double(parts[0]), b = to_double(parts[1]), h = to_double(parts[2]);
    if (!(h > 0)) throw InvalidInput("grid step must be > 0");
    std::vector<double> g;
    long long count = static_cast<long long>(std::floor((b - a) / h + 1e-9));
    for (long long i = 0; i <= count; ++i) g.push_back(a + static_cast<double>(i) * h);
    return g;
  }
  if (parts.size() != 1) throw InvalidInput("grid: use 'a,b,c' or 'start:stop:step'");
  std::vector<double> g;
  for (const std::string& s : split(spec, ','))
    if (!s.empty()) g.push_back(to_double(s));
  return g;
}

std::vector<int> parse_int_grid(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_real_grid(spec)) {
    if (v != std::floor(v)) throw InvalidInput("integer grid expected");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void validate(const RunConfig& c) {
  check_increasing(c.r_grid, "--r-grid");
  check_increasing(c.n_grid, "--n-grid");
  check_increasing(c.alpha_grid, "--alpha-grid");
  if (c.format != "csv" && c.format != "json")
    throw InvalidInput("--format must be csv or json");
  if (c.command == "exponent" && c.r_grid.empty()) throw InvalidInput("--r-grid is empty");
  if (c.command == "converge" && c.n_grid.empty()) throw InvalidInput("--n-grid is empty");
  if (c.command == "protocol" && c.protocol == "split" && c.trials > 0 && !c.seed)
    throw InvalidInput("--seed is required for Monte-Carlo runs (--trials > 0)");
}

CommandOutput cmd_measures(const RunConfig& c) {
  Input in = need_input(c);
  std::vector<double> alphas = c.alpha_grid;
  if (alphas.empty()) alphas = {0.5, 1.0, 2.0};
  Table t{{"quantity", "parameter", "value"}, {}, {}};
  auto row = [&](const std::string& q, double p, double v) {
    t.rows.push_back({q, p, v});
  };
  const double none = std::nan("");
  if (const auto* d = std::get_if<Dist>(&in)) {
    row("shannon_entropy", none, shannon_entropy(*d));
    for (double a : alphas) row("renyi_entropy", a, renyi_entropy(*d, a));
  } else if (const auto* j = std::get_if<JointDist>(&in)) {
    row("entropy_R", none, shannon_entropy(j->marginal_rows()));
    row("entropy_A", none, shannon_entropy(j->marginal_cols()));
    row("cond_entropy_A|R", none, cond_entropy(*j));
    row("mutual_info_R:A", none, mutual_info(*j));
    for (double a : alphas) {
      row("petz_cond_entropy_bar", a, petz_cond_entropy_bar(*j, a));
      row("petz_mutual_info", a, petz_mutual_info(*j, a).value);
    }
  } else {
    const HermitianOp& h = std::get<HermitianOp>(in);
    row("trace", none, h.trace());
    for (double a : alphas) row("renyi_entropy", a, renyi_entropy(h, a));
  }
  return t.render(c);
}

CommandOutput cmd_exponent(const RunConfig& c) {
  std::optional<Family> f = parse_family(c.family);
  if (!f) {
    std::string names;
    for (Family g : all_families()) names += std::string(names.empty() ? "" : ", ") + family_name(g);
    throw InvalidInput("unknown family '" + c.family + "' (expected one of: " + names + ")");
  }
  Input in = need_input(c);
  ExponentInput ein;
  if (const auto* d = std::get_if<Dist>(&in)) ein = *d;
  else ein = need_joint(in, std::string("family ") + c.family);
  ExponentCurve curve = exponent_curve(*f, ein, c.r_grid);
  Table t{{"r", "value", "witness_kind", "witness_param", "dual_value"}, {}, {}};
  for (std::size_t i = 0; i < curve.r.size(); ++i) {
    const ExponentValue& v = curve.values[i];
    t.rows.push_back({curve.r[i], v.value, std::string(to_string(v.witness.kind)),
                      v.witness.param, v.dual_value ? *v.dual_value : std::nan("")});
  }
  t.footer.push_back(std::string("family=") + family_name(*f));
  t.footer.push_back(std::string("monotone=") + (curve.monotone ? "true" : "false"));
  t.extra["family"] = family_name(*f);
  t.extra["monotone"] = curve.monotone;
  return t.render(c);
}

CommandOutput cmd_converge(const RunConfig& c) {
  if (c.r_grid.size() != 1) throw InvalidInput("converge needs exactly one rate (--r)");
  const double r = c.r_grid[0];
  Input in = need_input(c);
  Table t;
  if (c.family == "cond-trace-classical") {
    const JointDist& j = need_joint(in, c.family);
    double e = exp_cond_trace_classical(j, r).value;
    t.columns = {"n", "log2_one_minus_eps", "rate", "formula", "gap"};
    for (int n : c.n_grid) {
      OneShotResult o = eps_d_cond_iid(j, n, r);
      t.rows.push_back({static_cast<long long>(n), o.log2_one_minus, o.rate(n), e,
                        std::abs(o.rate(n) - e)});
    }
    t.footer.push_back("bound_kind=exact");
  } else if (c.family == "mutual-trace-fixed-sigma") {
    const JointDist& j = need_joint(in, c.family);
    double e = exp_mutual_trace_classical(j, r).value;
    Dist sigma = *eps_d_mutual_classical(j, std::max(r, 0.0)).sigma;
    t.columns = {"n", "log2_one_minus_eps", "rate", "formula", "gap"};
    for (int n : c.n_grid) {
      OneShotResult o = eps_d_mutual_iid_fixed_sigma(j, sigma, n, r);
      t.rows.push_back({static_cast<long long>(n), o.log2_one_minus, o.rate(n), e,
                        std::abs(o.rate(n) - e)});
    }
    t.footer.push_back("bound_kind=upper");
    t.extra["sigma"] = sigma.weights();
  } else if (c.family == "cond-pure-bounds") {
    const Dist& p = need_dist(in, c.family);
    double e = exp_cond_pure(SchmidtState(p), r).value;
    t.columns = {"n",         "log2_one_minus_eps_lower", "rate_lower",
                 "log2_one_minus_eps_upper", "rate_upper", "formula",
                 "gap_lower", "gap_upper"};
    for (int n : c.n_grid) {
      PureBounds b = eps_P_cond_pure_bounds(SchmidtState(p), n, r);
      t.rows.push_back({static_cast<long long>(n), b.lower.log2_one_minus, b.lower.rate(n),
                        b.upper.log2_one_minus, b.upper.rate(n), e,
                        std::abs(b.lower.rate(n) - e), std::abs(b.upper.rate(n) - e)});
    }
    t.footer.push_back("bound_kind=lower,upper");
  } else {
    throw InvalidInput("unknown converge family '" + c.family +
                       "' (expected cond-trace-classical, mutual-trace-fixed-sigma or "
                       "cond-pure-bounds)");
  }
  t.footer.push_back("r=" + format_number(r));
  t.extra["family"] = c.family;
  t.extra["r"] = r;
  return t.render(c);
}

namespace {

Json split_params_json(const SplitParams& s) {
  return {{"K", s.k_bits},
          {"R", s.r_bits},
          {"r", s.rate},
          {"n", s.n},
          {"lambda", s.lambda},
          {"copies", s.copies},
          {"bits_communicated", s.bits_communicated()}};
}

Json protocol_pa(const RunConfig& c, const Input& in) {
  const JointDist& j = need_joint(in, "protocol pa");
  if (!c.n || !c.zsize) throw InvalidInput("protocol pa needs --n and --zsize");
  FunctionOptimum best = pa_exhaustive_min(j, *c.n, *c.zsize);
  Json out{{"protocol", "pa"},
           {"params", {{"n", *c.n}, {"zsize", *c.zsize},
                       {"r", std::log2(static_cast<double>(*c.zsize)) / *c.n}}},
           {"exact_performance", best.performance},
           {"function", best.f.table()},
           {"functions_searched", best.searched}};
  if (!c.alpha_grid.empty()) {
    Json bounds = Json::array();
    double fid = pa_fidelity(j, best.f, *c.n);
    for (double a : c.alpha_grid)
      bounds.push_back({{"alpha", a}, {"fidelity_bound", pa_fidelity_bound(j, *c.n, *c.zsize, a)},
                        {"best_fidelity", fid}});
    out["converse"] = bounds;
  }
  return out;
}

Json protocol_ir(const RunConfig& c, const Input& in) {
  const Dist& p = need_dist(in, "protocol ir");
  if (!c.n || !c.zsize || c.type.empty())
    throw InvalidInput("protocol ir needs --n, --zsize and --type");
  TypeVector t(c.type);
  int which = c.which ? *c.which : ir_case(p, *c.n, *c.zsize, t);
  if (which == 0) throw InvalidInput("protocol ir: no case applies to this type");
  IrConstruction ir = ir_construct(p, *c.n, *c.zsize, t, which);
  double d = ir_performance(p, *c.n, ir.f);
  double bound = ir_case_bound(p, *c.n, *c.zsize, t, which);
  return {{"protocol", "ir"},
          {"params", {{"n", *c.n}, {"zsize", *c.zsize}, {"type", c.type}, {"case", which},
                      {"r", std::log2(static_cast<double>(*c.zsize)) / *c.n}}},
          {"exact_performance", d},
          {"complement", 1 - d},
          {"bound", bound},
          {"bound_holds", bound <= 1 - d},
          {"class_size", ir.class_size},
          {"block_length", ir.m},
          {"block_count", ir.k},
          {"clamped", ir.clamped}};
}

Json protocol_split(const RunConfig& c, const Input& in) {
  const JointDist& pp = need_joint(in, "protocol split");
  SplitParams s;
  if (c.k_bits && c.r_bits) s = split_params_from_bits(*c.k_bits, *c.r_bits);
  else if (c.n && c.r_grid.size() == 1) s = split_params(*c.n, c.r_grid[0]);
  else throw InvalidInput("protocol split needs --K and --R, or --n and --r");
  Dist q = c.q.empty() ? pp.marginal_cols() : Dist(c.q);
  JointDist exact = split_exact_output(pp, q, s);
  Json out{{"protocol", "split"}, {"params", split_params_json(s)},
           {"exact_output", to_json(exact)}};
  if (c.trials > 0) {
    SplitSimulation sim = split_simulate(pp, q, s, *c.seed, c.trials);
    Json emp{{"trials", sim.trials},
             {"seed", sim.seed},
             {"distance", total_variation(sim.empirical, exact)},
             {"failure_rate", sim.failure_rate()},
             {"output", to_json(sim.empirical)}};
    if (!sim.index_counts.empty() && sim.index_counts.size() <= 65) emp["index_counts"] = sim.index_counts;
    out["empirical"] = emp;
  }
  return out;
}

}  // namespace

CommandOutput cmd_protocol(const RunConfig& c) {
  Input in = need_input(c);
  Json out;
  if (c.protocol == "pa") out = protocol_pa(c, in);
  else if (c.protocol == "ir") out = protocol_ir(c, in);
  else if (c.protocol == "split") out = protocol_split(c, in);
  else throw InvalidInput("unknown protocol '" + c.protocol + "' (expected pa, ir or split)");
  return {out.dump(2) + "\n", kOk};
}

CommandOutput cmd_verify(const RunConfig& c) {
  VerifyOptions opt;
  if (c.seed) opt.seed = *c.seed;
  opt.scale = c.scale;
  std::vector<OracleReport> reports = run_verification_suite(opt);
  int failures = 0;
  for (const auto& r : reports) failures += !r.pass;
  CommandOutput out;
  out.code = failures ? kVerifyFailed : kOk;
  if (c.format == "csv") {
    Table t{{"target", "pass", "gap", "oracle_value", "impl_value", "tol_below", "tol_above", "instance"}, {}, {}};
    for (const auto& r : reports) {
      std::string inst = r.instance;
      for (char& ch : inst)
        if (ch == ',') ch = ';';
      t.rows.push_back({r.target, std::string(r.pass ? "true" : "false"), r.gap, r.oracle_value,
                        r.impl_value, r.tol_below, r.tol_above, inst});
    }
    t.footer.push_back("failures=" + std::to_string(failures));
    out.text = t.csv("verify");
    return out;
  }
  Json arr = Json::array();
  for (const auto& r : reports)
    arr.push_back({{"target", r.target},
                   {"instance", r.instance},
                   {"oracle_value", json_number(r.oracle_value)},
                   {"impl_value", json_number(r.impl_value)},
                   {"gap", json_number(r.gap)},
                   {"tol_below", json_number(r.tol_below)},
                   {"tol_above", json_number(r.tol_above)},
                   {"pass", r.pass}});
  out.text = arr.dump(2) + "\n";
  return out;
}

CommandOutput cmd_types(const RunConfig& c) {
  Input in = need_input(c);
  const Dist& p = need_dist(in, "types");
  if (!c.n) throw InvalidInput("types needs --n");
  TypeDecomposition d = decompose(p, *c.n);
  Table t{{"type", "log2_class_size", "log2_prob_per_seq", "log2_mass"}, {}, {}};
  for (const TypeRecord& r : d.records)
    t.rows.push_back({join_ints(r.type.counts()), r.log2_class_size, r.log2_iid_prob_per_seq,
                      r.log2_mass});
  t.footer.push_back("n=" + std::to_string(*c.n));
  return t.render(c);
}

CommandOutput dispatch(const RunConfig& c) {
  validate(c);
  if (c.command == "measures") return cmd_measures(c);
  if (c.command == "exponent") return cmd_exponent(c);
  if (c.command == "converge") return cmd_converge(c);
  if (c.command == "protocol") return cmd_protocol(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "types") return cmd_types(c);
  throw InvalidInput("unknown command '" + c.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"scx: smoothed-entropy exponents, one-shot smoothing and protocol simulators"};
  app.require_subcommand(1);
  RunConfig c;
  std::string r_grid, n_grid, alpha_grid, type, q;
  std::optional<double> r;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "csv or json")->capture_default_str();
    s->add_option("--out", c.out, "output file (default stdout)");
  };
  auto with_input = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--input", c.input, "input JSON file, '-' for stdin");
    if (required) o->required();
  };

  CLI::App* measures = app.add_subcommand("measures", "entropies and divergences over an alpha grid");
  with_input(measures);
  measures->add_option("--alpha-grid", alpha_grid, "alpha values, 'a,b,c' or 'start:stop:step'");
  common(measures);

  CLI::App* exponent = app.add_subcommand("exponent", "exponent curve of one family");
  with_input(exponent);
  exponent->add_option("--family", c.family, "family name")->required();
  exponent->add_option("--r-grid", r_grid, "rates");
  exponent->add_option("--r", r, "single rate");
  common(exponent);

  CLI::App* converge = app.add_subcommand("converge", "finite-n rates against the formula");
  with_input(converge);
  converge->add_option("--family", c.family,
                       "cond-trace-classical | mutual-trace-fixed-sigma | cond-pure-bounds")
      ->required();
  converge->add_option("--r", r, "rate")->required();
  converge->add_option("--n-grid", n_grid, "block lengths")->required();
  common(converge);

  CLI::App* protocol = app.add_subcommand("protocol", "exact and simulated protocol runs");
  protocol->add_option("name", c.protocol, "pa | ir | split")->required();
  with_input(protocol);
  protocol->add_option("--n", c.n, "block length");
  protocol->add_option("--zsize", c.zsize, "output alphabet size |Z|");
  protocol->add_option("--case", c.which, "ir construction case (1, 2 or 3)");
  protocol->add_option("--type", type, "type counts, comma separated");
  protocol->add_option("--K", c.k_bits, "split: K bits");
  protocol->add_option("--R", c.r_bits, "split: R bits");
  protocol->add_option("--r", r, "split: rate with --n");
  protocol->add_option("--q", q, "split: reference distribution q, comma separated");
  protocol->add_option("--alpha-grid", alpha_grid, "pa: alphas for the converse bound");
  protocol->add_option("--trials", c.trials, "Monte-Carlo trials (0 = exact only)");
  protocol->add_option("--seed", seed, "Monte-Carlo seed");
  common(protocol);

  CLI::App* verify = app.add_subcommand("verify", "oracle pairings and matrix inequality suite");
  verify->add_option("--seed", seed, "instance seed");
  verify->add_option("--scale", c.scale, "instance count multiplier")->capture_default_str();
  c.format = "json";
  common(verify);

  CLI::App* types = app.add_subcommand("types", "type-class decomposition of p^n");
  with_input(types);
  types->add_option("--n", c.n, "block length")->required();
  common(types);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* used = app.get_subcommands().front();
  c.command = used->get_name();
  if (c.command != "verify" && used->count("--format") == 0) c.format = "csv";
  if (const CLI::Option* o = used->get_option_no_throw("--seed"); o && o->count()) c.seed = seed;

  try {
    if (!r_grid.empty()) c.r_grid = parse_real_grid(r_grid);
    if (r) c.r_grid.push_back(*r);
    if (!n_grid.empty()) c.n_grid = parse_int_grid(n_grid);
    if (!alpha_grid.empty()) c.alpha_grid = parse_real_grid(alpha_grid);
    if (!type.empty()) c.type = parse_int_grid(type);
    if (!q.empty()) c.q = parse_real_grid(q);
    if (!r_grid.empty() && r) throw InvalidInput("give either --r or --r-grid");

    CommandOutput res = dispatch(c);
    if (c.out.empty()) {
      out << res.text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw InvalidInput("cannot write " + c.out);
      f << res.text;
    }
    if (res.code == kVerifyFailed) err << "verification failures detected\n";
    return res.code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace scx::cli
