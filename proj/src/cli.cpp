#include "cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "eggshell/commutator.hpp"
#include "eggshell/domain.hpp"
#include "eggshell/error.hpp"
#include "eggshell/gammakit.hpp"
#include "eggshell/io.hpp"
#include "eggshell/lattice.hpp"
#include "eggshell/summability.hpp"
#include "eggshell/zetalab.hpp"

namespace eggshell::cli {

using nlohmann::json;

namespace {

const char* kCsvHelp = R"(CSV columns (JSON is canonical; CSV carries the table plus '# key=value' lines):
  norm              index,log_norm,norm,mc_estimate,mc_stderr
  eig               index,degree,eigenvalue
  shells            n,shell_sum
  threshold         step,p,slope
  module-threshold  label,value
  zeta              n,shell_sum
  verify-gamma      expansion,a,b,order,r3,x,error)";

json defaults_json() {
  return {{"margin", 0.15},
          {"window", 0.5},
          {"tol", 0.1},
          {"cap", 2e8},
          {"N_by_dimension", {{"1", 100000}, {"2", 3000}, {"3", 600}, {"4", 150}, {"5+", 60}}},
          {"zeta_N", 5000}};
}

// NaN and infinities have no JSON form; they are written as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

SummationConfig summation_config(const RunConfig& c) {
  SummationConfig s;
  s.window_fraction = c.window;
  s.margin = c.margin;
  s.tol = c.tol;
  s.workers = c.workers == 0 ? default_workers() : c.workers;
  if (!(c.cap >= 1.0)) throw DomainError("--cap must be at least 1");
  s.max_terms = static_cast<std::uint64_t>(c.cap);
  s.allow_high_dimension = c.allow_high_dimension;
  return s;
}

void validate_common(const RunConfig& c) {
  if (!(c.window > 0.0 && c.window < 1.0)) throw DomainError("--window must lie in (0, 1)");
  if (!(c.margin > 0.0)) throw DomainError("--margin must be positive");
  if (c.format != "json" && c.format != "csv") throw DomainError("--format must be json or csv");
  if (c.p && !(*c.p > 0.0)) throw DomainError("--p must be positive");
}

DomainSpec need_domain(const RunConfig& c) {
  if (c.domain.empty()) throw DomainError("--domain is required for '" + c.command + "'");
  return io::domain_from_json(io::load_json_argument(c.domain));
}

CommutatorKind need_kind(const RunConfig& c, const DomainSpec& dom) {
  if (c.kind.empty()) throw DomainError("--kind is required for '" + c.command + "'");
  CommutatorKind k = parse_kind(c.kind);
  validate(dom, k);
  return k;
}

Index degree_for(const RunConfig& c, const DomainSpec& dom) {
  return c.N ? static_cast<Index>(*c.N) : default_degree(dom.dimension());
}

std::vector<Index> parse_index(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw DomainError("malformed --index '" + text + "' (expected e.g. 1,0,2)");
    }
  }
  return out;
}

json run_norm(const RunConfig& c) {
  const DomainSpec dom = need_domain(c);
  if (c.index.empty()) throw DomainError("--index is required for 'norm'");
  const MultiIndex idx = MultiIndex::from_flat(dom, parse_index(c.index));
  const double ln = log_norm(dom, idx);
  json r = {{"index", idx.flat()}, {"log_norm", num(ln)}, {"norm", num(std::exp(ln))}};
  if (c.samples > 0) {
    const auto mc = mc_norm_oracle(dom, idx, c.samples, c.seed);
    r["mc_estimate"] = num(mc.estimate);
    r["mc_stderr"] = num(mc.standard_error);
  }
  return r;
}

json run_eig(const RunConfig& c, const SummationConfig& s) {
  const DomainSpec dom = need_domain(c);
  const CommutatorKind kind = need_kind(c, dom);
  if (c.degree_from < 0 || c.degree_to < c.degree_from)
    throw DomainError("--from/--to must satisfy 0 <= from <= to");
  std::uint64_t count = 0;
  for (Index n = c.degree_from; n <= c.degree_to; ++n)
    count += lattice::shell_size(n, dom.dimension());
  if (count > s.max_terms)
    throw ResourceError("eig: " + std::to_string(count) + " rows exceed the cap of " +
                        std::to_string(s.max_terms));
  json rows = json::array();
  std::vector<Index> buf(dom.dimension());
  for (Index n = c.degree_from; n <= c.degree_to; ++n)
    lattice::for_each_weak_composition(n, buf, [&](std::span<const Index> idx) {
      rows.push_back({{"index", std::vector<Index>(idx.begin(), idx.end())},
                      {"degree", n},
                      {"eigenvalue", num(eigenvalue(dom, kind, idx))}});
    });
  return {{"rows", rows}};
}

json run_shells(const RunConfig& c, const SummationConfig& s) {
  const DomainSpec dom = need_domain(c);
  const CommutatorKind kind = need_kind(c, dom);
  if (!c.p) throw DomainError("--p is required for 'shells'");
  const Index N = degree_for(c, dom);
  SummationReport rep = shell_sums(dom, kind, *c.p, N, s);
  finalize(rep, s);
  json shells = json::array();
  for (double t : rep.shell_sums) shells.push_back(num(t));
  return {{"N", N},
          {"p", rep.p},
          {"shell_sums", shells},
          {"total", num(rep.total)},
          {"slope", num(rep.slope)},
          {"slope_stderr", num(rep.slope_stderr)},
          {"verdict", to_string(*rep.verdict)}};
}

json run_threshold(const RunConfig& c, const SummationConfig& s) {
  const DomainSpec dom = need_domain(c);
  const CommutatorKind kind = need_kind(c, dom);
  const Index N = degree_for(c, dom);
  const double predicted = predicted_threshold(dom, kind);
  const double lo = c.p_lo.value_or(0.5 * predicted);
  const double hi = c.p_hi.value_or(2.0 * predicted);
  const ThresholdSearch search = find_threshold(dom, kind, lo, hi, c.tol, N, s);

  // Reuses the bisection's lattice for the two probe verdicts.
  const ShellEvaluator eval(dom, kind, N, s);
  json probes = json::array();
  for (double factor : {0.8, 1.25}) {
    SummationReport rep = eval.report(factor * predicted);
    finalize(rep, s);
    probes.push_back({{"p", rep.p},
                      {"slope", num(rep.slope)},
                      {"slope_stderr", num(rep.slope_stderr)},
                      {"verdict", to_string(*rep.verdict)}});
  }
  json steps = json::array();
  for (const auto& st : search.steps) steps.push_back({{"p", st.p}, {"slope", num(st.slope)}});
  return {{"N", N},
          {"predicted", predicted},
          {"empirical", search.estimate},
          {"bracket", {search.p_lo, search.p_hi}},
          {"agrees", std::abs(search.estimate - predicted) <= std::max(c.tol, 0.1 * predicted)},
          {"steps", steps},
          {"probes", probes}};
}

json run_module_threshold(const RunConfig& c) {
  const DomainSpec dom = need_domain(c);
  const ModuleThreshold mt = module_threshold(dom);
  json breakdown = json::array();
  for (const auto& t : mt.breakdown) breakdown.push_back({{"label", t.label}, {"value", t.value}});
  double max_kind = 0.0;
  for (const auto& k : all_kinds(dom)) max_kind = std::max(max_kind, predicted_threshold(dom, k));
  return {{"value", mt.value},
          {"dimension", mt.dimension},
          {"q", mt.q},
          {"breakdown", breakdown},
          {"max_over_kinds", max_kind}};
}

json run_zeta(const RunConfig& c, const SummationConfig& s) {
  if (c.spec.empty()) throw DomainError("--spec is required for 'zeta'");
  const zeta::ZetaSeriesSpec spec = io::zeta_from_json(io::load_json_argument(c.spec));
  const Index N = c.N ? static_cast<Index>(*c.N) : 5000;
  const zeta::FamilyInfo fam = zeta::family_of(spec);
  const zeta::ZetaReport rep = zeta::brute_shell_sums(spec, N, s);
  json shells = json::array();
  for (double t : rep.shell_sums) shells.push_back(num(t));
  return {{"N", N},
          {"critical_b", zeta::critical_b(spec)},
          {"family", zeta::to_string(fam.family)},
          {"side_condition", fam.side_condition},
          {"sharp", zeta::is_sharp(fam)},
          {"method", rep.method},
          {"slope", num(rep.slope)},
          {"slope_stderr", num(rep.slope_stderr)},
          {"verdict", to_string(rep.verdict)},
          {"shell_sums", shells}};
}

json run_verify_gamma(const RunConfig& c) {
  using namespace gammakit;
  if (c.r3 != "composed" && c.r3 != "printed")
    throw DomainError("--r3 must be composed or printed");
  const R3Coefficient r3 = c.r3 == "printed" ? R3Coefficient::printed : R3Coefficient::composed;
  std::vector<ExpansionKind> kinds;
  if (!c.expansion.empty()) {
    const Expansion e = parse_expansion(c.expansion);
    const ExpansionKind probe{e, c.a, 0.0};
    kinds.push_back(ExpansionKind::make(e, c.a, probe.uses_b() ? c.b.value_or(1.3) : c.b));
  } else {
    for (Expansion e : {Expansion::R1, Expansion::R2, Expansion::R3, Expansion::R4, Expansion::R5}) {
      const ExpansionKind probe{e, c.a, 0.0};
      kinds.push_back(ExpansionKind::make(e, c.a, probe.uses_b() ? std::optional(c.b.value_or(1.3))
                                                                 : std::nullopt));
    }
  }
  std::vector<double> xs;
  for (double x = 64.0; x <= 4096.0; x *= 2.0) xs.push_back(x);
  json rows = json::array();
  auto add = [&](const ExpansionKind& k, R3Coefficient which) {
    const DecayReport rep = verify_expansion(k, c.order, xs, which);
    json errs = json::array();
    for (double e : rep.errors) errs.push_back(num(e));
    rows.push_back({{"expansion", to_string(k.tag)},
                    {"a", k.a},
                    {"b", k.uses_b() ? json(k.b) : json(nullptr)},
                    {"order", rep.order},
                    {"r3", which == R3Coefficient::printed ? "printed" : "composed"},
                    {"coefficients", rep.coefficients},
                    {"xs", rep.xs},
                    {"errors", errs},
                    {"decay_exponent", num(rep.decay_exponent)},
                    {"expected_rate", rep.decays_at_expected_rate()}});
  };
  for (const auto& k : kinds) add(k, k.tag == Expansion::R3 ? r3 : R3Coefficient::composed);
  // The printed R3 coefficient next to the composed one at a = b = 1.
  if (c.expansion.empty() && c.order == 2) {
    const auto unit = ExpansionKind::make(Expansion::R3, 1.0, 1.0);
    add(unit, R3Coefficient::composed);
    add(unit, R3Coefficient::printed);
  }
  return {{"rows", rows}};
}

std::string csv_cell(const json& v) {
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + csv_cell(e);
    return s;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

json config_to_json(const RunConfig& c) {
  json j = {{"command", c.command}, {"kind", c.kind},     {"index", c.index},
            {"from", c.degree_from}, {"to", c.degree_to}, {"tol", c.tol},
            {"margin", c.margin},   {"window", c.window}, {"seed", c.seed},
            {"samples", c.samples}, {"workers", c.workers == 0 ? default_workers() : c.workers},
            {"format", c.format},   {"cap", c.cap},       {"allow_high_dimension", c.allow_high_dimension},
            {"expansion", c.expansion}, {"a", c.a},      {"order", c.order},
            {"r3", c.r3}};
  j["domain"] = c.domain.empty() ? json(nullptr) : io::load_json_argument(c.domain);
  j["spec"] = c.spec.empty() ? json(nullptr) : io::load_json_argument(c.spec);
  j["p"] = c.p ? json(*c.p) : json(nullptr);
  j["N"] = c.N ? json(*c.N) : json(nullptr);
  j["p_lo"] = c.p_lo ? json(*c.p_lo) : json(nullptr);
  j["p_hi"] = c.p_hi ? json(*c.p_hi) : json(nullptr);
  j["b"] = c.b ? json(*c.b) : json(nullptr);
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    if (!j.at("domain").is_null()) c.domain = j.at("domain").dump();
    if (!j.at("spec").is_null()) c.spec = j.at("spec").dump();
    c.kind = j.at("kind").get<std::string>();
    c.index = j.at("index").get<std::string>();
    c.degree_from = j.at("from").get<long long>();
    c.degree_to = j.at("to").get<long long>();
    c.tol = j.at("tol").get<double>();
    c.margin = j.at("margin").get<double>();
    c.window = j.at("window").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.samples = j.at("samples").get<std::uint64_t>();
    c.workers = j.at("workers").get<unsigned>();
    c.format = j.at("format").get<std::string>();
    c.cap = j.at("cap").get<double>();
    c.allow_high_dimension = j.at("allow_high_dimension").get<bool>();
    c.expansion = j.at("expansion").get<std::string>();
    c.a = j.at("a").get<double>();
    c.order = j.at("order").get<int>();
    c.r3 = j.at("r3").get<std::string>();
    if (!j.at("p").is_null()) c.p = j.at("p").get<double>();
    if (!j.at("N").is_null()) c.N = j.at("N").get<long long>();
    if (!j.at("p_lo").is_null()) c.p_lo = j.at("p_lo").get<double>();
    if (!j.at("p_hi").is_null()) c.p_hi = j.at("p_hi").get<double>();
    if (!j.at("b").is_null()) c.b = j.at("b").get<double>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("replay: report config is incomplete: ") + e.what());
  }
  return c;
}

json execute(const RunConfig& c) {
  validate_common(c);
  const SummationConfig s = summation_config(c);
  json result;
  if (c.command == "norm")
    result = run_norm(c);
  else if (c.command == "eig")
    result = run_eig(c, s);
  else if (c.command == "shells")
    result = run_shells(c, s);
  else if (c.command == "threshold")
    result = run_threshold(c, s);
  else if (c.command == "module-threshold")
    result = run_module_threshold(c);
  else if (c.command == "zeta")
    result = run_zeta(c, s);
  else if (c.command == "verify-gamma")
    result = run_verify_gamma(c);
  else
    throw DomainError("unknown command '" + c.command + "'");
  return {{"command", c.command},
          {"config", config_to_json(c)},
          {"defaults", defaults_json()},
          {"result", result}};
}

std::string to_csv(const json& report) {
  std::ostringstream out;
  const json& r = report.at("result");
  const std::string cmd = report.at("command").get<std::string>();
  out << "# command=" << cmd << "\n";
  for (const auto& [k, v] : report.at("defaults").items()) out << "# default." << k << "=" << csv_cell(v) << "\n";
  for (const auto& [k, v] : r.items())
    if (!v.is_array() && !v.is_object()) out << "# " << k << "=" << csv_cell(v) << "\n";

  auto table = [&](const std::vector<std::string>& cols, const json& rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row.at(cols[i])) : "");
      out << "\n";
    }
  };
  auto shells = [&] {
    out << "n,shell_sum\n";
    const json& t = r.at("shell_sums");
    for (std::size_t n = 0; n < t.size(); ++n) out << n << "," << csv_cell(t[n]) << "\n";
  };
  if (cmd == "norm") {
    table({"index", "log_norm", "norm", "mc_estimate", "mc_stderr"}, json::array({r}));
  } else if (cmd == "eig") {
    table({"index", "degree", "eigenvalue"}, r.at("rows"));
  } else if (cmd == "shells" || cmd == "zeta") {
    shells();
  } else if (cmd == "threshold") {
    out << "step,p,slope\n";
    const json& st = r.at("steps");
    for (std::size_t i = 0; i < st.size(); ++i)
      out << i << "," << csv_cell(st[i].at("p")) << "," << csv_cell(st[i].at("slope")) << "\n";
  } else if (cmd == "module-threshold") {
    table({"label", "value"}, r.at("breakdown"));
  } else if (cmd == "verify-gamma") {
    out << "expansion,a,b,order,r3,x,error\n";
    for (const auto& row : r.at("rows"))
      for (std::size_t i = 0; i < row.at("xs").size(); ++i)
        out << csv_cell(row.at("expansion")) << "," << csv_cell(row.at("a")) << ","
            << csv_cell(row.at("b")) << "," << csv_cell(row.at("order")) << ","
            << csv_cell(row.at("r3")) << "," << csv_cell(row.at("xs")[i]) << ","
            << csv_cell(row.at("errors")[i]) << "\n";
  }
  return out.str();
}

int main(int argc, char** argv) {
  CLI::App app{"Bergman-space commutator summability on egg domains"};
  app.footer(kCsvHelp);
  app.require_subcommand(0, 1);

  RunConfig c;
  std::string replay;
  long long N_value = 0;
  double p_value = 0, p_lo = 0, p_hi = 0, b_value = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--domain", c.domain, "domain spec: JSON file path or inline JSON");
    sub->add_option("--kind", c.kind, "commutator: self:k:j | within:k:j:l | between:k:j:k2:l");
    sub->add_option("--p", p_value, "Schatten exponent");
    sub->add_option("--N", N_value, "largest total degree (default depends on dimension)");
    sub->add_option("--tol", c.tol, "bisection tolerance")->capture_default_str();
    sub->add_option("--margin", c.margin, "verdict margin around slope -1")->capture_default_str();
    sub->add_option("--window", c.window, "tail window fraction")->capture_default_str();
    sub->add_option("--seed", c.seed, "Monte-Carlo seed")->capture_default_str();
    sub->add_option("--workers", c.workers, "worker threads (0: EGGSHELL_WORKERS or core count)");
    sub->add_option("--format", c.format, "json | csv")->capture_default_str();
    sub->add_option("--cap", c.cap, "maximum eigenvalue evaluations")->capture_default_str();
    sub->add_flag("--allow-high-dimension", c.allow_high_dimension, "permit d >= 4 lattices");
    sub->add_option("--p-lo", p_lo, "lower end of the threshold bracket");
    sub->add_option("--p-hi", p_hi, "upper end of the threshold bracket");
  };

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"norm", "log squared norm of a monomial"},
      {"eig", "eigenvalue table over a degree range"},
      {"shells", "shell sums, tail slope and verdict for one p"},
      {"threshold", "predicted and empirical cut-off for one commutator"},
      {"module-threshold", "cut-off of the whole module with its breakdown"},
      {"zeta", "critical exponent, family and brute-force verdict of a zeta series"},
      {"verify-gamma", "error decay of the Gamma-ratio expansions"},
  };
  std::vector<CLI::App*> apps;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    apps.push_back(sub);
  }
  apps[0]->add_option("--index", c.index, "flat multi-index, e.g. 1,0,2");
  apps[0]->add_option("--samples", c.samples, "Monte-Carlo samples (0: skip the oracle)");
  apps[1]->add_option("--from", c.degree_from, "smallest total degree")->capture_default_str();
  apps[1]->add_option("--to", c.degree_to, "largest total degree")->capture_default_str();
  apps[5]->add_option("--spec", c.spec, "zeta spec: JSON file path or inline JSON");
  apps[6]->add_option("--expansion", c.expansion, "R1..R5 (default: all)");
  apps[6]->add_option("--a", c.a, "parameter a")->capture_default_str();
  apps[6]->add_option("--b", b_value, "parameter b");
  apps[6]->add_option("--order", c.order, "truncation order 0..2")->capture_default_str();
  apps[6]->add_option("--r3", c.r3, "R3 second coefficient: composed | printed")
      ->capture_default_str();
  app.add_option("--replay", replay, "JSON report whose embedded config is rerun");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (!replay.empty()) {
      const json report = io::load_json_argument(replay);
      if (!report.contains("config")) throw DomainError("replay: report has no 'config' field");
      c = config_from_json(report.at("config"));
    } else {
      CLI::App* chosen = nullptr;
      for (auto* s : apps)
        if (s->parsed()) chosen = s;
      if (!chosen) {
        std::cerr << app.help();
        return kUsage;
      }
      c.command = chosen->get_name();
      if (chosen->count("--p")) c.p = p_value;
      if (chosen->count("--N")) c.N = N_value;
      if (chosen->count("--p-lo")) c.p_lo = p_lo;
      if (chosen->count("--p-hi")) c.p_hi = p_hi;
      if (chosen->get_name() == "verify-gamma" && chosen->count("--b")) c.b = b_value;
    }
    const json report = execute(c);
    if (c.format == "csv")
      std::cout << to_csv(report);
    else
      std::cout << report.dump(2) << "\n";
    return kOk;
  } catch (const DomainError& e) {
    std::cerr << "error: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const BracketError& e) {
    std::cerr << "error: invalid bracket: " << e.what() << "\n";
    return kBracket;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace eggshell::cli
