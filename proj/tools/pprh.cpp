// pprh: critical L-values, period polynomials and unit-circle checks from the
// command line.

#include "pprh/errors.hpp"
#include "pprh/formdata.hpp"
#include "pprh/kernels.hpp"
#include "pprh/lfunc.hpp"
#include "pprh/periodpoly.hpp"
#include "pprh/perturb.hpp"
#include "pprh/rootlab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef PPRH_VERSION
#define PPRH_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;

namespace {

using namespace pprh;

enum class Format { Json, Csv, Svg };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int precision = 40;
  double tol_circle = rootlab::kDefaultCircleTolerance;
  long long max_norm = 0;  // 0: derived from the kernel decay
  std::string format = "json";
  std::string out;
  int jobs = 0;
  bool allow_gaps = false;
  std::string input_format = "json";

  // command-specific
  int degree = 2;
  int m = 0;
  std::optional<std::string> discriminant;
  std::vector<long long> discriminants;
  int max_m = 200;
  double resolution = 1e-3;
  double verdict_tol = 1e-6;
  std::string label;
  long long count = 0;
  std::vector<std::string> points;
};

Format parse_output_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "svg") return Format::Svg;
  throw DomainError("unknown output format '" + name + "'");
}

void require_format(const RunConfig& cfg, std::initializer_list<Format> allowed) {
  const Format f = parse_output_format(cfg.format);
  for (Format a : allowed)
    if (a == f) return;
  throw DomainError("format '" + cfg.format + "' is not available for " + cfg.command);
}

json header(const RunConfig& cfg, const Precision& prec) {
  return json{{"tool", "pprh"},
              {"version", PPRH_VERSION},
              {"command", cfg.command},
              {"precision_digits", prec.digits},
              {"tolerance", to_string(prec.tol, 6)}};
}

std::string str(const Real& x, int digits = 20) { return to_string(x, digits); }

json complex_json(const Complex& z, int digits = 20) {
  return json{{"re", str(z.real(), digits)}, {"im", str(z.imag(), digits)}};
}

// Either a fixture of critical values or an eigenform evaluated through the AFE.
struct Source {
  std::string label;
  int weight = 0;
  int degree = 1;
  int sign = 1;
  periodpoly::LambdaMap lambda;
  periodpoly::Source origin = periodpoly::Source::Fixture;
  Real tolerance;
  std::optional<lfunc::LFunctionSpec> spec;
  std::vector<lfunc::LambdaValue> values;  // evaluator output, empty for fixtures
  std::optional<formdata::LambdaFixture> fixture;
  std::vector<formdata::PrimeKey> missing_primes;
  long long max_norm = 0;
};

bool looks_like_fixture(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    return doc.is_object() && doc.contains("lambda");
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

long long resolve_max_norm(const RunConfig& cfg, const formdata::EigenformData& data, const Precision& prec) {
  if (cfg.max_norm > 0) return cfg.max_norm;
  const Real scale = data.effective_conductor_scale() / pow(two_pi(), data.field.degree);
  return lfunc::suggested_max_norm(data.field.degree, scale, data.weight, prec);
}

Source load(const RunConfig& cfg, const std::string& path, const Precision& prec) {
  const std::string text = formdata::read_file(path);
  Source src;
  if (cfg.input_format == "json" && looks_like_fixture(text)) {
    auto f = formdata::parse_lambda_fixture(text);
    src.label = f.label.empty() ? path : f.label;
    src.weight = f.weight;
    src.degree = f.degree;
    src.sign = f.sign;
    src.lambda = periodpoly::lambda_map(f);
    src.tolerance = f.tolerance;
    src.fixture = std::move(f);
    return src;
  }

  auto data = formdata::parse_eigenform(text, formdata::parse_format(cfg.input_format));
  src.max_norm = resolve_max_norm(cfg, data, prec);
  if (!data.prime_data.empty()) data = formdata::extend_hecke(data, {src.max_norm, cfg.allow_gaps});
  src.missing_primes = data.missing_primes;
  src.label = data.field.label.empty() ? path : data.field.label;
  src.weight = data.weight;
  src.degree = data.field.degree;
  src.sign = data.sign;
  src.origin = periodpoly::Source::Evaluator;
  src.spec = lfunc::LFunctionSpec::from_eigenform(data, cfg.allow_gaps);
  src.values = lfunc::critical_values(*src.spec, prec);
  src.lambda = periodpoly::lambda_map(src.values);
  src.tolerance = prec.tol;
  return src;
}

Real max_truncation(const Source& src) {
  Real worst = 0;
  for (const auto& v : src.values) worst = std::max(worst, v.truncation_bound);
  return worst;
}

json source_json(const Source& src) {
  json out{{"label", src.label},
           {"weight", src.weight},
           {"degree", src.degree},
           {"sign", src.sign},
           {"origin", periodpoly::to_string(src.origin)},
           {"lambda_tolerance", str(src.tolerance, 6)}};
  if (src.spec) {
    out["conductor_scale"] = str(src.spec->conductor_scale());
    out["max_norm"] = src.max_norm;
    out["complete_through"] = src.spec->complete_through();
    out["allow_gaps"] = src.spec->allow_gaps();
    out["max_truncation_bound"] = str(max_truncation(src), 6);
    json missing = json::array();
    for (const auto& key : src.missing_primes) missing.push_back({{"norm", key.norm}, {"index", key.index}});
    out["missing_primes"] = missing;
  }
  return out;
}

json lambda_json(const Source& src) {
  json arr = json::array();
  if (!src.values.empty()) {
    for (const auto& v : src.values)
      arr.push_back({{"s", str(v.s, 6)},
                     {"value", str(v.value, 30)},
                     {"truncation_bound", str(v.truncation_bound, 6)},
                     {"terms_used", v.terms_used}});
  } else {
    for (const auto& [s, v] : src.lambda) arr.push_back({{"s", s}, {"value", str(v.real(), 30)}});
  }
  return arr;
}

periodpoly::PeriodPolynomial r_of(const Source& src) {
  return periodpoly::build_r(src.lambda, src.weight, src.degree, src.origin, src.tolerance);
}

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw DomainError("cannot write " + cfg.out);
  file << body;
  if (!body.empty() && body.back() != '\n') file << '\n';
}

const std::string& single_input(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw DomainError(cfg.command + " takes exactly one input file");
  return cfg.inputs.front();
}

// Subcommands --------------------------------------------------------------

int cmd_lambda(const RunConfig& cfg, const Precision& prec) {
  require_format(cfg, {Format::Json});
  const Source src = load(cfg, single_input(cfg), prec);
  json doc = header(cfg, prec);
  doc["source"] = source_json(src);
  doc["critical_values"] = lambda_json(src);
  if (!cfg.points.empty()) {
    if (!src.spec) throw DomainError("--s needs an eigenform input, not a fixture");
    std::vector<Real> pts;
    for (const auto& p : cfg.points) pts.push_back(real_from_string(p));
    json extra = json::array();
    for (const auto& v : lfunc::lambda_values(*src.spec, pts, prec))
      extra.push_back({{"s", str(v.s, 20)},
                       {"value", str(v.value, 30)},
                       {"truncation_bound", str(v.truncation_bound, 6)},
                       {"terms_used", v.terms_used}});
    doc["values"] = extra;
  }
  emit(cfg, doc.dump(2));
  return 0;
}

int cmd_rpoly(const RunConfig& cfg, const Precision& prec) {
  require_format(cfg, {Format::Json});
  const Source src = load(cfg, single_input(cfg), prec);
  json doc = header(cfg, prec);
  doc["source"] = source_json(src);
  doc["polynomial"] = json::parse(periodpoly::serialize(r_of(src)));
  emit(cfg, doc.dump(2));
  return 0;
}

json roots_json(const rootlab::RootReport& report) { return json::parse(rootlab::to_json(report)); }

int cmd_check(const RunConfig& cfg, const Precision& prec) {
  require_format(cfg, {Format::Json});
  const Source src = load(cfg, single_input(cfg), prec);
  const auto r = r_of(src);
  const auto report = rootlab::find_roots(r, prec, cfg.tol_circle);
  const auto verdict = rootlab::circle_verdict(report, cfg.tol_circle);

  json doc = header(cfg, prec);
  doc["tol_circle"] = cfg.tol_circle;
  doc["source"] = source_json(src);
  doc["critical_values"] = lambda_json(src);
  json coeffs = json::array();
  for (const auto& c : r.coeffs) coeffs.push_back(complex_json(c));
  doc["r_coefficients"] = coeffs;
  doc["roots"] = roots_json(report);
  doc["all_on_circle"] = verdict.on_circle;
  doc["circle_margin"] = verdict.margin;

  try {
    const auto pq = periodpoly::build_pq(src.lambda, src.weight, src.degree, src.origin, src.tolerance);
    const auto margin = rootlab::rouche_margin(pq.q);
    doc["rouche"] = {{"max_value", margin.max_value}, {"argmax", margin.argmax}, {"certifies", margin.certifies}};
    doc["rq_identity_residual"] = str(periodpoly::check_rq_identity(r, pq.q, src.sign), 6);
  } catch (const ZeroTopLambda& e) {
    doc["rouche"] = {{"skipped", e.what()}};
  }

  if (src.weight == 4 || src.weight == 6) {
    const auto cert = rootlab::small_weight_certificate(src.lambda, src.weight, src.sign);
    json conds = json::array();
    for (const auto& c : cert.conditions)
      conds.push_back({{"name", c.name}, {"passed", c.passed}, {"lhs", str(c.lhs)}, {"rhs", str(c.rhs)}});
    doc["small_weight_certificate"] = {{"passed", cert.passed},
                                       {"conditions", conds},
                                       {"flags", cert.flags},
                                       {"expected_roots", cert.expected_roots},
                                       {"observed_roots", cert.observed_roots}};
  }

  std::map<int, Real> real_values;
  for (const auto& [s, v] : src.lambda) real_values[s] = v.real();
  const auto growth = lfunc::check_lambda_growth(real_values, src.weight, src.sign, src.tolerance * 10);
  doc["growth"] = {{"passed", growth.passed}, {"violations", growth.violations}};

  if (src.spec) {
    std::vector<Real> pts;
    for (int j = 1; j < src.weight; ++j) pts.emplace_back(j);
    const auto fe = lfunc::check_functional_equation(*src.spec, pts, prec, Real("1e-10"));
    doc["functional_equation"] = {{"max_residual", str(fe.max_residual, 6)},
                                  {"worst_point", str(fe.worst_point, 6)},
                                  {"truncation_bound", str(fe.truncation_bound, 6)},
                                  {"passed", fe.passed}};
  } else {
    const auto fe = lfunc::check_functional_equation(*src.fixture);
    doc["functional_equation"] = {{"max_residual", str(fe.max_residual, 6)}, {"passed", fe.passed}};
  }
  emit(cfg, doc.dump(2));
  return 0;
}

int cmd_bound(const RunConfig& cfg, const Precision& prec) {
  require_format(cfg, {Format::Json});
  std::optional<Real> disc;
  if (cfg.discriminant) disc = real_from_string(*cfg.discriminant);
  const auto report = rootlab::analytic_bound(cfg.degree, cfg.m, disc, prec);
  json doc = header(cfg, prec);
  doc["bound"] = json::parse(rootlab::to_json(report));
  emit(cfg, doc.dump(2));
  return 0;
}

int cmd_bound_table(const RunConfig& cfg, const Precision& prec) {
  require_format(cfg, {Format::Json, Format::Csv});
  if (cfg.discriminants.empty()) throw DomainError("bound-table needs --discriminants");
  const auto rows = rootlab::bound_threshold_table(cfg.degree, cfg.discriminants, prec, cfg.max_m);
  if (parse_output_format(cfg.format) == Format::Csv) {
    std::ostringstream csv;
    csv << "degree,discriminant,min_m\n";
    for (const auto& row : rows) csv << cfg.degree << ',' << row.discriminant << ',' << row.min_m << '\n';
    emit(cfg, csv.str());
    return 0;
  }
  json doc = header(cfg, prec);
  doc["degree"] = cfg.degree;
  doc["max_m"] = cfg.max_m;
  json arr = json::array();
  for (const auto& row : rows) arr.push_back({{"discriminant", row.discriminant}, {"min_m", row.min_m}});
  doc["rows"] = arr;
  emit(cfg, doc.dump(2));
  return 0;
}

int cmd_equidist(const RunConfig& cfg, const Precision& prec) {
  require_format(cfg, {Format::Json});
  const Source src = load(cfg, single_input(cfg), prec);
  const auto report = rootlab::find_roots(r_of(src), prec, cfg.tol_circle);
  json doc = header(cfg, prec);
  doc["tol_circle"] = cfg.tol_circle;
  doc["source"] = source_json(src);
  doc["angles"] = report.angles;
  doc["star_discrepancy"] = rootlab::angle_discrepancy(report);
  doc["all_on_circle"] = report.all_on_circle;
  emit(cfg, doc.dump(2));
  return 0;
}

int cmd_perturb(const RunConfig& cfg, const Precision& prec) {
  require_format(cfg, {Format::Json, Format::Csv});
  if (cfg.inputs.empty()) throw DomainError("perturb needs at least one input file");
  perturb::ScanOptions options;
  options.resolution = cfg.resolution;
  options.verdict_tol = cfg.verdict_tol;
  std::vector<perturb::CsvRow> rows;
  json results = json::array();
  for (const auto& path : cfg.inputs) {
    const Source src = load(cfg, path, prec);
    const auto res = perturb::parity_threshold_interval(r_of(src), prec, options);
    rows.push_back({src.weight, cfg.label.empty() ? src.label : cfg.label, res});
    results.push_back({{"source", source_json(src)},
                       {"t_low", res.t_low},
                       {"t_high", res.t_high},
                       {"low_saturated", res.low_saturated},
                       {"high_saturated", res.high_saturated},
                       {"scan_range", {res.scan_low, res.scan_high}},
                       {"resolution", res.resolution},
                       {"bisection_tol", res.bisection_tol},
                       {"verdict_tol", res.verdict_tol},
                       {"flip_points", res.flip_points}});
  }
  if (parse_output_format(cfg.format) == Format::Csv) {
    emit(cfg, perturb::to_csv(rows));
    return 0;
  }
  json doc = header(cfg, prec);
  doc["results"] = results;
  emit(cfg, doc.dump(2));
  return 0;
}

int cmd_tau_gen(const RunConfig& cfg, const Precision&) {
  require_format(cfg, {Format::Json});
  if (cfg.count < 1) throw DomainError("--count must be at least 1");
  emit(cfg, formdata::serialize(formdata::tau_series(cfg.count), formdata::DocumentFormat::Json));
  return 0;
}

int cmd_plot(const RunConfig& cfg, const Precision& prec) {
  const Source src = load(cfg, single_input(cfg), prec);
  const auto report = rootlab::find_roots(r_of(src), prec, cfg.tol_circle);
  emit(cfg, rootlab::roots_svg(report, cfg.label.empty() ? src.label : cfg.label));
  return 0;
}

int run(const RunConfig& cfg) {
  if (cfg.precision < 15 || cfg.precision > 45) throw DomainError("--precision must lie in [15, 45]");
  if (!(cfg.tol_circle > 0)) throw DomainError("--tol-circle must be positive");
  if (cfg.max_norm < 0) throw DomainError("--max-norm must be nonnegative");
  parse_output_format(cfg.format);
  kernels::set_max_threads(cfg.jobs);
  if (cfg.jobs == 1) kernels::set_default_execution(kernels::Execution::Serial);
  const Precision prec(cfg.precision);

  if (cfg.command == "lambda") return cmd_lambda(cfg, prec);
  if (cfg.command == "rpoly") return cmd_rpoly(cfg, prec);
  if (cfg.command == "check") return cmd_check(cfg, prec);
  if (cfg.command == "bound") return cmd_bound(cfg, Precision(std::min(cfg.precision, 20)));
  if (cfg.command == "bound-table") return cmd_bound_table(cfg, Precision(std::min(cfg.precision, 20)));
  if (cfg.command == "equidist") return cmd_equidist(cfg, prec);
  if (cfg.command == "perturb") return cmd_perturb(cfg, prec);
  if (cfg.command == "tau-gen") return cmd_tau_gen(cfg, prec);
  if (cfg.command == "plot") return cmd_plot(cfg, prec);
  throw DomainError("unknown command '" + cfg.command + "'");
}

void report_error(const std::string& code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", code}, {"kind", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical L-values, period polynomials and unit-circle checks"};
  app.set_version_flag("--version", PPRH_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--precision", cfg.precision, "working precision in decimal digits (15..45)");
  app.add_option("--tol-circle", cfg.tol_circle, "distance from |z| = 1 accepted as on the circle");
  app.add_option("--max-norm", cfg.max_norm, "extend coefficients through this norm (0: automatic)");
  app.add_option("--format", cfg.format, "json, csv or svg");
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  app.add_option("--jobs", cfg.jobs, "thread cap; 1 runs the serial kernels");
  app.add_flag("--allow-gaps", cfg.allow_gaps, "bound missing prime data instead of failing");
  app.add_option("--input-format", cfg.input_format, "eigenform document format: json or table");

  const auto with_inputs = [&](CLI::App* sub, bool many = false) {
    auto* opt = sub->add_option("inputs", cfg.inputs, "eigenform document or critical-value fixture");
    opt->required();
    if (!many) opt->expected(1);
    return sub;
  };

  auto* lambda = with_inputs(app.add_subcommand("lambda", "critical values Lambda(1..k-1)"));
  lambda->add_option("--s", cfg.points, "extra evaluation points");
  with_inputs(app.add_subcommand("rpoly", "period polynomial r_f as JSON"));
  with_inputs(app.add_subcommand("check", "roots, Rouche margin, certificates and growth checks"));
  auto* bound = app.add_subcommand("bound", "analytic bound T_n(m)");
  bound->add_option("--degree", cfg.degree)->required();
  bound->add_option("--m", cfg.m)->required();
  bound->add_option("--discriminant", cfg.discriminant);
  auto* table = app.add_subcommand("bound-table", "least m with T_n(m) < 1 per discriminant");
  table->add_option("--degree", cfg.degree)->required();
  table->add_option("--discriminants", cfg.discriminants)->delimiter(',')->required();
  table->add_option("--max-m", cfg.max_m);
  with_inputs(app.add_subcommand("equidist", "star discrepancy of the root angles"));
  auto* perturb = with_inputs(app.add_subcommand("perturb", "interval of t keeping r_even + t r_odd on the circle"),
                              true);
  perturb->add_option("--resolution", cfg.resolution);
  perturb->add_option("--verdict-tol", cfg.verdict_tol);
  perturb->add_option("--label", cfg.label);
  auto* tau = app.add_subcommand("tau-gen", "coefficients of Delta as an eigenform document");
  tau->add_option("--count", cfg.count)->required();
  auto* plot = with_inputs(app.add_subcommand("plot", "SVG scatter of the roots"));
  plot->add_option("--label", cfg.label);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return run(cfg);
  } catch (const Error& e) {
    const bool input = e.kind() == ErrorKind::Input;
    report_error(e.code(), input ? "input" : "computation", e.what());
    return input ? 2 : 1;
  } catch (const std::exception& e) {
    report_error("Internal", "computation", e.what());
    return 1;
  }
}
