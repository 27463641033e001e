#include "ftdft/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ftdft/errors.hpp"

namespace ftdft {

namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw ValidationError("not a number: '" + s + "'");
  return v;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits CSV text into records of fields (quoted fields may hold commas,
// doubled quotes and line breaks).
std::vector<std::vector<std::string>> csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
      }
      fields.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ValidationError("csv: unterminated quoted field");
  if (any || !field.empty()) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

// JSON has no NaN or infinities: NaN is written as null, infinities as
// the strings "inf" / "-inf".
json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double num_from(const json& j) {
  if (j.is_null()) return kNaN;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ValidationError("json: unexpected string for a number: " + s);
  }
  if (!j.is_number()) throw ValidationError("json: expected a number, got " + j.dump());
  return j.get<double>();
}

double fixed_exponent_rate(const FunctionPair& fp, double e_h, double e_p) {
  return predicted_rate_for_exponents(fp.time_decay, fp.freq_decay, e_h, e_p);
}

}  // namespace

RuleKind parse_rule_kind(const std::string& name) {
  const std::string s = lower(name);
  if (s == "paper" || s == "paperoptimal" || s == "paper_optimal") return RuleKind::PaperOptimal;
  if (s == "fixed_h" || s == "fixedh") return RuleKind::FixedH;
  if (s == "fixed_p" || s == "fixedp") return RuleKind::FixedP;
  throw ValidationError("unknown rule '" + name + "' (expected paper, fixed_h or fixed_p)");
}

std::string rule_kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::PaperOptimal:
      return "paper";
    case RuleKind::FixedH:
      return "fixed_h";
    case RuleKind::FixedP:
      return "fixed_p";
  }
  return "?";
}

OutputFormat parse_format(const std::string& name) {
  const std::string s = lower(name);
  if (s == "csv") return OutputFormat::CSV;
  if (s == "json") return OutputFormat::JSON;
  throw ValidationError("unknown format '" + name + "' (expected csv or json)");
}

ExperimentConfig config_from_json(const std::string& text, const ExperimentConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be an object");
  ExperimentConfig cfg = base;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "function") {
        cfg.function = value.get<std::string>();
      } else if (key == "rule") {
        cfg.rule.kind = parse_rule_kind(value.get<std::string>());
      } else if (key == "c") {
        cfg.rule.c = value.get<double>();
      } else if (key == "e") {
        cfg.rule.e = value.get<double>();
      } else if (key == "l_min") {
        cfg.l_min = value.get<int>();
      } else if (key == "l_max") {
        cfg.l_max = value.get<int>();
      } else if (key == "out") {
        cfg.out = value.get<std::string>();
      } else if (key == "format") {
        cfg.format = parse_format(value.get<std::string>());
      } else if (key == "bounds") {
        cfg.bounds = value.get<bool>();
      } else if (key == "fit_floor") {
        cfg.fit_floor = value.get<double>();
      } else {
        throw ValidationError("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str(), base);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.l_min > cfg.l_max) {
    throw ValidationError("empty n range: l_min=" + std::to_string(cfg.l_min) +
                          " > l_max=" + std::to_string(cfg.l_max));
  }
  if (cfg.l_min < 1 || cfg.l_max > 30) {
    throw ValidationError("n = 2^l needs 1 <= l_min and l_max <= 30");
  }
  if (!std::isfinite(cfg.rule.c) || !(cfg.rule.c > 0.0) || !std::isfinite(cfg.rule.e)) {
    throw ValidationError("rule parameters must be finite with c > 0");
  }
  if (!(cfg.fit_floor >= 0.0)) throw ValidationError("fit_floor must be >= 0");
}

SamplingPlan plan_for(const FunctionPair& fp, const Rule& rule, std::size_t n) {
  const double nd = static_cast<double>(n);
  switch (rule.kind) {
    case RuleKind::PaperOptimal:
      return plan_step({fp.time_decay, fp.freq_decay, n, rule.c}).plan;
    case RuleKind::FixedH:
      return SamplingPlan::from_step(n, rule.c * std::pow(nd, rule.e));
    case RuleKind::FixedP:
      return SamplingPlan::from_length(n, rule.c * std::pow(nd, rule.e));
  }
  throw ValidationError("unknown rule");
}

double rule_predicted_rate(const FunctionPair& fp, const Rule& rule) {
  switch (rule.kind) {
    case RuleKind::PaperOptimal:
      return predicted_rate(fp.time_decay, fp.freq_decay).rate;
    case RuleKind::FixedH:
      return fixed_exponent_rate(fp, rule.e, 1.0 + rule.e);
    case RuleKind::FixedP:
      return fixed_exponent_rate(fp, rule.e - 1.0, rule.e);
  }
  return kNaN;
}

NormCertificate certify_norms(const FunctionPair& fp, const AmalgamConfig& cfg) {
  const WeightSpec v = certificate_weight(fp.time_decay);
  const WeightSpec w = certificate_weight(fp.freq_decay);
  const double nt = amalgam_norm(fp.f, v, fp.time_decay, cfg).upper();
  const double nf = amalgam_norm(fp.fhat, w, fp.freq_decay, cfg).upper();
  return {v, w, nt, nf};
}

ErrorReport measure(const FunctionPair& fp, const SamplingPlan& plan,
                    const NormCertificate* cert) {
  ErrorReport r = error_l2(fp, plan);
  if (cert != nullptr) {
    try {
      const BoundReport b = bound_total(cert->norm_time, cert->norm_freq, cert->v, cert->w, plan);
      r.bound_time = b.time_term;
      r.bound_freq = b.freq_term;
      r.has_bound = true;
    } catch (const ValidationError&) {
      // Plan outside the bound's preconditions: leave has_bound false.
    }
  }
  return r;
}

unsigned sweep_threads() {
  unsigned t = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FTDFT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) t = std::min<unsigned>(t, static_cast<unsigned>(cap));
  }
  return t;
}

ConvergenceRun sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  const FunctionPair fp = corpus_get(cfg.function);

  ConvergenceRun run;
  run.label = fp.label;
  run.predicted_rate = rule_predicted_rate(fp, cfg.rule);

  std::optional<NormCertificate> cert;
  if (cfg.bounds) cert = certify_norms(fp);

  const auto count = static_cast<std::size_t>(cfg.l_max - cfg.l_min + 1);
  run.rows.resize(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const std::size_t n = std::size_t{1} << (cfg.l_min + static_cast<int>(i));
      try {
        const SamplingPlan plan = plan_for(fp, cfg.rule, n);
        const ErrorReport r = measure(fp, plan, cert ? &*cert : nullptr);
        run.rows[i] = {n, plan.h(), plan.p(), r.e_l2, r.e_sup,
                       r.has_bound ? r.bound_time + r.bound_freq : kNaN};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(sweep_threads(), static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    const std::string where = "n=" + std::to_string(std::size_t{1} << (cfg.l_min + static_cast<int>(i))) + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError(where + e.what());
    }
  }

  std::vector<std::pair<double, double>> pts;
  for (const RunRow& row : run.rows) {
    if (row.e_l2 > 0.0 && row.e_l2 >= cfg.fit_floor) {
      pts.emplace_back(static_cast<double>(row.n), row.e_l2);
    }
  }
  if (pts.size() >= 3) {
    const SlopeFit fit = fit_slope(pts);
    run.fitted_slope = fit.slope;
    run.slope_stderr = fit.stderr_;
  } else {
    run.fitted_slope = kNaN;
    run.slope_stderr = kNaN;
  }
  return run;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ValidationError("fit_slope: need at least 3 points");
  const double N = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw ValidationError("fit_slope: values must be positive");
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= N;
  my /= N;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_slope: x values must not all coincide");
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (const auto& [x, y] : points) {
    const double res = std::log(y) - my - slope * (std::log(x) - mx);
    ssr += res * res;
  }
  return {slope, std::sqrt(ssr / (N - 2.0) / sxx)};
}

std::string to_csv(const ConvergenceRun& run) {
  std::string out = kCsvHeader;
  out += '\n';
  const std::string label = csv_quote(run.label);
  for (const RunRow& r : run.rows) {
    out += label + ',' + std::to_string(r.n) + ',' + fmt17(r.h) + ',' + fmt17(r.p) + ',' +
           fmt17(r.e_l2) + ',' + fmt17(r.e_sup) + ',' + fmt17(r.bound_total) + ',' +
           fmt17(run.predicted_rate) + ',' + fmt17(run.fitted_slope) + '\n';
  }
  return out;
}

std::string to_json(const ConvergenceRun& run) {
  json rows = json::array();
  for (const RunRow& r : run.rows) {
    rows.push_back({{"n", r.n},
                    {"h", num(r.h)},
                    {"p", num(r.p)},
                    {"e_l2", num(r.e_l2)},
                    {"e_sup", num(r.e_sup)},
                    {"bound_total", num(r.bound_total)}});
  }
  json j = {{"label", run.label},
            {"predicted_rate", num(run.predicted_rate)},
            {"fitted_slope", num(run.fitted_slope)},
            {"slope_stderr", num(run.slope_stderr)},
            {"rows", rows}};
  return j.dump(2) + "\n";
}

ConvergenceRun parse_csv(const std::string& text) {
  const auto records = csv_records(text);
  if (records.empty()) throw ValidationError("csv: empty input");
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) {
    header += (i ? "," : "") + records[0][i];
  }
  if (header != kCsvHeader) throw ValidationError("csv: unexpected header '" + header + "'");
  ConvergenceRun run;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 9) {
      throw ValidationError("csv: row " + std::to_string(i) + " has " +
                            std::to_string(f.size()) + " fields, expected 9");
    }
    RunRow r;
    r.n = static_cast<std::size_t>(std::stoull(f[1]));
    r.h = parse_double(f[2]);
    r.p = parse_double(f[3]);
    r.e_l2 = parse_double(f[4]);
    r.e_sup = parse_double(f[5]);
    r.bound_total = parse_double(f[6]);
    if (i == 1) {
      run.label = f[0];
      run.predicted_rate = parse_double(f[7]);
      run.fitted_slope = parse_double(f[8]);
    }
    run.rows.push_back(r);
  }
  return run;
}

ConvergenceRun parse_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ConvergenceRun run;
    run.label = j.at("label").get<std::string>();
    run.predicted_rate = num_from(j.at("predicted_rate"));
    run.fitted_slope = num_from(j.at("fitted_slope"));
    run.slope_stderr = num_from(j.at("slope_stderr"));
    for (const json& r : j.at("rows")) {
      RunRow row;
      row.n = r.at("n").get<std::size_t>();
      row.h = num_from(r.at("h"));
      row.p = num_from(r.at("p"));
      row.e_l2 = num_from(r.at("e_l2"));
      row.e_sup = num_from(r.at("e_sup"));
      row.bound_total = num_from(r.at("bound_total"));
      run.rows.push_back(row);
    }
    return run;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("json: ") + e.what());
  }
}

void emit(const ConvergenceRun& run, OutputFormat format, const std::string& path) {
  const std::string text = format == OutputFormat::CSV ? to_csv(run) : to_json(run);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "': " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed: " + std::strerror(errno));
}

}  // namespace ftdft
