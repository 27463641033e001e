// ftdft command line: plan, run, sweep, interp, corpus.
//
// Exit status: 0 success, 1 invalid input, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ftdft/corpus.hpp"
#include "ftdft/dft_engine.hpp"
#include "ftdft/errors.hpp"
#include "ftdft/harness.hpp"
#include "ftdft/interp.hpp"
#include "ftdft/planner.hpp"

using namespace ftdft;
using nlohmann::json;

namespace {

// Non-finite numbers as in the harness JSON: null or "inf"/"-inf".
json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

struct Flags {
  std::string config;
  std::string function;
  std::string rule;
  double c = 0.0;
  double e = 0.0;
  int l_min = 0;
  int l_max = 0;
  std::size_t n = 1024;
  std::string kernel = "sinc";
  std::string out;
  std::string format;
  bool no_bounds = false;
};

bool given(const CLI::App& sub, const std::string& name) {
  const auto* opt = sub.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

// Flags given on the command line win over the config file.
ExperimentConfig resolve(const CLI::App& sub, const Flags& fl) {
  ExperimentConfig cfg;
  if (!fl.config.empty()) cfg = load_config(fl.config);
  if (given(sub, "--function")) cfg.function = fl.function;
  if (given(sub, "--rule")) cfg.rule.kind = parse_rule_kind(fl.rule);
  if (given(sub, "--c")) cfg.rule.c = fl.c;
  if (given(sub, "--e")) cfg.rule.e = fl.e;
  if (given(sub, "--l-min")) cfg.l_min = fl.l_min;
  if (given(sub, "--l-max")) cfg.l_max = fl.l_max;
  if (given(sub, "--out")) cfg.out = fl.out;
  if (given(sub, "--format")) cfg.format = parse_format(fl.format);
  if (fl.no_bounds) cfg.bounds = false;
  if (cfg.function.empty()) throw ValidationError("--function is required");
  return cfg;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

json plan_json(const SamplingPlan& plan) {
  return {{"n", plan.n()}, {"h", plan.h()}, {"p", plan.p()}};
}

int cmd_plan(const ExperimentConfig& cfg, std::size_t n) {
  const auto fp = corpus_get(cfg.function);
  const auto plan = plan_for(fp, cfg.rule, n);
  const auto pr = predicted_rate(fp.time_decay, fp.freq_decay);
  json j = plan_json(plan);
  j["function"] = fp.label;
  j["rule"] = rule_kind_name(cfg.rule.kind);
  j["regime"] = regime_name(pr.regime);
  j["predicted_rate"] = num(rule_predicted_rate(fp, cfg.rule));
  write_text(j.dump(2) + "\n", cfg.out);
  return 0;
}

int cmd_run(const ExperimentConfig& cfg, std::size_t n) {
  const auto fp = corpus_get(cfg.function);
  const auto plan = plan_for(fp, cfg.rule, n);
  std::optional<NormCertificate> cert;
  if (cfg.bounds) cert = certify_norms(fp);
  const auto r = measure(fp, plan, cert ? &*cert : nullptr);
  json j = plan_json(plan);
  j["function"] = fp.label;
  j["e_l2"] = num(r.e_l2);
  j["e_sup"] = num(r.e_sup);
  if (r.has_bound) {
    j["bound_time"] = num(r.bound_time);
    j["bound_freq"] = num(r.bound_freq);
    j["bound_total"] = num(r.bound_time + r.bound_freq);
  } else {
    j["bound_total"] = nullptr;
  }
  write_text(j.dump(2) + "\n", cfg.out);
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  emit(sweep(cfg), cfg.format, cfg.out);
  return 0;
}

int cmd_interp(const ExperimentConfig& cfg, std::size_t n, const std::string& kernel_name_) {
  const auto fp = corpus_get(cfg.function);
  const auto plan = plan_for(fp, cfg.rule, n);
  const Kernel kernel = parse_kernel(kernel_name_);
  const auto l2 = interp_l2_error(fp, plan, kernel);
  json j = plan_json(plan);
  j["function"] = fp.label;
  j["kernel"] = kernel_name(kernel);
  j["l2_main"] = num(l2.main);
  j["l2_tail_bound"] = num(l2.tail_bound);
  j["window"] = num(l2.window);
  j["warnings"] = l2.warnings;
  if (kernel != Kernel::Sinc) {
    // Sup error on a grid of 8 points per node spacing over the node window.
    std::vector<double> grid;
    const double lo = static_cast<double>(index_min(n)) / plan.p();
    const double hi = static_cast<double>(index_max(n)) / plan.p();
    const std::size_t m = 8 * n;
    for (std::size_t i = 0; i <= m; ++i) grid.push_back(lo + (hi - lo) * static_cast<double>(i) / m);
    j["sup"] = num(interp_sup_error(fp, plan, kernel, grid).value);
  }
  write_text(j.dump(2) + "\n", cfg.out);
  return 0;
}

int cmd_corpus() {
  for (const auto& name : corpus_names()) {
    const auto fp = corpus_get(name);
    const auto pr = predicted_rate(fp.time_decay, fp.freq_decay);
    std::printf("%-10s time %-34s freq %-34s %s\n", name.c_str(), fp.time_decay.describe().c_str(),
                fp.freq_decay.describe().c_str(), regime_name(pr.regime).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous Fourier transform by the DFT: plans, errors and sweeps"};
  app.require_subcommand(1);
  Flags fl;

  auto add_common = [&](CLI::App* sub, bool sweep_flags) {
    sub->add_option("--config", fl.config, "JSON experiment config; flags override it");
    sub->add_option("--function", fl.function, "Corpus name, e.g. fab:2,3, exp_abs, gauss");
    sub->add_option("--rule", fl.rule, "paper | fixed_h | fixed_p");
    sub->add_option("--c", fl.c, "Multiplier c in c n^e (paper rule: multiplier on h)");
    sub->add_option("--e", fl.e, "Exponent e in c n^e");
    sub->add_option("--out", fl.out, "Output file (default stdout)");
    if (sweep_flags) {
      sub->add_option("--l-min", fl.l_min, "Smallest l, n = 2^l");
      sub->add_option("--l-max", fl.l_max, "Largest l, n = 2^l");
      sub->add_option("--format", fl.format, "csv | json");
      sub->add_flag("--no-bounds", fl.no_bounds, "Skip amalgam norms and bound_total");
    } else {
      sub->add_option("--n", fl.n, "Number of samples (power of two)");
    }
  };

  auto* plan = app.add_subcommand("plan", "Print the sampling plan and predicted rate");
  add_common(plan, false);
  auto* run = app.add_subcommand("run", "Measure one error report");
  add_common(run, false);
  run->add_flag("--no-bounds", fl.no_bounds, "Skip the theoretical bound");
  auto* sw = app.add_subcommand("sweep", "Convergence sweep over n = 2^l");
  add_common(sw, true);
  auto* ip = app.add_subcommand("interp", "Interpolation errors for one plan");
  add_common(ip, false);
  ip->add_option("--kernel", fl.kernel, "sinc | b1 | b2");
  app.add_subcommand("corpus", "List the built-in function pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand("corpus")) return cmd_corpus();
    if (app.got_subcommand(plan)) return cmd_plan(resolve(*plan, fl), fl.n);
    if (app.got_subcommand(run)) return cmd_run(resolve(*run, fl), fl.n);
    if (app.got_subcommand(ip)) return cmd_interp(resolve(*ip, fl), fl.n, fl.kernel);
    if (app.got_subcommand(sw)) return cmd_sweep(resolve(*sw, fl));
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
