#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ftdft/corpus.hpp"
#include "ftdft/dft_engine.hpp"
#include "ftdft/planner.hpp"
#include "ftdft/weights.hpp"

namespace ftdft {

enum class RuleKind { PaperOptimal, FixedH, FixedP };

/// Step-size rule. FixedH: h = c n^e. FixedP: p = c n^e. PaperOptimal
/// uses plan_step with `c` as multiplier on h (e is ignored).
struct Rule {
  RuleKind kind = RuleKind::PaperOptimal;
  double c = 1.0;
  double e = 0.0;
};

/// "paper" | "fixed_h" | "fixed_p" (also "paperoptimal", "fixedh", "fixedp").
RuleKind parse_rule_kind(const std::string& name);
std::string rule_kind_name(RuleKind k);

enum class OutputFormat { CSV, JSON };
OutputFormat parse_format(const std::string& name);

struct ExperimentConfig {
  std::string function;
  Rule rule;
  int l_min = 10;
  int l_max = 18;
  /// Empty means standard output.
  std::string out;
  OutputFormat format = OutputFormat::CSV;
  /// Compute amalgam norms and bound_total for each row.
  bool bounds = true;
  /// Rows with e_l2 below this are left out of the slope fit.
  double fit_floor = 1e-12;
};

/// Parses a JSON object with keys function, rule, c, e, l_min, l_max, out,
/// format, bounds, fit_floor. Missing keys keep the defaults of `base`.
ExperimentConfig config_from_json(const std::string& text, const ExperimentConfig& base = {});
ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base = {});
/// Throws ValidationError on an empty n range or non-finite / nonpositive
/// rule parameters.
void validate(const ExperimentConfig& cfg);

SamplingPlan plan_for(const FunctionPair& fp, const Rule& rule, std::size_t n);
double rule_predicted_rate(const FunctionPair& fp, const Rule& rule);

/// Amalgam norms of f and fhat under the certificate weights.
struct NormCertificate {
  WeightSpec v;
  WeightSpec w;
  double norm_time = 0.0;
  double norm_freq = 0.0;
};

NormCertificate certify_norms(const FunctionPair& fp, const AmalgamConfig& cfg = {});

/// error_l2 with bound fields filled from `cert` when given and the plan
/// satisfies the bound preconditions.
ErrorReport measure(const FunctionPair& fp, const SamplingPlan& plan,
                    const NormCertificate* cert = nullptr);

struct RunRow {
  std::size_t n = 0;
  double h = 0.0;
  double p = 0.0;
  double e_l2 = 0.0;
  double e_sup = 0.0;
  /// NaN when no bound was computed.
  double bound_total = 0.0;
};

struct ConvergenceRun {
  std::string label;
  double predicted_rate = 0.0;
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;
  std::vector<RunRow> rows;
};

/// One row per n = 2^l, l in [l_min, l_max], sorted by n. Rows run
/// concurrently (FTDFT_THREADS caps the thread count); results do not
/// depend on the thread count. fitted_slope is NaN when fewer than three
/// rows clear fit_floor.
ConvergenceRun sweep(const ExperimentConfig& cfg);

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};

/// Ordinary least squares on (ln x, ln y). Needs >= 3 points, all positive.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

/// Thread count for sweeps: hardware concurrency capped by FTDFT_THREADS.
unsigned sweep_threads();

inline constexpr const char* kCsvHeader =
    "label,n,h,p,e_l2,e_sup,bound_total,predicted_rate,fitted_slope";

std::string to_csv(const ConvergenceRun& run);
std::string to_json(const ConvergenceRun& run);
/// Inverse of to_csv. slope_stderr is not part of the CSV and comes back 0.
ConvergenceRun parse_csv(const std::string& text);
ConvergenceRun parse_json(const std::string& text);

/// Writes to `path`, or to standard output when path is empty. I/O errors
/// are raised as std::runtime_error with the system message.
void emit(const ConvergenceRun& run, OutputFormat format, const std::string& path);

}  // namespace ftdft
