#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace majorcat {

enum class ExperimentKind { SelfCatLocc, EntropyCurve, ConvRate, SelfCatSlocc, GainAvg, GainScatter, BoundCheck };
enum class OutputFormat { Csv, Json };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_kind(std::string_view name);
OutputFormat parse_format(std::string_view name);
/// "3,5,10", "2..100", "2..100:7", or any comma-separated mix.
std::vector<int> parse_dims(std::string_view text);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SelfCatSlocc;
  std::vector<int> dims;
  std::uint32_t trials_per_dim = 10000;
  std::uint64_t master_seed = 0;
  double gain_threshold = 1e-5;
  unsigned copies = 1;
  std::string out_path;
  OutputFormat format = OutputFormat::Csv;
  unsigned workers = 1;                       // never affects results
  std::uint64_t max_rejections = 1'000'000;  // pair draws allowed per trial
};

/// Throws ConfigInvalid.
void validate(const ExperimentConfig& cfg);

/// Bernoulli kinds: estimate = successes / trials, std_error =
/// sqrt(p (1 - p) / trials). Mean kinds leave successes at 0 and report the
/// sample standard error.
struct EstimateRecord {
  int dim = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

struct EntropyRecord {
  int dim = 0;
  std::uint64_t trials = 0;
  double mean_entropy = 0.0;
  double std_error = 0.0;
  double page_value = 0.0;
};

struct ConvRateRecord {
  EstimateRecord direct;  // E[P_S(alpha -> beta)]
  EstimateRecord best;    // E[max{P_S(alpha -> beta), P_S(beta -> alpha)}]
};

struct GainRecord {
  int dim = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double mean_gain = 0.0;  // over successes only; 0 when there are none
  double std_error = 0.0;
};

struct ScatterPoint {
  double p_direct = 0.0;
  double gain = 0.0;
};

struct BoundRecord {
  int dim = 0;
  double lhs = 0.0;  // P[P_S < min{alpha_n / beta_n, 1}]
  double lhs_stderr = 0.0;
  double rhs = 0.0;  // 1/2 - P[alpha -> beta]
  double rhs_stderr = 0.0;
  bool holds = false;  // lhs >= rhs - 3 sigma (combined)
};

std::vector<EstimateRecord> run_selfcat_locc(const ExperimentConfig& cfg);
std::vector<EntropyRecord> run_entropy_curve(const ExperimentConfig& cfg);
std::vector<ConvRateRecord> run_conv_rate(const ExperimentConfig& cfg);
std::vector<EstimateRecord> run_selfcat_slocc(const ExperimentConfig& cfg);
std::vector<GainRecord> run_gain(const ExperimentConfig& cfg);
/// One row per trial at the single configured dimension, successes or not.
std::vector<ScatterPoint> run_gain_scatter(const ExperimentConfig& cfg);
std::vector<BoundRecord> bound_check(const ExperimentConfig& cfg);

using ExperimentResult = std::variant<std::vector<EstimateRecord>, std::vector<EntropyRecord>,
                                      std::vector<ConvRateRecord>, std::vector<GainRecord>,
                                      std::vector<ScatterPoint>, std::vector<BoundRecord>>;

ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_csv(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out);
void write_json(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out);
void write_result(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out);

}  // namespace majorcat
