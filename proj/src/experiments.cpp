#include "majorcat/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "majorcat/error.hpp"
#include "majorcat/locc.hpp"
#include "majorcat/random_states.hpp"
#include "majorcat/scalar.hpp"
#include "majorcat/slocc.hpp"

namespace majorcat {
namespace {

/// Evaluates f(0..trials-1) on `workers` threads; results land in trial
/// order, so downstream reductions do not depend on the worker count.
template <class T, class F>
std::vector<T> map_trials(unsigned workers, std::uint32_t trials, const F& f) {
  std::vector<T> out(trials);
  workers = std::max(1u, std::min<unsigned>(workers, trials));
  if (workers == 1) {
    for (std::uint32_t i = 0; i < trials; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint32_t i = w; i < trials; i += workers) out[i] = f(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Neumaier-compensated sum in the given order.
double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double carry = 0.0;
  for (const double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

struct MeanStat {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanStat mean_stat(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  const double n = static_cast<double>(xs.size());
  const double mean = compensated_sum(xs) / n;
  if (xs.size() < 2) return {mean, 0.0};
  std::vector<double> sq(xs.size());
  std::transform(xs.begin(), xs.end(), sq.begin(), [mean](double x) { return (x - mean) * (x - mean); });
  const double var = compensated_sum(sq) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

EstimateRecord bernoulli(int dim, std::uint64_t successes, std::uint64_t trials) {
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {dim, p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), successes, trials};
}

SeededStream trial_stream(const ExperimentConfig& cfg, int dim, std::uint32_t trial) {
  return SeededStream::for_trial(cfg.master_seed, static_cast<std::uint32_t>(dim), trial);
}

PairSample incomparable_pair(const ExperimentConfig& cfg, int dim, std::uint32_t trial) {
  auto rng = trial_stream(cfg, dim, trial);
  return sample_incomparable_pair(dim, rng, cfg.max_rejections);
}

struct SloccTrial {
  double p_direct = 0.0;
  double p_assisted = 0.0;
};

SloccTrial slocc_trial(const ExperimentConfig& cfg, int dim, std::uint32_t trial) {
  const auto pair = incomparable_pair(cfg, dim, trial);
  return {vidal_probability(pair.alpha, pair.beta), multi_copy_probability(pair.alpha, pair.beta, cfg.copies)};
}

bool slocc_success(const ExperimentConfig& cfg, const SloccTrial& t) {
  return t.p_assisted > (1.0 + cfg.gain_threshold) * t.p_direct;
}

void require_kind(const ExperimentConfig& cfg, std::initializer_list<ExperimentKind> kinds) {
  validate(cfg);
  if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end()) {
    fail(ErrorCode::ConfigInvalid, "runner does not handle kind " + std::string(to_string(cfg.kind)));
  }
}

bool pair_conditioned(ExperimentKind kind) {
  return kind != ExperimentKind::EntropyCurve && kind != ExperimentKind::BoundCheck;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::SelfCatLocc: return "selfcat-locc";
    case ExperimentKind::EntropyCurve: return "entropy";
    case ExperimentKind::ConvRate: return "conv-rate";
    case ExperimentKind::SelfCatSlocc: return "selfcat-slocc";
    case ExperimentKind::GainAvg: return "gain";
    case ExperimentKind::GainScatter: return "gain-scatter";
    case ExperimentKind::BoundCheck: return "bound";
  }
  return "?";
}

ExperimentKind parse_kind(std::string_view name) {
  for (auto kind : {ExperimentKind::SelfCatLocc, ExperimentKind::EntropyCurve, ExperimentKind::ConvRate,
                    ExperimentKind::SelfCatSlocc, ExperimentKind::GainAvg, ExperimentKind::GainScatter,
                    ExperimentKind::BoundCheck}) {
    if (to_string(kind) == name) return kind;
  }
  fail(ErrorCode::ConfigInvalid, "unknown experiment kind '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  fail(ErrorCode::ConfigInvalid, "unknown format '" + std::string(name) + "'");
}

std::vector<int> parse_dims(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      fail(ErrorCode::ConfigInvalid, "bad dimension list '" + std::string(text) + "'");
    }
    return v;
  };
  std::vector<int> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      std::string_view upper = item.substr(dots + 2);
      int step = 1;
      if (const auto colon = upper.find(':'); colon != std::string_view::npos) {
        step = to_int(upper.substr(colon + 1));
        upper = upper.substr(0, colon);
      }
      const int lo = to_int(item.substr(0, dots));
      const int hi = to_int(upper);
      if (step < 1 || hi < lo) fail(ErrorCode::ConfigInvalid, "bad range '" + std::string(item) + "'");
      for (int d = lo; d <= hi; d += step) dims.push_back(d);
    } else {
      dims.push_back(to_int(item));
    }
    start = comma + 1;
  }
  return dims;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.dims.empty()) fail(ErrorCode::ConfigInvalid, "no dimensions given");
  if (cfg.trials_per_dim < 1) fail(ErrorCode::ConfigInvalid, "trials per dimension must be >= 1");
  if (cfg.workers < 1) fail(ErrorCode::ConfigInvalid, "workers must be >= 1");
  if (cfg.copies < 1) fail(ErrorCode::ConfigInvalid, "copies must be >= 1");
  if (!(cfg.gain_threshold >= 0.0)) fail(ErrorCode::ConfigInvalid, "gain threshold must be >= 0");
  const int min_dim = pair_conditioned(cfg.kind) ? 3 : 2;
  for (const int d : cfg.dims) {
    if (d < min_dim) {
      fail(ErrorCode::ConfigInvalid, std::string(to_string(cfg.kind)) + " needs dimensions >= " +
                                         std::to_string(min_dim) + ", got " + std::to_string(d));
    }
  }
  if (cfg.kind == ExperimentKind::GainScatter && cfg.dims.size() != 1) {
    fail(ErrorCode::ConfigInvalid, "gain-scatter runs at exactly one dimension");
  }
}

std::vector<EstimateRecord> run_selfcat_locc(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::SelfCatLocc});
  std::vector<EstimateRecord> records;
  for (const int dim : cfg.dims) {
    const auto hits = map_trials<char>(cfg.workers, cfg.trials_per_dim, [&](std::uint32_t t) -> char {
      const auto pair = incomparable_pair(cfg, dim, t);
      const auto attached = tensor_power(pair.alpha, cfg.copies);
      return majorizes(tensor(pair.alpha, attached), tensor(pair.beta, attached)) ? 1 : 0;
    });
    records.push_back(bernoulli(dim, static_cast<std::uint64_t>(std::count(hits.begin(), hits.end(), 1)),
                                cfg.trials_per_dim));
  }
  return records;
}

std::vector<EntropyRecord> run_entropy_curve(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::EntropyCurve});
  std::vector<EntropyRecord> records;
  for (const int dim : cfg.dims) {
    const auto values = map_trials<double>(cfg.workers, cfg.trials_per_dim, [&](std::uint32_t t) {
      auto rng = trial_stream(cfg, dim, t);
      return normalized_entropy(haar_schmidt(dim, rng));
    });
    const auto stat = mean_stat(values);
    records.push_back({dim, cfg.trials_per_dim, stat.mean, stat.std_error, page_entropy(dim)});
  }
  return records;
}

std::vector<ConvRateRecord> run_conv_rate(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::ConvRate});
  std::vector<ConvRateRecord> records;
  for (const int dim : cfg.dims) {
    const auto probs = map_trials<std::pair<double, double>>(cfg.workers, cfg.trials_per_dim, [&](std::uint32_t t) {
      const auto pair = incomparable_pair(cfg, dim, t);
      const double forward = vidal_probability(pair.alpha, pair.beta);
      const double backward = vidal_probability(pair.beta, pair.alpha);
      return std::pair{forward, std::max(forward, backward)};
    });
    std::vector<double> direct(probs.size()), best(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
      direct[i] = probs[i].first;
      best[i] = probs[i].second;
    }
    const auto d = mean_stat(direct);
    const auto b = mean_stat(best);
    records.push_back({{dim, d.mean, d.std_error, 0, cfg.trials_per_dim}, {dim, b.mean, b.std_error, 0, cfg.trials_per_dim}});
  }
  return records;
}

std::vector<EstimateRecord> run_selfcat_slocc(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::SelfCatSlocc});
  std::vector<EstimateRecord> records;
  for (const int dim : cfg.dims) {
    const auto trials = map_trials<SloccTrial>(cfg.workers, cfg.trials_per_dim,
                                               [&](std::uint32_t t) { return slocc_trial(cfg, dim, t); });
    const auto successes = static_cast<std::uint64_t>(
        std::count_if(trials.begin(), trials.end(), [&](const SloccTrial& s) { return slocc_success(cfg, s); }));
    records.push_back(bernoulli(dim, successes, cfg.trials_per_dim));
  }
  return records;
}

std::vector<GainRecord> run_gain(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::GainAvg});
  std::vector<GainRecord> records;
  for (const int dim : cfg.dims) {
    const auto trials = map_trials<SloccTrial>(cfg.workers, cfg.trials_per_dim,
                                               [&](std::uint32_t t) { return slocc_trial(cfg, dim, t); });
    std::vector<double> gains;
    for (const auto& s : trials) {
      if (slocc_success(cfg, s)) gains.push_back(s.p_assisted - s.p_direct);
    }
    const auto stat = mean_stat(gains);
    records.push_back({dim, cfg.trials_per_dim, gains.size(), stat.mean, stat.std_error});
  }
  return records;
}

std::vector<ScatterPoint> run_gain_scatter(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::GainScatter});
  const int dim = cfg.dims.front();
  const auto trials = map_trials<SloccTrial>(cfg.workers, cfg.trials_per_dim,
                                             [&](std::uint32_t t) { return slocc_trial(cfg, dim, t); });
  std::vector<ScatterPoint> points;
  points.reserve(trials.size());
  for (const auto& s : trials) points.push_back({s.p_direct, s.p_assisted - s.p_direct});
  return points;
}

std::vector<BoundRecord> bound_check(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::BoundCheck});
  std::vector<BoundRecord> records;
  for (const int dim : cfg.dims) {
    // bit 0: improvable, bit 1: alpha -> beta
    const auto flags = map_trials<char>(cfg.workers, cfg.trials_per_dim, [&](std::uint32_t t) -> char {
      auto rng = trial_stream(cfg, dim, t);
      const auto pair = sample_pair(dim, rng);
      return static_cast<char>((can_improve(pair.alpha, pair.beta) ? 1 : 0) |
                               (majorizes(pair.alpha, pair.beta) ? 2 : 0));
    });
    std::uint64_t improvable = 0, forward = 0;
    for (const char f : flags) {
      improvable += (f & 1) ? 1 : 0;
      forward += (f & 2) ? 1 : 0;
    }
    const auto lhs = bernoulli(dim, improvable, cfg.trials_per_dim);
    const auto fwd = bernoulli(dim, forward, cfg.trials_per_dim);
    BoundRecord r{dim, lhs.estimate, lhs.std_error, 0.5 - fwd.estimate, fwd.std_error, false};
    r.holds = r.lhs >= r.rhs - 3.0 * std::hypot(r.lhs_stderr, r.rhs_stderr);
    records.push_back(r);
  }
  return records;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::SelfCatLocc: return run_selfcat_locc(cfg);
    case ExperimentKind::EntropyCurve: return run_entropy_curve(cfg);
    case ExperimentKind::ConvRate: return run_conv_rate(cfg);
    case ExperimentKind::SelfCatSlocc: return run_selfcat_slocc(cfg);
    case ExperimentKind::GainAvg: return run_gain(cfg);
    case ExperimentKind::GainScatter: return run_gain_scatter(cfg);
    case ExperimentKind::BoundCheck: return bound_check(cfg);
  }
  fail(ErrorCode::ConfigInvalid, "unknown experiment kind");
}

// ---------------------------------------------------------------------------
// Output

namespace {

using Cell = std::variant<std::uint64_t, double>;

std::string num(double x) { return format_scalar(x); }
std::string num(const Cell& c) {
  return std::holds_alternative<double>(c) ? num(std::get<double>(c)) : std::to_string(std::get<std::uint64_t>(c));
}

std::string dims_text(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? ";" : "") + std::to_string(dims[i]);
  return s;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Table tabulate(const ExperimentConfig& cfg, const ExperimentResult& result) {
  auto u = [](std::uint64_t v) { return Cell(v); };
  auto dim = [](int d) { return Cell(static_cast<std::uint64_t>(d)); };
  Table t;
  if (const auto* est = std::get_if<std::vector<EstimateRecord>>(&result)) {
    t.columns = {"dim", "trials", "successes", "estimate", "stderr"};
    for (const auto& r : *est) t.rows.push_back({dim(r.dim), u(r.trials), u(r.successes), r.estimate, r.std_error});
  } else if (const auto* ent = std::get_if<std::vector<EntropyRecord>>(&result)) {
    t.columns = {"dim", "trials", "mean_entropy", "stderr", "page_value"};
    for (const auto& r : *ent) t.rows.push_back({dim(r.dim), u(r.trials), r.mean_entropy, r.std_error, r.page_value});
  } else if (const auto* conv = std::get_if<std::vector<ConvRateRecord>>(&result)) {
    t.columns = {"dim", "trials", "mean_direct", "stderr_direct", "mean_max", "stderr_max"};
    for (const auto& r : *conv) {
      t.rows.push_back({dim(r.direct.dim), u(r.direct.trials), r.direct.estimate, r.direct.std_error,
                        r.best.estimate, r.best.std_error});
    }
  } else if (const auto* gain = std::get_if<std::vector<GainRecord>>(&result)) {
    t.columns = {"dim", "trials", "successes", "mean_gain", "stderr"};
    for (const auto& r : *gain) t.rows.push_back({dim(r.dim), u(r.trials), u(r.successes), r.mean_gain, r.std_error});
  } else if (const auto* pts = std::get_if<std::vector<ScatterPoint>>(&result)) {
    t.columns = {"p_direct", "gain"};
    for (const auto& r : *pts) t.rows.push_back({r.p_direct, r.gain});
  } else if (const auto* bound = std::get_if<std::vector<BoundRecord>>(&result)) {
    t.columns = {"dim", "lhs", "lhs_stderr", "rhs", "rhs_stderr"};
    for (const auto& r : *bound) t.rows.push_back({dim(r.dim), r.lhs, r.lhs_stderr, r.rhs, r.rhs_stderr});
  }
  (void)cfg;
  return t;
}

}  // namespace

void write_csv(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out) {
  out << "# majorcat " << MAJORCAT_VERSION << ", kind=" << to_string(cfg.kind) << ", seed=" << cfg.master_seed
      << ", trials=" << cfg.trials_per_dim << ", dims=" << dims_text(cfg.dims)
      << ", gain_threshold=" << num(cfg.gain_threshold) << ", copies=" << cfg.copies << '\n';
  const Table t = tabulate(cfg, result);
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num(row[i]);
    out << '\n';
  }
}

void write_json(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = {{"tool", "majorcat"},
                 {"version", MAJORCAT_VERSION},
                 {"kind", std::string(to_string(cfg.kind))},
                 {"seed", cfg.master_seed},
                 {"trials", cfg.trials_per_dim},
                 {"dims", cfg.dims},
                 {"gain_threshold", cfg.gain_threshold},
                 {"copies", cfg.copies}};
  const Table t = tabulate(cfg, result);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_result(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out) {
  if (cfg.format == OutputFormat::Json) {
    write_json(cfg, result, out);
  } else {
    write_csv(cfg, result, out);
  }
}

}  // namespace majorcat
