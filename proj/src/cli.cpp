#include "majorcat/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "majorcat/any_vector.hpp"
#include "majorcat/experiments.hpp"
#include "majorcat/locc.hpp"
#include "majorcat/random_states.hpp"
#include "majorcat/slocc.hpp"

namespace majorcat {
namespace {

struct PairOptions {
  std::string alpha;
  std::string beta;
  std::string kappa;
  bool exact = false;
  unsigned copies = 1;       // catalyst
  unsigned prob_copies = 0;  // prob
  unsigned max_copies = 12;
  bool prob = false;
  bool report = false;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string render(double p) { return format_scalar(p); }
std::string render(const Rational& p) { return format_scalar(p) + " ≈ " + round_decimal(p, 6); }

Mode mode(const PairOptions& o) { return o.exact ? Mode::Exact : Mode::Float; }

template <class Scalar>
void warn_degenerate(const std::vector<Eigen::Index>& minimizers, std::ostream& err) {
  if constexpr (!is_exact_v<Scalar>) {
    if (minimizers.size() > 1) {
      err << "warning: degenerate minimum, |L| = " << minimizers.size()
          << " in float mode; rerun with --exact to confirm\n";
    }
  }
}

std::string index_list(const std::vector<Eigen::Index>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + "}";
}

int run_check(const PairOptions& o, std::ostream& out) {
  const auto alpha = parse_any_vector(o.alpha, mode(o));
  const auto beta = parse_any_vector(o.beta, mode(o));
  const auto v = visit_same_mode([](const auto& a, const auto& b) { return verdict(a, b); }, alpha, beta);
  out << to_string(v) << '\n';
  return kExitOk;
}

int run_prob(const PairOptions& o, std::ostream& out, std::ostream& err) {
  const auto alpha = parse_any_vector(o.alpha, mode(o));
  const auto beta = parse_any_vector(o.beta, mode(o));
  visit_same_mode(
      [&]<class Scalar>(const SchmidtVector<Scalar>& a, const SchmidtVector<Scalar>& b) {
        out << render(multi_copy_probability(a, b, o.prob_copies)) << '\n';
        if (o.report) {
          const auto r = slocc_report(a, b);
          out << "p_direct: " << render(r.p_direct) << '\n'
              << "ceiling: " << render(r.ceiling) << '\n'
              << "improvable: " << yes_no(r.improvable) << '\n';
          if (r.improvable) {
            out << "minimizers: " << index_list(r.minimizer_set) << '\n';
            warn_degenerate<Scalar>(r.minimizer_set, err);
          }
        }
      },
      alpha, beta);
  return kExitOk;
}

int run_catalyst(const PairOptions& o, std::ostream& out, std::ostream& err) {
  const auto alpha = parse_any_vector(o.alpha, mode(o));
  const auto beta = parse_any_vector(o.beta, mode(o));
  const auto kappa = parse_any_vector(o.kappa, mode(o));
  visit_same_mode(
      [&]<class Scalar>(const SchmidtVector<Scalar>& a, const SchmidtVector<Scalar>& b,
                        const SchmidtVector<Scalar>& k) {
        if (!o.prob) {
          const auto rep = is_catalyst(a, b, k, o.copies);
          out << "direct: " << to_string(rep.direct_verdict) << '\n'
              << "catalyzed: " << yes_no(rep.catalyzed) << '\n'
              << "kappa-access: " << yes_no(rep.kappa_access()) << '\n';
          return;
        }
        const auto attached = tensor_power(k, o.copies);
        out << "p_direct: " << render(vidal_probability(a, b)) << '\n'
            << "p_catalyzed: " << render(vidal_probability(tensor(a, attached), tensor(b, attached))) << '\n';
        const bool oracle = oracle_is_prob_catalyst(a, b, attached);
        out << "oracle: " << yes_no(oracle) << '\n';
        warn_degenerate<Scalar>(minimizer_set(a, b), err);
        const bool criterion = feng_is_catalyst(a, b, attached);
        out << "criterion: " << yes_no(criterion) << '\n';
        if (criterion != oracle) {
          out << "agreement: no\n";
          err << "warning: catalyst criterion and brute-force oracle disagree\n";
        }
      },
      alpha, beta, kappa);
  return kExitOk;
}

int run_selfcat(const PairOptions& o, std::ostream& out) {
  const auto alpha = parse_any_vector(o.alpha, mode(o));
  const auto beta = parse_any_vector(o.beta, mode(o));
  visit_same_mode(
      [&]<class Scalar>(const SchmidtVector<Scalar>& a, const SchmidtVector<Scalar>& b) {
        if (!o.prob) {
          const auto n = min_self_catalysis_copies(a, b, o.max_copies);
          if (n) {
            out << "N=" << *n << '\n';
          } else {
            out << "none up to N=" << o.max_copies << '\n';
          }
          return;
        }
        const auto curve = multi_copy_curve(a, b, o.max_copies);
        for (std::size_t n = 0; n < curve.size(); ++n) out << "N=" << n << " p=" << render(curve[n]) << '\n';
        std::optional<std::size_t> first_gain;
        for (std::size_t n = 1; n < curve.size() && !first_gain; ++n) {
          if (curve[n] > curve[0]) first_gain = n;
        }
        if (first_gain) {
          out << "first gain at N=" << *first_gain << '\n';
        } else {
          out << "no gain up to N=" << o.max_copies << '\n';
        }
        if (effective_rank(a) >= effective_rank(b)) {
          out << "ceiling: " << render(ceiling(a, b)) << '\n';
          if (effective_rank(a) == effective_rank(b) && can_improve(a, b)) {
            out << "criterion (N=1): " << yes_no(is_prob_self_catalyst(a, b)) << '\n';
          }
        }
      },
      alpha, beta);
  return kExitOk;
}

struct SampleOptions {
  std::string kind = "selfcat-slocc";
  std::string dims;
  std::uint32_t trials = 10000;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "csv";
  double gain_threshold = 1e-5;
  unsigned copies = 1;
  unsigned workers = 1;
  std::uint64_t max_rejections = 1'000'000;
};

int run_sample(const SampleOptions& s, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  cfg.kind = parse_kind(s.kind);
  cfg.dims = parse_dims(s.dims);
  cfg.trials_per_dim = s.trials;
  cfg.master_seed = s.seed;
  cfg.gain_threshold = s.gain_threshold;
  cfg.copies = s.copies;
  cfg.out_path = s.out;
  cfg.format = parse_format(s.format);
  cfg.workers = s.workers;
  cfg.max_rejections = s.max_rejections;
  validate(cfg);

  const auto result = run_experiment(cfg);
  if (const auto* bound = std::get_if<std::vector<BoundRecord>>(&result)) {
    for (const auto& r : *bound) {
      if (!r.holds) err << "warning: bound inequality fails beyond 3 sigma at dim " << r.dim << '\n';
    }
  }
  if (cfg.out_path.empty() || cfg.out_path == "-") {
    write_result(cfg, result, out);
    return kExitOk;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) fail(ErrorCode::ConfigInvalid, "cannot open '" + cfg.out_path + "' for writing");
  write_result(cfg, result, file);
  return kExitOk;
}

int run_page(const std::string& dims_text, std::ostream& out) {
  out << "dim,page_value\n";
  for (const int d : parse_dims(dims_text)) out << d << ',' << format_scalar(page_entropy(d)) << '\n';
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotIncomparable:
    case ErrorCode::PreconditionFailed:
    case ErrorCode::RankMismatch:
    case ErrorCode::ExactModeUnsupported:
      return kExitPrecondition;
    case ErrorCode::RejectionBudgetExhausted:
      return kExitBudget;
    default:
      return kExitInputError;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"majorcat: convertibility and catalysis of bipartite pure states from Schmidt vectors"};
  app.require_subcommand(1);

  PairOptions pair;
  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", pair.alpha, "source Schmidt vector, e.g. 0.6,0.2,0.2")->required();
    cmd->add_option("--beta", pair.beta, "target Schmidt vector")->required();
    cmd->add_flag("--exact", pair.exact, "exact rational arithmetic");
  };

  auto* check = app.add_subcommand("check", "LOCC comparability verdict");
  add_pair(check);

  auto* prob = app.add_subcommand("prob", "optimal SLOCC conversion probability");
  add_pair(prob);
  prob->add_option("--copies", pair.prob_copies, "copies of alpha attached as catalyst")->default_val(0);
  prob->add_flag("--report", pair.report, "also print ceiling, improvability and minimizers");

  auto* catalyst = app.add_subcommand("catalyst", "deterministic or probabilistic catalyst test");
  add_pair(catalyst);
  catalyst->add_option("--kappa", pair.kappa, "catalyst Schmidt vector")->required();
  catalyst->add_option("--copies", pair.copies, "copies of kappa attached")->default_val(1)->check(
      CLI::PositiveNumber);
  catalyst->add_flag("--prob", pair.prob, "probabilistic (SLOCC) catalysis");

  auto* selfcat = app.add_subcommand("selfcat", "minimal number of self-catalyst copies");
  add_pair(selfcat);
  selfcat->add_option("--max-copies", pair.max_copies, "largest N tried")->default_val(12)->check(
      CLI::PositiveNumber);
  selfcat->add_flag("--prob", pair.prob, "SLOCC probabilities for N = 0..max");

  SampleOptions sample_opts;
  auto* sample = app.add_subcommand("sample", "run a seeded Monte Carlo experiment");
  sample->add_option("--kind", sample_opts.kind,
                     "selfcat-locc | entropy | conv-rate | selfcat-slocc | gain | gain-scatter | bound")
      ->required();
  sample->add_option("--dims", sample_opts.dims, "e.g. 5,10,20 or 2..100:7")->required();
  sample->add_option("--trials", sample_opts.trials, "trials per dimension")->default_val(10000);
  sample->add_option("--seed", sample_opts.seed, "master seed")->default_val(0);
  sample->add_option("--out", sample_opts.out, "output file, - for stdout")->default_val("-");
  sample->add_option("--format", sample_opts.format, "csv | json")->default_val("csv");
  sample->add_option("--gain-threshold", sample_opts.gain_threshold, "relative SLOCC gain threshold")
      ->default_val(1e-5);
  sample->add_option("--copies", sample_opts.copies, "copies of alpha used as catalyst")->default_val(1);
  sample->add_option("--workers", sample_opts.workers, "worker threads")->default_val(1);
  sample->add_option("--max-rejections", sample_opts.max_rejections, "pair draws allowed per trial")
      ->default_val(1'000'000);

  std::string page_dims;
  auto* page = app.add_subcommand("page", "mean normalized entropy of Haar states");
  page->add_option("--dims", page_dims, "dimensions")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*check) return run_check(pair, out);
    if (*prob) return run_prob(pair, out, err);
    if (*catalyst) return run_catalyst(pair, out, err);
    if (*selfcat) return run_selfcat(pair, out);
    if (*sample) return run_sample(sample_opts, out, err);
    if (*page) return run_page(page_dims, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitInputError;
}

}  // namespace majorcat
