#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "mcpg/cli.hpp"
#include "mcpg/instances.hpp"

namespace mcpg::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

const std::vector<std::string> kProblems = {"maxcut", "qubo", "maxsat", "rcc", "ncc", "mimo"};

/// Solver flags shared by solve and bench.
struct TrainFlags {
  std::size_t epochs = 100;
  std::size_t starts = 16;
  std::size_t chains = 32;
  std::size_t transitions = 10;
  std::optional<double> lambda0;
  double lambda_decay = 0.97;
  double step_c = 0.01;
  double adam_lr = 0.1;
  double alpha = kDefaultAlpha;
  std::string filter = "ls";
  std::string variant = "mcpg";
  std::string optimizer = "sgd";
  std::size_t pretrain_epochs = 50;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--epochs", epochs, "Training epochs (tau)")->capture_default_str();
    app->add_option("--starts", starts, "Starting points per epoch (k)")->capture_default_str();
    app->add_option("--chains", chains, "Chains per starting point (m)")->capture_default_str();
    app->add_option("--transitions", transitions, "MH transitions per chain (t)")->capture_default_str();
    app->add_option("--lambda0", lambda0, "Initial entropy weight (default: 0.1 x first-epoch spread)");
    app->add_option("--lambda-decay", lambda_decay, "Per-epoch entropy weight decay")->capture_default_str();
    app->add_option("--step-c", step_c, "SGD step constant c")->capture_default_str();
    app->add_option("--adam-lr", adam_lr, "Adam learning rate")->capture_default_str();
    app->add_option("--alpha", alpha, "Probability floor alpha")->capture_default_str();
    app->add_option("--filter", filter, "Filter function")
        ->check(CLI::IsMember({"none", "kflip1", "kflip2", "ls", "ls-conv", "edge-ls", "edge-ls-conv"}))
        ->capture_default_str();
    app->add_option("--variant", variant, "Solver variant")
        ->check(CLI::IsMember({"mcpg", "mcpg-u", "mcpg-p"}))
        ->capture_default_str();
    app->add_option("--optimizer", optimizer, "Policy optimizer")
        ->check(CLI::IsMember({"sgd", "adam"}))
        ->capture_default_str();
    app->add_option("--pretrain-epochs", pretrain_epochs, "MCPG-P pretraining epochs")->capture_default_str();
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
  }

  TrainConfig build() const {
    TrainConfig c;
    c.epochs = epochs;
    c.starts = starts;
    c.chains = chains;
    c.transitions = transitions;
    c.lambda.lambda0 = lambda0;
    c.lambda.decay = lambda_decay;
    c.step.c = step_c;
    c.step.adam_lr = adam_lr;
    c.alpha = alpha;
    c.filter = FilterKind::parse(filter);
    c.variant = parse_variant(variant);
    c.optimizer = parse_optimizer(optimizer);
    c.pretrain_epochs = pretrain_epochs;
    c.seed = seed;
    c.validate();
    return c;
  }
};

Json hardware_json() {
  Json h;
  h["hardware_threads"] = std::thread::hardware_concurrency();
#ifdef __VERSION__
  h["compiler"] = __VERSION__;
#endif
  return h;
}

Json instance_json(const Problem& p) {
  Json j;
  j["source"] = p.source;
  j["variables"] = p.objective->size();
  if (p.graph) j["edges"] = p.graph->num_edges();
  if (p.qubo) j["entries"] = p.qubo->entries().size();
  if (p.maxsat) {
    j["clauses"] = p.maxsat->clauses().size();
    j["hard_clauses"] = p.maxsat->num_hard();
  }
  if (p.mimo) {
    j["M"] = p.mimo->num_receive();
    j["N"] = p.mimo->num_transmit();
  }
  return j;
}

Json history_json(const std::vector<EpochRecord>& history) {
  Json arr = Json::array();
  for (const auto& r : history) {
    Json e;
    e["epoch"] = r.epoch;
    e["best_value"] = r.best_value;
    e["mean_value"] = r.mean_value;
    e["grad_norm"] = r.grad_norm;
    e["lambda"] = r.lambda;
    e["step"] = r.step;
    arr.push_back(std::move(e));
  }
  return arr;
}

struct Run {
  TrainResult result;
  double seconds = 0.0;
};

Run timed_run(const TrainConfig& cfg, const Problem& p) {
  const auto t0 = Clock::now();
  Run r{run(cfg, *p.objective), 0.0};
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

Json run_report(const Problem& p, const TrainConfig& cfg, const Run& run, std::optional<double> ub) {
  const auto& x = run.result.best_solution;
  Json j;
  j["problem"] = to_string(p.type);
  j["instance"] = instance_json(p);
  j["seed"] = cfg.seed;
  j["config"] = config_to_json(cfg);
  j["lambda0_used"] = run.result.lambda0;
  j["assignment"] = std::vector<int>(x.begin(), x.end());
  j["objective"] = reported_objective(p, x);
  j["sense"] = is_maximization(p.type) ? "max" : "min";
  j["internal_value"] = run.result.best_value;
  j["metrics"] = evaluate_metrics(p, x, ub);
  j["history"] = history_json(run.result.history);
  j["warnings"] = run.result.warnings;
  j["wall_clock_seconds"] = run.seconds;
  j["hardware"] = hardware_json();
  return j;
}

std::string format_number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

std::string text_report(const Json& j) {
  std::ostringstream ss;
  ss << "problem    " << j["problem"].get<std::string>() << "\n";
  ss << "instance   " << j["instance"]["source"].get<std::string>() << " (n = "
     << j["instance"]["variables"].get<std::size_t>() << ")\n";
  ss << "variant    " << j["config"]["variant"].get<std::string>() << ", seed "
     << j["seed"].get<std::uint64_t>() << "\n";
  ss << "objective  " << format_number(j["objective"].get<double>()) << " ("
     << j["sense"].get<std::string>() << ")\n";
  for (const auto& [key, value] : j["metrics"].items()) {
    ss << std::left << std::setw(11) << key << " " << value.dump() << "\n";
  }
  ss << "time       " << std::fixed << std::setprecision(3) << j["wall_clock_seconds"].get<double>()
     << " s\n";
  for (const auto& w : j["warnings"]) ss << "warning    " << w.get<std::string>() << "\n";
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

/// Writes `content` to `path`, or to `out` when path is empty.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

SpinVector read_assignment(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  const auto j = nlohmann::json::parse(in);
  const auto values = j.at("assignment").get<std::vector<int>>();
  SpinVector x(values.begin(), values.end());
  if (x.size() != n) throw std::invalid_argument("assignment has " + std::to_string(x.size()) +
                                                 " entries, instance has " + std::to_string(n));
  if (!is_valid_spins(x)) throw std::invalid_argument("assignment entries must be -1 or +1");
  return x;
}

struct GenerateFlags {
  std::string family;
  std::size_t n = 0;
  std::size_t d = 3;
  double p = 0.5;
  int w_min = 1;
  int w_max = 1;
  double density = 0.8;
  std::optional<double> neg_prob;
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t quads = 0;
  std::size_t M = 0;
  std::size_t N = 0;
  double snr_db = 10.0;
  std::uint64_t seed = 0;
  std::string out_path;
};

std::string generate(const GenerateFlags& g) {
  if (g.family == "regular") return emit_gset(gen_regular_graph(g.n, g.d, g.seed));
  if (g.family == "er") return emit_gset(gen_erdos_renyi(g.n, g.p, g.w_min, g.w_max, g.seed));
  if (g.family == "nbiq") {
    if (!g.neg_prob) throw std::invalid_argument("nbiq needs --neg-prob");
    return emit_qubo(gen_nbiq(g.n, g.density, *g.neg_prob, g.seed));
  }
  if (g.family == "maxsat") {
    return emit_wcnf(gen_maxsat(g.n, ClauseCounts{g.pairs, g.triples, g.quads}, g.seed));
  }
  if (g.family == "mimo") return emit_mimo_json(gen_mimo(g.M, g.N, g.snr_db, g.seed));
  throw std::invalid_argument("unknown family '" + g.family + "'");
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo policy gradient solver for binary optimization", "mcpg"};
  app.require_subcommand(1);

  std::string problem_name;
  std::string instance_path;
  std::string out_path;
  std::string format = "json";
  std::optional<double> ub;
  TrainFlags train;

  auto add_problem_args = [&](CLI::App* sub) {
    sub->add_option("problem", problem_name, "Problem type")->required()->check(CLI::IsMember(kProblems));
    sub->add_option("instance", instance_path, "Instance file")->required();
    sub->add_option("--ub", ub, "Best-known value for the gap metric");
    sub->add_option("--out", out_path, "Write the JSON result to this file");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Run the solver on an instance file");
  add_problem_args(solve);
  train.attach(solve);

  std::size_t repeats = 20;
  auto* bench = app.add_subcommand("bench", "Repeat independently seeded runs and aggregate gaps");
  add_problem_args(bench);
  train.attach(bench);
  bench->add_option("--repeats", repeats, "Independent runs")->capture_default_str()->check(CLI::PositiveNumber);

  std::string solution_path;
  auto* evaluate = app.add_subcommand("evaluate", "Score an assignment against an instance");
  add_problem_args(evaluate);
  evaluate->add_option("solution", solution_path, "JSON file with an \"assignment\" array")->required();

  GenerateFlags gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random instance");
  generate_cmd->add_option("family", gen.family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"regular", "er", "nbiq", "maxsat", "mimo"}));
  generate_cmd->add_option("--n", gen.n, "Number of nodes or variables");
  generate_cmd->add_option("--d", gen.d, "Degree (regular)")->capture_default_str();
  generate_cmd->add_option("--p", gen.p, "Edge probability (er)")->capture_default_str();
  generate_cmd->add_option("--w-min", gen.w_min, "Smallest edge weight (er)")->capture_default_str();
  generate_cmd->add_option("--w-max", gen.w_max, "Largest edge weight (er)")->capture_default_str();
  generate_cmd->add_option("--density", gen.density, "Nonzero density (nbiq)")->capture_default_str();
  generate_cmd->add_option("--neg-prob", gen.neg_prob, "Probability of a negative weight (nbiq, required)");
  generate_cmd->add_option("--pairs", gen.pairs, "Complementary 2-clause pairs (maxsat)");
  generate_cmd->add_option("--triples", gen.triples, "Random 3-clauses (maxsat)");
  generate_cmd->add_option("--quads", gen.quads, "4-clause groups (maxsat)");
  generate_cmd->add_option("--M", gen.M, "Receive antennas (mimo)");
  generate_cmd->add_option("--N", gen.N, "Transmit antennas (mimo)");
  generate_cmd->add_option("--snr", gen.snr_db, "SNR in dB (mimo)")->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  generate_cmd->add_option("--out", gen.out_path, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (generate_cmd->parsed()) {
      emit(gen.out_path, generate(gen), out);
      return 0;
    }

    const Problem problem = load_problem(parse_problem(problem_name), instance_path);

    if (evaluate->parsed()) {
      const SpinVector x = read_assignment(solution_path, problem.objective->size());
      Json j;
      j["problem"] = to_string(problem.type);
      j["objective"] = reported_objective(problem, x);
      j["sense"] = is_maximization(problem.type) ? "max" : "min";
      j["internal_value"] = problem.objective->value(x);
      j["metrics"] = evaluate_metrics(problem, x, ub);
      emit(out_path, j.dump(2) + "\n", out);
      return 0;
    }

    const TrainConfig config = train.build();

    if (solve->parsed()) {
      const Json report = run_report(problem, config, timed_run(config, problem), ub);
      if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
      if (format == "text") {
        out << text_report(report);
      } else if (out_path.empty()) {
        out << report.dump(2) << "\n";
      }
      return 0;
    }

    // bench
    Json runs = Json::array();
    std::vector<double> objectives;
    std::vector<double> times;
    for (std::size_t r = 0; r < repeats; ++r) {
      TrainConfig c = config;
      c.seed = derive_seed(config.seed, r);
      const Run run = timed_run(c, problem);
      Json j;
      j["seed"] = c.seed;
      j["objective"] = reported_objective(problem, run.result.best_solution);
      j["wall_clock_seconds"] = run.seconds;
      objectives.push_back(j["objective"].get<double>());
      times.push_back(run.seconds);
      runs.push_back(std::move(j));
    }
    const bool maximize = is_maximization(problem.type);
    const double best = maximize ? *std::max_element(objectives.begin(), objectives.end())
                                 : *std::min_element(objectives.begin(), objectives.end());
    Json summary;
    summary["problem"] = to_string(problem.type);
    summary["instance"] = instance_json(problem);
    summary["config"] = config_to_json(config);
    summary["repeats"] = repeats;
    summary["best_objective"] = best;
    summary["mean_objective"] = mean(objectives);
    summary["mean_time"] = mean(times);
    const std::optional<double> reference = ub ? ub : std::optional<double>(best);
    if (maximize && *reference > 0.0) {
      std::vector<double> gaps;
      for (std::size_t r = 0; r < repeats; ++r) {
        gaps.push_back(metric_gap(*reference, objectives[r]));
        runs[r]["gap"] = gaps.back();
      }
      summary["ub"] = *reference;
      summary["ub_source"] = ub ? "given" : "best found";
      summary["best_gap"] = *std::min_element(gaps.begin(), gaps.end());
      summary["mean_gap"] = mean(gaps);
    } else {
      summary["best_gap"] = nullptr;
      summary["mean_gap"] = nullptr;
    }
    summary["runs"] = std::move(runs);
    summary["hardware"] = hardware_json();

    if (!out_path.empty()) write_file(out_path, summary.dump(2) + "\n");
    if (format == "text") {
      char line[160];
      std::snprintf(line, sizeof line, "%-10s %8s %14s %10s %10s %10s\n", "problem", "n", "best",
                    "best gap", "mean gap", "time (s)");
      out << line;
      const auto gap_str = [](const Json& v) {
        return v.is_null() ? std::string("-") : format_number(v.get<double>());
      };
      std::snprintf(line, sizeof line, "%-10s %8zu %14s %10s %10s %10.3f\n",
                    to_string(problem.type).c_str(), problem.objective->size(),
                    format_number(best).c_str(), gap_str(summary["best_gap"]).c_str(),
                    gap_str(summary["mean_gap"]).c_str(), mean(times));
      out << line;
    } else if (out_path.empty()) {
      out << summary.dump(2) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mcpg::cli
