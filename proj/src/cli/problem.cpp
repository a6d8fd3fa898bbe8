#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mcpg/cli.hpp"
#include "mcpg/instances.hpp"

namespace mcpg::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Degree d if the graph is d-regular with unit weights, otherwise nothing.
std::optional<std::size_t> unit_regular_degree(const MaxCutInstance& g) {
  if (g.num_nodes() == 0 || g.num_edges() == 0) return std::nullopt;
  for (const Edge& e : g.edges()) {
    if (e.weight != 1.0) return std::nullopt;
  }
  const std::size_t d = g.degree(0);
  for (std::size_t i = 1; i < g.num_nodes(); ++i) {
    if (g.degree(i) != d) return std::nullopt;
  }
  return d;
}

}  // namespace

double metric_gap(double ub, double obj) {
  if (!(ub > 0.0)) throw std::invalid_argument("gap is only defined for a positive upper bound");
  return (ub - obj) / ub * 100.0;
}

double metric_p_ratio(double cut, std::size_t n, std::size_t d) {
  if (d == 0 || n == 0) throw std::invalid_argument("p_ratio needs n >= 1 and d >= 1");
  const double q = static_cast<double>(d) / 4.0;
  return (cut / static_cast<double>(n) - q) / std::sqrt(q);
}

double metric_ber(std::span<const Spin> x, std::span<const Spin> x_true) {
  if (x.size() != x_true.size()) throw std::invalid_argument("ber: length mismatch");
  if (x.empty()) throw std::invalid_argument("ber: empty vectors");
  return static_cast<double>(hamming_distance(x, x_true)) / static_cast<double>(x.size());
}

ProblemType parse_problem(const std::string& name) {
  if (name == "maxcut") return ProblemType::MaxCut;
  if (name == "qubo") return ProblemType::Qubo;
  if (name == "maxsat") return ProblemType::MaxSat;
  if (name == "rcc") return ProblemType::Rcc;
  if (name == "ncc") return ProblemType::Ncc;
  if (name == "mimo") return ProblemType::Mimo;
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::string to_string(ProblemType p) {
  switch (p) {
    case ProblemType::MaxCut:
      return "maxcut";
    case ProblemType::Qubo:
      return "qubo";
    case ProblemType::MaxSat:
      return "maxsat";
    case ProblemType::Rcc:
      return "rcc";
    case ProblemType::Ncc:
      return "ncc";
    case ProblemType::Mimo:
      return "mimo";
  }
  return "maxcut";
}

bool is_maximization(ProblemType p) {
  return p == ProblemType::MaxCut || p == ProblemType::Qubo || p == ProblemType::MaxSat;
}

Problem make_problem(ProblemType type, std::string_view text, std::string source) {
  Problem p;
  p.type = type;
  p.source = std::move(source);
  switch (type) {
    case ProblemType::MaxCut:
      p.graph = parse_gset(text);
      p.objective = std::make_shared<MaxCutObjective>(*p.graph);
      break;
    case ProblemType::Rcc:
    case ProblemType::Ncc:
      p.graph = parse_gset(text);
      p.objective = std::make_shared<CheegerObjective>(
          *p.graph, type == ProblemType::Rcc ? CheegerKind::Ratio : CheegerKind::Normalized);
      break;
    case ProblemType::Qubo:
      p.qubo = parse_qubo(text);
      p.objective = std::make_shared<QuboObjective>(*p.qubo);
      break;
    case ProblemType::MaxSat:
      p.maxsat = parse_wcnf(text);
      p.objective = std::make_shared<MaxSatObjective>(*p.maxsat);
      break;
    case ProblemType::Mimo:
      p.mimo = parse_mimo_json(text);
      p.objective = std::make_shared<MimoObjective>(*p.mimo);
      break;
  }
  return p;
}

Problem load_problem(ProblemType type, const std::string& path) {
  return make_problem(type, read_file(path), path);
}

double reported_objective(const Problem& p, std::span<const Spin> x) {
  switch (p.type) {
    case ProblemType::MaxCut:
      return p.graph->cut_weight(x);
    case ProblemType::Qubo:
    case ProblemType::MaxSat:
      return -p.objective->value(x);
    case ProblemType::Rcc:
    case ProblemType::Ncc:
    case ProblemType::Mimo:
      return p.objective->value(x);
  }
  return p.objective->value(x);
}

nlohmann::ordered_json evaluate_metrics(const Problem& p, std::span<const Spin> x,
                                        std::optional<double> ub) {
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  const double objective = reported_objective(p, x);
  switch (p.type) {
    case ProblemType::MaxCut:
      if (auto d = unit_regular_degree(*p.graph)) {
        m["p_ratio"] = metric_p_ratio(objective, p.graph->num_nodes(), *d);
      }
      break;
    case ProblemType::MaxSat:
      m["hard_satisfied"] = p.maxsat->hard_satisfied(x);
      m["satisfied_soft_weight"] = p.maxsat->satisfied_soft_weight(x);
      m["satisfied_clauses"] = p.maxsat->satisfied_count(x);
      m["num_clauses"] = p.maxsat->clauses().size();
      break;
    case ProblemType::Rcc:
    case ProblemType::Ncc: {
      m["cut"] = p.graph->cut_weight(x);
      std::size_t plus = 0;
      for (Spin s : x) plus += s > 0;
      m["side_sizes"] = {plus, x.size() - plus};
      break;
    }
    case ProblemType::Mimo:
      if (p.mimo->ground_truth) m["ber"] = metric_ber(x, *p.mimo->ground_truth);
      break;
    case ProblemType::Qubo:
      break;
  }
  if (ub && is_maximization(p.type)) m["gap"] = metric_gap(*ub, objective);
  return m;
}

nlohmann::ordered_json config_to_json(const TrainConfig& c) {
  nlohmann::ordered_json j;
  j["variant"] = to_string(c.variant);
  j["epochs"] = c.epochs;
  j["starts"] = c.starts;
  j["chains"] = c.chains;
  j["transitions"] = c.transitions;
  j["filter"] = c.filter.to_string();
  j["alpha"] = c.alpha;
  j["lambda0"] = c.lambda.lambda0 ? nlohmann::ordered_json(*c.lambda.lambda0) : nlohmann::ordered_json();
  j["lambda_decay"] = c.lambda.decay;
  j["optimizer"] = to_string(c.optimizer);
  j["step_c"] = c.step.c;
  j["adam_lr"] = c.step.adam_lr;
  j["pretrain_epochs"] = c.pretrain_epochs;
  j["seed"] = c.seed;
  return j;
}

}  // namespace mcpg::cli
