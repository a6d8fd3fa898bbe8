#ifndef MCPG_CLI_HPP
#define MCPG_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "mcpg/problems.hpp"
#include "mcpg/spin.hpp"
#include "mcpg/trainer.hpp"

namespace mcpg::cli {

/// (ub - obj) / ub * 100. Throws std::invalid_argument when ub <= 0.
double metric_gap(double ub, double obj);

/// (cut / n - d / 4) / sqrt(d / 4) for a d-regular graph.
double metric_p_ratio(double cut, std::size_t n, std::size_t d);

/// Fraction of coordinates where x and x_true differ.
double metric_ber(std::span<const Spin> x, std::span<const Spin> x_true);

enum class ProblemType { MaxCut, Qubo, MaxSat, Rcc, Ncc, Mimo };

ProblemType parse_problem(const std::string& name);
std::string to_string(ProblemType p);

/// True for problems whose reported objective is maximized.
bool is_maximization(ProblemType p);

/// A loaded instance together with the objective the solver minimizes.
struct Problem {
  ProblemType type = ProblemType::MaxCut;
  std::string source;  // file path, or empty
  std::shared_ptr<const Objective> objective;
  std::optional<MaxCutInstance> graph;
  std::optional<QuboInstance> qubo;
  std::optional<MaxSatInstance> maxsat;
  std::optional<MimoInstance> mimo;
};

/// Reads the file format that belongs to `type`: Gset for maxcut, rcc and
/// ncc; QUBO triplets; WCNF; MIMO JSON.
Problem load_problem(ProblemType type, const std::string& path);
Problem make_problem(ProblemType type, std::string_view text, std::string source = {});

/// Objective in the problem's natural sense: cut weight, x^T Q x, satisfied
/// clause weight (maximized); Cheeger ratio, residual (minimized).
double reported_objective(const Problem& p, std::span<const Spin> x);

/// Problem-specific metrics for an assignment. Gap is included when ub is set
/// and the problem is maximized.
nlohmann::ordered_json evaluate_metrics(const Problem& p, std::span<const Spin> x,
                                        std::optional<double> ub);

nlohmann::ordered_json config_to_json(const TrainConfig& c);

/// Runs the command line `args` (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcpg::cli

#endif  // MCPG_CLI_HPP
