#ifndef MCPG_PROBLEMS_HPP
#define MCPG_PROBLEMS_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcpg/objective.hpp"
#include "mcpg/rng.hpp"
#include "mcpg/spin.hpp"

namespace mcpg {

// ---------------------------------------------------------------------------
// Graphs and MaxCut
// ---------------------------------------------------------------------------

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  std::size_t node;
  std::size_t edge;
};

/// Weighted undirected graph with 0-based node ids. Each edge is stored once;
/// self-loops and repeated node pairs are rejected.
class MaxCutInstance {
 public:
  MaxCutInstance() = default;
  MaxCutInstance(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t i) const;
  std::size_t degree(std::size_t i) const { return neighbors(i).size(); }

  double total_weight() const noexcept { return total_weight_; }

  /// Sum of w_ij over edges with x_i != x_j.
  double cut_weight(std::span<const Spin> x) const;

  bool operator==(const MaxCutInstance& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  double total_weight_ = 0.0;
};

/// Quadratic spin model f(s) = c + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j.
///
/// Local fields are cached in the state so that a flip delta is O(1) and an
/// accepted flip is O(degree).
class IsingObjective : public Objective {
 public:
  struct Coupling {
    std::size_t i;
    std::size_t j;
    double value;
  };

  IsingObjective(std::size_t n, std::span<const Coupling> couplings, std::vector<double> fields,
                 double constant, std::string name = "ising");

  std::size_t size() const noexcept override { return n_; }
  std::string name() const override { return name_; }

  double constant() const noexcept { return constant_; }
  std::span<const double> fields() const noexcept { return fields_; }

  /// h_i + sum_j J_ij s_j.
  double local_field(std::span<const Spin> x, std::size_t i) const;

 protected:
  double evaluate(std::span<const Spin> x) const override;
  double evaluate_flip(std::span<const Spin> x, std::size_t i) const override;
  std::unique_ptr<LocalState> build_state(SpinVector x) const override;

 private:
  class State;
  struct Entry {
    std::size_t node;
    double coupling;
  };

  std::size_t n_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
  std::vector<double> fields_;
  double constant_;
  std::string name_;
};

/// f(x) = -cut(x) = -(1/2) sum_{(i,j) in E} w_ij (1 - x_i x_j).
class MaxCutObjective final : public IsingObjective {
 public:
  explicit MaxCutObjective(MaxCutInstance instance);

  const MaxCutInstance& instance() const noexcept { return instance_; }
  const MaxCutInstance* graph() const noexcept override { return &instance_; }

 private:
  MaxCutInstance instance_;
};

// ---------------------------------------------------------------------------
// QUBO
// ---------------------------------------------------------------------------

struct QuboEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double q = 0.0;

  bool operator==(const QuboEntry&) const = default;
};

/// Symmetric Q stored as its upper triangle plus diagonal. An off-diagonal
/// entry (i, j, q) stands for Q_ij = Q_ji = q, so x^T Q x contains 2 q x_i x_j.
class QuboInstance {
 public:
  QuboInstance() = default;
  /// Entries are normalized to i <= j, sorted, and repeated positions summed.
  QuboInstance(std::size_t n, std::vector<QuboEntry> entries);

  std::size_t size() const noexcept { return n_; }
  const std::vector<QuboEntry>& entries() const noexcept { return entries_; }

  /// x^T Q x for x in {0,1}^n.
  double value01(std::span<const int> bits) const;

  bool operator==(const QuboInstance&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<QuboEntry> entries_;
};

/// x^T Q x rewritten in spins s = 2x - 1:
///   sum_{i<j} J_ij s_i s_j + sum_i h_i s_i + c.
struct SpinForm {
  std::size_t n = 0;
  std::vector<IsingObjective::Coupling> quadratic;
  std::vector<double> linear;
  double constant = 0.0;

  double evaluate(std::span<const Spin> s) const;
};

SpinForm qubo_to_spin(const QuboInstance& q);

/// Minimizes -x^T Q x over spins via the spin form.
class QuboObjective final : public IsingObjective {
 public:
  explicit QuboObjective(QuboInstance instance);
  const QuboInstance& instance() const noexcept { return instance_; }

 private:
  QuboObjective(QuboInstance instance, const SpinForm& form);
  QuboInstance instance_;
};

// ---------------------------------------------------------------------------
// Cheeger cuts
// ---------------------------------------------------------------------------

enum class CheegerKind { Ratio, Normalized };

/// Finite stand-in for the value of a partition with an empty side.
double cheeger_sentinel(const MaxCutInstance& g);

/// RCC = cut / min(|S|, |S^c|), NCC = cut / |S| + cut / |S^c|, with
/// S = {i : x_i = +1}. Returns cheeger_sentinel(g) if either side is empty.
double cheeger_value(const MaxCutInstance& g, std::span<const Spin> x, CheegerKind kind);

class CheegerObjective final : public Objective {
 public:
  CheegerObjective(MaxCutInstance instance, CheegerKind kind);

  std::size_t size() const noexcept override { return instance_.num_nodes(); }
  std::string name() const override;
  const MaxCutInstance* graph() const noexcept override { return &instance_; }
  CheegerKind kind() const noexcept { return kind_; }

 protected:
  double evaluate(std::span<const Spin> x) const override;
  std::unique_ptr<LocalState> build_state(SpinVector x) const override;

 private:
  class State;
  double ratio(double cut, std::size_t side_plus) const;

  MaxCutInstance instance_;
  CheegerKind kind_;
  double sentinel_;
};

// ---------------------------------------------------------------------------
// MIMO detection
// ---------------------------------------------------------------------------

/// Real-valued reduction of a complex QPSK detection problem:
///   H = [[Re Hc, -Im Hc], [Im Hc, Re Hc]], y = [Re yc; Im yc].
struct MimoInstance {
  Eigen::MatrixXd H;  // 2M x 2N
  Eigen::VectorXd y;  // 2M
  double sigma = 0.0; // noise standard deviation per real component
  std::optional<SpinVector> ground_truth;

  std::size_t num_receive() const { return static_cast<std::size_t>(H.rows() / 2); }
  std::size_t num_transmit() const { return static_cast<std::size_t>(H.cols() / 2); }
};

/// Stacks the complex channel into the real block form and draws
/// y = H x + noise. x_true holds [Re x; Im x] as 2N spins. The noise satisfies
/// E||Hc xc||^2 / E||noise||^2 = M * 2N / E||noise||^2 = 10^(snr_db / 10) for
/// a unit-variance channel; snr_db = +inf gives a noiseless instance.
MimoInstance mimo_build(const Eigen::MatrixXd& channel_real, const Eigen::MatrixXd& channel_imag,
                        std::span<const Spin> x_true, double snr_db, Rng& rng);

/// f(x) = ||Hx - y||^2. Flip deltas go through the Gram form
/// x^T (H^T H) x - 2 (H^T y)^T x + ||y||^2.
class MimoObjective final : public IsingObjective {
 public:
  explicit MimoObjective(MimoInstance instance);
  const MimoInstance& instance() const noexcept { return instance_; }

 protected:
  double evaluate(std::span<const Spin> x) const override;

 private:
  MimoObjective(MimoInstance instance, const SpinForm& form);
  MimoInstance instance_;
};

// ---------------------------------------------------------------------------
// (Partial) MaxSAT
// ---------------------------------------------------------------------------

struct Clause {
  std::vector<int> literals;  // DIMACS style: +v means x_v = +1, -v means x_v = -1
  double weight = 1.0;
  bool hard = false;

  bool operator==(const Clause&) const = default;
};

/// Clauses over variables 1..n. Hard clause weights are normalized to
/// (sum of soft weights) + 1, which equals |C_1| + 1 for unit soft weights.
class MaxSatInstance {
 public:
  MaxSatInstance() = default;
  MaxSatInstance(std::size_t num_vars, std::vector<Clause> clauses);

  std::size_t num_vars() const noexcept { return n_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  double hard_weight() const noexcept { return hard_weight_; }
  double soft_weight_total() const noexcept { return soft_total_; }
  std::size_t num_hard() const noexcept;

  static bool literal_true(int literal, std::span<const Spin> x) {
    const Spin s = x[static_cast<std::size_t>(literal > 0 ? literal : -literal) - 1];
    return literal > 0 ? s > 0 : s < 0;
  }
  static bool clause_satisfied(const Clause& c, std::span<const Spin> x);

  double satisfied_soft_weight(std::span<const Spin> x) const;
  std::size_t satisfied_count(std::span<const Spin> x) const;
  bool hard_satisfied(std::span<const Spin> x) const;

  bool operator==(const MaxSatInstance&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Clause> clauses_;
  double soft_total_ = 0.0;
  double hard_weight_ = 1.0;
};

/// f(x) = -sum_i w_i [clause i satisfied].
class MaxSatObjective final : public Objective {
 public:
  explicit MaxSatObjective(MaxSatInstance instance);

  std::size_t size() const noexcept override { return instance_.num_vars(); }
  std::string name() const override { return "maxsat"; }
  const MaxSatInstance& instance() const noexcept { return instance_; }

 protected:
  double evaluate(std::span<const Spin> x) const override;
  double evaluate_flip(std::span<const Spin> x, std::size_t i) const override;
  std::unique_ptr<LocalState> build_state(SpinVector x) const override;

 private:
  class State;
  struct Occurrence {
    std::size_t clause;
    bool positive;
  };

  MaxSatInstance instance_;
  std::vector<std::vector<Occurrence>> occurrences_;
};

// ---------------------------------------------------------------------------
// l1 exact penalty
// ---------------------------------------------------------------------------

/// f_sigma(x) = f(x) + sigma * sum_i |c_i(x)| for equality constraints c_i(x) = 0.
class PenalizedObjective final : public Objective {
 public:
  using Constraint = std::function<double(std::span<const Spin>)>;

  PenalizedObjective(std::shared_ptr<const Objective> base, std::vector<Constraint> constraints,
                     double sigma);

  std::size_t size() const noexcept override { return base_->size(); }
  std::string name() const override { return "penalized(" + base_->name() + ")"; }
  double sigma() const noexcept { return sigma_; }
  const Objective& base() const noexcept { return *base_; }

  /// sum_i |c_i(x)|.
  double violation(std::span<const Spin> x) const;

 protected:
  double evaluate(std::span<const Spin> x) const override;
  double evaluate_flip(std::span<const Spin> x, std::size_t i) const override;

 private:
  std::shared_ptr<const Objective> base_;
  std::vector<Constraint> constraints_;
  double sigma_;
};

double penalty_value(const PenalizedObjective& p, std::span<const Spin> x);

}  // namespace mcpg

#endif  // MCPG_PROBLEMS_HPP
