#ifndef MCPG_INSTANCES_HPP
#define MCPG_INSTANCES_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcpg/problems.hpp"

namespace mcpg {

/// Raised for malformed instance text. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Gset / rudy: "n m" then m lines "i j w", 1-based ids. Repeated node pairs
// are merged by summing their weights; each merge appends a message to
// `warnings` when it is non-null.
MaxCutInstance parse_gset(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string emit_gset(const MaxCutInstance& g);

// DIMACS WCNF: "p wcnf n m top", clause lines "w l1 ... lk 0", comment lines
// starting with 'c'. Clauses with weight >= top are hard. A repeated literal is
// collapsed; a clause containing both v and -v is rejected.
MaxSatInstance parse_wcnf(std::string_view text);
std::string emit_wcnf(const MaxSatInstance& inst);

// QUBO triplets: "n nnz" then nnz lines "i j q", 1-based. An off-diagonal line
// sets Q_ij = Q_ji = q.
QuboInstance parse_qubo(std::string_view text);
std::string emit_qubo(const QuboInstance& q);

// MIMO instances as JSON: {"M", "N", "sigma", "H": row-major 2M x 2N, "y",
// "ground_truth" (optional)}.
MimoInstance parse_mimo_json(std::string_view text);
std::string emit_mimo_json(const MimoInstance& inst);

/// Uniformly paired stubs, restarting whenever no admissible pair is left;
/// gives up after 100 restarts. Unit weights.
MaxCutInstance gen_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed);

/// Each pair i < j is an edge with probability p; weights uniform integers in
/// [w_min, w_max].
MaxCutInstance gen_erdos_renyi(std::size_t n, double p, int w_min, int w_max, std::uint64_t seed);

/// Each upper-triangle entry, diagonal included, is nonzero with probability
/// `density`. Magnitudes are U[10, 100], negated with probability neg_prob.
QuboInstance gen_nbiq(std::size_t n, double density, double neg_prob, std::uint64_t seed);

/// Clause families beyond the per-variable unit clauses, which are always
/// generated (one per variable).
struct ClauseCounts {
  std::size_t pairs = 0;    // a1 v a2 together with -a1 v -a2
  std::size_t triples = 0;  // a1 v a2 v a3
  std::size_t quads = 0;    // a1 v a2 v a3 v a4 with -a1 v -a2 and -a3 v -a4
};

/// Soft clauses only, unit weights, random literal signs, distinct variables
/// within each construction.
MaxSatInstance gen_maxsat(std::size_t n, const ClauseCounts& counts, std::uint64_t seed);

/// Standard complex Gaussian channel (unit variance per entry), uniform QPSK
/// symbols, noise calibrated to snr_db.
MimoInstance gen_mimo(std::size_t M, std::size_t N, double snr_db, std::uint64_t seed);

}  // namespace mcpg

#endif  // MCPG_INSTANCES_HPP
