#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "mcpg/instances.hpp"

namespace mcpg {
namespace {

/// Splits text into (line number, non-empty trimmed content) pairs.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      const auto last = line.find_last_not_of(" \t\r");
      out.emplace_back(line_no, std::string(line.substr(first, last - first + 1)));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(std::move(t));
  return out;
}

long long to_integer(const std::string& tok, std::size_t line, const char* what) {
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError(line, std::string("expected an integer ") + what + ", got '" + tok + "'");
  }
  return v;
}

double to_real(const std::string& tok, std::size_t line, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError(line, std::string("expected a number ") + what + ", got '" + tok + "'");
  }
  return v;
}

std::size_t to_count(const std::string& tok, std::size_t line, const char* what) {
  const long long v = to_integer(tok, line, what);
  if (v < 0) throw ParseError(line, std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

/// Integers print without a decimal point; anything else round-trips via %.17g.
std::string number(double v) {
  if (v == std::rint(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MaxCutInstance parse_gset(std::string_view text, std::vector<std::string>* warnings) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "gset: empty input");
  const auto header = tokens(lines[0].second);
  if (header.size() != 2) throw ParseError(lines[0].first, "gset: header must be 'n m'");
  const std::size_t n = to_count(header[0], lines[0].first, "node count");
  const std::size_t m = to_count(header[1], lines[0].first, "edge count");
  if (lines.size() - 1 != m) {
    throw ParseError(0, "gset: header declares " + std::to_string(m) + " edges, found " +
                            std::to_string(lines.size() - 1));
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [line_no, content] = lines[k];
    const auto tok = tokens(content);
    if (tok.size() != 3) throw ParseError(line_no, "gset: edge line must be 'i j w'");
    const long long i = to_integer(tok[0], line_no, "node id");
    const long long j = to_integer(tok[1], line_no, "node id");
    const double w = to_real(tok[2], line_no, "weight");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n) {
      throw ParseError(line_no, "gset: node id out of range 1.." + std::to_string(n));
    }
    if (i == j) throw ParseError(line_no, "gset: self-loop on node " + std::to_string(i));
    const auto u = static_cast<std::size_t>(i - 1);
    const auto v = static_cast<std::size_t>(j - 1);
    const auto key = std::minmax(u, v);
    auto [it, inserted] = index.emplace(key, edges.size());
    if (inserted) {
      edges.push_back({u, v, w});
    } else {
      edges[it->second].weight += w;
      if (warnings != nullptr) {
        warnings->push_back("line " + std::to_string(line_no) + ": duplicate edge " +
                            std::to_string(i) + " " + std::to_string(j) + ", weights summed");
      }
    }
  }
  return MaxCutInstance(n, std::move(edges));
}

std::string emit_gset(const MaxCutInstance& g) {
  std::string out = std::to_string(g.num_nodes()) + " " + std::to_string(g.num_edges()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " + number(e.weight) + "\n";
  }
  return out;
}

MaxSatInstance parse_wcnf(std::string_view text) {
  const auto lines = content_lines(text);
  std::size_t n = 0;
  std::size_t m = 0;
  double top = std::numeric_limits<double>::infinity();
  bool have_header = false;
  std::vector<Clause> clauses;
  std::vector<std::string> pending;  // tokens of a clause that spans lines
  std::size_t clause_line = 0;

  for (const auto& [line_no, content] : lines) {
    if (content[0] == 'c') continue;
    if (content[0] == 'p') {
      if (have_header) throw ParseError(line_no, "wcnf: second header");
      const auto tok = tokens(content);
      if ((tok.size() != 4 && tok.size() != 5) || tok[0] != "p" || tok[1] != "wcnf") {
        throw ParseError(line_no, "wcnf: header must be 'p wcnf n m [top]'");
      }
      n = to_count(tok[2], line_no, "variable count");
      m = to_count(tok[3], line_no, "clause count");
      if (tok.size() == 5) top = to_real(tok[4], line_no, "top weight");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "wcnf: clause before header");
    for (auto& t : tokens(content)) {
      if (pending.empty()) clause_line = line_no;
      if (t != "0") {
        pending.push_back(std::move(t));
        continue;
      }
      if (pending.empty()) throw ParseError(line_no, "wcnf: clause without weight");
      if (pending.size() == 1) throw ParseError(clause_line, "wcnf: clause has no variables");
      Clause c;
      const double w = to_real(pending[0], clause_line, "clause weight");
      if (!(w > 0.0)) throw ParseError(clause_line, "wcnf: clause weight must be positive");
      c.hard = w >= top;
      c.weight = w;
      for (std::size_t k = 1; k < pending.size(); ++k) {
        const long long lit = to_integer(pending[k], clause_line, "literal");
        if (static_cast<std::size_t>(std::llabs(lit)) > n) {
          throw ParseError(clause_line, "wcnf: literal " + pending[k] + " out of range");
        }
        const int l = static_cast<int>(lit);
        if (std::find(c.literals.begin(), c.literals.end(), -l) != c.literals.end()) {
          throw ParseError(clause_line, "wcnf: clause contains a variable and its negation");
        }
        if (std::find(c.literals.begin(), c.literals.end(), l) == c.literals.end()) {
          c.literals.push_back(l);
        }
      }
      clauses.push_back(std::move(c));
      pending.clear();
    }
  }
  if (!have_header) throw ParseError(0, "wcnf: missing header");
  if (!pending.empty()) throw ParseError(clause_line, "wcnf: clause not terminated by 0");
  if (clauses.size() != m) {
    throw ParseError(0, "wcnf: header declares " + std::to_string(m) + " clauses, found " +
                            std::to_string(clauses.size()));
  }
  return MaxSatInstance(n, std::move(clauses));
}

std::string emit_wcnf(const MaxSatInstance& inst) {
  const double top = inst.hard_weight();
  std::string out = "p wcnf " + std::to_string(inst.num_vars()) + " " +
                    std::to_string(inst.clauses().size()) + " " + number(top) + "\n";
  for (const Clause& c : inst.clauses()) {
    out += number(c.hard ? top : c.weight);
    for (int lit : c.literals) out += " " + std::to_string(lit);
    out += " 0\n";
  }
  return out;
}

QuboInstance parse_qubo(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "qubo: empty input");
  const auto header = tokens(lines[0].second);
  if (header.size() != 2) throw ParseError(lines[0].first, "qubo: header must be 'n nnz'");
  const std::size_t n = to_count(header[0], lines[0].first, "size");
  const std::size_t nnz = to_count(header[1], lines[0].first, "entry count");
  if (lines.size() - 1 != nnz) {
    throw ParseError(0, "qubo: header declares " + std::to_string(nnz) + " entries, found " +
                            std::to_string(lines.size() - 1));
  }
  std::vector<QuboEntry> entries;
  entries.reserve(nnz);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [line_no, content] = lines[k];
    const auto tok = tokens(content);
    if (tok.size() != 3) throw ParseError(line_no, "qubo: entry line must be 'i j q'");
    const long long i = to_integer(tok[0], line_no, "row");
    const long long j = to_integer(tok[1], line_no, "column");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n) {
      throw ParseError(line_no, "qubo: index out of range 1.." + std::to_string(n));
    }
    entries.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1),
                       to_real(tok[2], line_no, "value")});
  }
  return QuboInstance(n, std::move(entries));
}

std::string emit_qubo(const QuboInstance& q) {
  std::string out = std::to_string(q.size()) + " " + std::to_string(q.entries().size()) + "\n";
  for (const QuboEntry& e : q.entries()) {
    out += std::to_string(e.i + 1) + " " + std::to_string(e.j + 1) + " " + number(e.q) + "\n";
  }
  return out;
}

MimoInstance parse_mimo_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("mimo: ") + e.what());
  }
  try {
    const auto M = j.at("M").get<std::size_t>();
    const auto N = j.at("N").get<std::size_t>();
    const auto h = j.at("H").get<std::vector<double>>();
    const auto y = j.at("y").get<std::vector<double>>();
    if (M == 0 || N == 0) throw ParseError(0, "mimo: M and N must be >= 1");
    if (h.size() != 4 * M * N || y.size() != 2 * M) throw ParseError(0, "mimo: H or y has the wrong size");
    MimoInstance inst;
    const auto rows = static_cast<Eigen::Index>(2 * M);
    const auto cols = static_cast<Eigen::Index>(2 * N);
    inst.H = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        h.data(), rows, cols);
    inst.y = Eigen::Map<const Eigen::VectorXd>(y.data(), rows);
    inst.sigma = j.value("sigma", 0.0);
    if (j.contains("ground_truth") && !j["ground_truth"].is_null()) {
      const auto gt = j["ground_truth"].get<std::vector<int>>();
      SpinVector x(gt.begin(), gt.end());
      if (x.size() != 2 * N || !is_valid_spins(x)) throw ParseError(0, "mimo: bad ground_truth");
      inst.ground_truth = std::move(x);
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("mimo: ") + e.what());
  }
}

std::string emit_mimo_json(const MimoInstance& inst) {
  nlohmann::ordered_json j;
  j["M"] = inst.num_receive();
  j["N"] = inst.num_transmit();
  j["sigma"] = inst.sigma;
  std::vector<double> h;
  h.reserve(static_cast<std::size_t>(inst.H.size()));
  for (Eigen::Index r = 0; r < inst.H.rows(); ++r) {
    for (Eigen::Index c = 0; c < inst.H.cols(); ++c) h.push_back(inst.H(r, c));
  }
  j["H"] = h;
  j["y"] = std::vector<double>(inst.y.data(), inst.y.data() + inst.y.size());
  if (inst.ground_truth) {
    j["ground_truth"] = std::vector<int>(inst.ground_truth->begin(), inst.ground_truth->end());
  }
  return j.dump() + "\n";
}

}  // namespace mcpg
