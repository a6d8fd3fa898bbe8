#include "mcpg/sampler.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcpg {

std::size_t SampleBatch::best_index() const {
  if (filtered_values.empty()) throw std::logic_error("SampleBatch::best_index: empty batch");
  return static_cast<std::size_t>(
      std::min_element(filtered_values.begin(), filtered_values.end()) - filtered_values.begin());
}

double mh_acceptance(const PolicyParams& params, std::span<const Spin> x, std::size_t i) {
  const double mu = params.mu(i);
  // Only coordinate i changes, so p(x')/p(x) is a single Bernoulli ratio.
  const double ratio = x[i] > 0 ? (1.0 - mu) / mu : mu / (1.0 - mu);
  return std::min(1.0, ratio);
}

SpinVector mh_chain(const PolicyParams& params, SpinVector start, std::size_t steps, Rng& rng,
                    MhStats* stats) {
  if (steps == 0) throw std::invalid_argument("mh_chain: need at least one transition");
  if (start.size() != params.size()) throw std::invalid_argument("mh_chain: dimension mismatch");
  const std::size_t n = start.size();
  if (n == 0) return start;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t step = 0; step < steps; ++step) {
    const std::size_t i = pick(rng);
    const double accept = mh_acceptance(params, start, i);
    const double u = uniform01(rng);
    const bool ok = u < accept;
    if (ok) start[i] = static_cast<Spin>(-start[i]);
    if (stats != nullptr) {
      ++stats->proposals;
      stats->accepted += ok;
      stats->min_acceptance = std::min(stats->min_acceptance, accept);
    }
  }
  return start;
}

std::vector<SampleBatch> sample_batches(const PolicyParams& params,
                                        std::span<const SpinVector> starts,
                                        const SamplerOptions& options, const Objective& obj,
                                        std::uint64_t seed) {
  const std::size_t k = starts.size();
  const std::size_t m = options.chains_per_start;
  if (k == 0 || m == 0) throw std::invalid_argument("sample_batches: k and m must be >= 1");
  if (options.transitions == 0) throw std::invalid_argument("sample_batches: t must be >= 1");
  if (params.size() != obj.size()) throw std::invalid_argument("sample_batches: dimension mismatch");
  check_filter_applicable(options.filter, obj);
  for (const auto& s : starts) {
    if (s.size() != obj.size()) throw std::invalid_argument("sample_batches: start has wrong size");
  }

  std::vector<SampleBatch> batches(k);
  for (std::size_t i = 0; i < k; ++i) {
    batches[i].start_index = i;
    batches[i].raw.resize(m);
    batches[i].filtered.resize(m);
    batches[i].filtered_values.resize(m);
  }

  const auto total = static_cast<std::int64_t>(k * m);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t c = 0; c < total; ++c) {
    const auto chain = static_cast<std::size_t>(c);
    const std::size_t i = chain / m;
    const std::size_t j = chain % m;
    Rng rng = make_rng(seed, chain);
    SpinVector raw = mh_chain(params, starts[i], options.transitions, rng);
    SpinVector filtered = apply_filter(options.filter, obj, raw, rng);
    batches[i].filtered_values[j] = obj.value(filtered);
    batches[i].raw[j] = std::move(raw);
    batches[i].filtered[j] = std::move(filtered);
  }
  return batches;
}

}  // namespace mcpg
