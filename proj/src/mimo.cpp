#include <cmath>
#include <limits>
#include <stdexcept>

#include "mcpg/problems.hpp"

namespace mcpg {

MimoInstance mimo_build(const Eigen::MatrixXd& channel_real, const Eigen::MatrixXd& channel_imag,
                        std::span<const Spin> x_true, double snr_db, Rng& rng) {
  if (channel_real.rows() != channel_imag.rows() || channel_real.cols() != channel_imag.cols()) {
    throw std::invalid_argument("mimo_build: real and imaginary channel shapes differ");
  }
  const Eigen::Index m = channel_real.rows();
  const Eigen::Index n = channel_real.cols();
  if (m == 0 || n == 0) throw std::invalid_argument("mimo_build: empty channel");
  if (static_cast<Eigen::Index>(x_true.size()) != 2 * n) {
    throw std::invalid_argument("mimo_build: x_true must hold 2N spins");
  }
  if (!is_valid_spins(x_true)) throw std::invalid_argument("mimo_build: x_true is not a spin vector");
  if (std::isnan(snr_db)) throw std::invalid_argument("mimo_build: snr_db is NaN");

  MimoInstance inst;
  inst.H.resize(2 * m, 2 * n);
  inst.H << channel_real, -channel_imag, channel_imag, channel_real;

  Eigen::VectorXd x(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) x[i] = x_true[static_cast<std::size_t>(i)];
  inst.y = inst.H * x;

  if (std::isfinite(snr_db)) {
    // SNR = M sigma_x^2 / sigma_v^2 with sigma_x^2 = E||xc||^2 = 2N for QPSK, so
    // E||noise||^2 = 2MN / snr spread over 2M real components.
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double per_component_var = static_cast<double>(n) / snr;
    inst.sigma = std::sqrt(per_component_var);
    std::normal_distribution<double> noise(0.0, inst.sigma);
    for (Eigen::Index i = 0; i < inst.y.size(); ++i) inst.y[i] += noise(rng);
  } else if (snr_db < 0) {
    throw std::invalid_argument("mimo_build: snr_db = -inf");
  }
  inst.ground_truth = SpinVector(x_true.begin(), x_true.end());
  return inst;
}

namespace {

SpinForm gram_form(const MimoInstance& inst) {
  if (inst.H.rows() != inst.y.size()) throw std::invalid_argument("MimoObjective: H and y disagree");
  const Eigen::MatrixXd gram = inst.H.transpose() * inst.H;
  const Eigen::VectorXd hty = inst.H.transpose() * inst.y;
  SpinForm form;
  form.n = static_cast<std::size_t>(inst.H.cols());
  form.linear.resize(form.n);
  form.constant = gram.trace() + inst.y.squaredNorm();
  for (std::size_t i = 0; i < form.n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    form.linear[i] = -2.0 * hty[ii];
    for (std::size_t j = i + 1; j < form.n; ++j) {
      const double g = gram(ii, static_cast<Eigen::Index>(j));
      if (g != 0.0) form.quadratic.push_back({i, j, 2.0 * g});
    }
  }
  return form;
}

}  // namespace

MimoObjective::MimoObjective(MimoInstance instance)
    : MimoObjective(instance, gram_form(instance)) {}

MimoObjective::MimoObjective(MimoInstance instance, const SpinForm& form)
    : IsingObjective(form.n, form.quadratic, form.linear, form.constant, "mimo"),
      instance_(std::move(instance)) {}

double MimoObjective::evaluate(std::span<const Spin> x) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  return (instance_.H * v - instance_.y).squaredNorm();
}

}  // namespace mcpg
