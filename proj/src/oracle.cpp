#include "netdisc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "netdisc/errors.hpp"

namespace netdisc {

std::vector<double> OracleConfig::default_time_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 50; ++k) grid.push_back(0.1 * k);
  return grid;
}

void OracleConfig::validate() const {
  if (time_grid.empty()) throw InputError("oracle: time grid is empty");
  for (double t : time_grid) {
    if (!(std::isfinite(t) && t >= 0.0)) throw InputError("oracle: time grid entries must be >= 0");
  }
  if (!(rel_tol > 0.0)) throw InputError("oracle: rel_tol must be positive");
  if (power_range < 0) throw InputError("oracle: power_range must be >= 0");
  if (sample_count < 0) throw InputError("oracle: sample_count must be >= 0");
  if (generator != "mt19937_64") {
    throw InputError("oracle: unsupported generator '" + generator + "' (use mt19937_64)");
  }
}

TrajectoryOracle::TrajectoryOracle(const Matrix& phi, const Matrix& phibar, OracleConfig cfg)
    : cfg_(std::move(cfg)), dim_(static_cast<int>(phi.rows())) {
  cfg_.validate();
  if (phi.rows() != phi.cols() || phibar.rows() != phibar.cols() || phi.rows() != phibar.rows()) {
    throw InputError("oracle: transition matrices must be square and of equal size");
  }
  for (double t : cfg_.time_grid) {
    const Matrix e = expm(phi, t);
    const Matrix ebar = expm(phibar, t);
    exp_diff_.push_back(e - ebar);
    exp_scale_.push_back(std::max({1.0, norm2(e), norm2(ebar)}));
  }

  const int kmax = cfg_.power_range > 0 ? cfg_.power_range : 2 * dim_;
  const double base = std::max(norm2(phi), norm2(phibar));
  Matrix p = Matrix::Identity(dim_, dim_);
  Matrix pbar = p;
  double scale = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    pow_diff_.push_back(p - pbar);
    pow_scale_.push_back(std::max(1.0, scale));
    p = p * phi;
    pbar = pbar * phibar;
    scale *= base;
    if (!p.allFinite() || !pbar.allFinite() || !std::isfinite(scale)) {
      throw NumericalError("oracle: matrix powers overflowed; reduce power_range");
    }
  }
}

void TrajectoryOracle::check(const Vector& x0) const {
  if (x0.size() != dim_) throw InputError("oracle: initial state has the wrong length");
  if (x0.norm() == 0.0) throw InputError("oracle: initial state must be nonzero");
}

double TrajectoryOracle::gap(const Vector& x0) const {
  check(x0);
  const double xn = x0.norm();
  double worst = 0.0;
  for (std::size_t i = 0; i < exp_diff_.size(); ++i) {
    worst = std::max(worst, (exp_diff_[i] * x0).norm() / (xn * exp_scale_[i]));
  }
  for (std::size_t k = 0; k < pow_diff_.size(); ++k) {
    worst = std::max(worst, (pow_diff_[k] * x0).norm() / (xn * pow_scale_[k]));
  }
  return worst;
}

std::vector<std::pair<double, double>> TrajectoryOracle::trace(const Vector& x0) const {
  check(x0);
  const double xn = x0.norm();
  std::vector<std::pair<double, double>> rows;
  for (std::size_t i = 0; i < exp_diff_.size(); ++i) {
    rows.emplace_back(cfg_.time_grid[i], (exp_diff_[i] * x0).norm() / (xn * exp_scale_[i]));
  }
  return rows;
}

double trajectory_gap(const NetworkSystem& phi, const NetworkSystem& phibar, const Vector& x0,
                      const OracleConfig& cfg) {
  return TrajectoryOracle(phi.phi(), phibar.phi(), cfg).gap(x0);
}

ValidationSummary validate_subspace(const Matrix& phi, const Matrix& phibar, const Subspace& v,
                                    const OracleConfig& cfg) {
  const TrajectoryOracle oracle(phi, phibar, cfg);
  if (v.ambient_dim() != oracle.state_dim()) {
    throw InputError("validate_subspace: subspace lives in the wrong ambient space");
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_vector = [&](Eigen::Index size) {
    Vector g(size);
    for (Eigen::Index i = 0; i < size; ++i) g(i) = Complex(normal(rng), normal(rng));
    return g;
  };

  ValidationSummary s;
  s.min_outside_gap = std::numeric_limits<double>::infinity();
  const Subspace perp = v.complement();

  if (v.dim() > 0) {
    for (int k = 0; k < cfg.sample_count; ++k) {
      Vector x = v.basis() * random_vector(v.dim());
      x.normalize();
      const double g = oracle.gap(x);
      ++s.inside_total;
      if (g <= cfg.rel_tol) ++s.inside_pass;
      s.worst_inside_gap = std::max(s.worst_inside_gap, g);
    }
  }
  if (perp.dim() > 0) {
    for (int k = 0; k < cfg.sample_count; ++k) {
      Vector w = perp.basis() * random_vector(perp.dim());
      w.normalize();
      Vector x = w;
      if (v.dim() > 0) {
        Vector in = v.basis() * random_vector(v.dim());
        x += in / in.norm();
      }
      x.normalize();
      const double g = oracle.gap(x);
      ++s.outside_total;
      if (g > cfg.rel_tol) ++s.outside_discernible;
      s.min_outside_gap = std::min(s.min_outside_gap, g);
      if (k == 0) s.probe_trace = oracle.trace(x);
    }
  }
  return s;
}

ValidationSummary validate_subspace(const NetworkSystem& phi, const NetworkSystem& phibar,
                                    const Subspace& v, const OracleConfig& cfg) {
  return validate_subspace(phi.phi(), phibar.phi(), v, cfg);
}

}  // namespace netdisc
