#pragma once

// Simulation-based ground truth for discernibility: compares the natural
// responses e^{phi t} x0 and phi^k x0 of two systems directly.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netdisc/numkernel.hpp"
#include "netdisc/sysmodel.hpp"

namespace netdisc {

struct OracleConfig {
  std::vector<double> time_grid = default_time_grid();
  /// Largest power k in the discrete check; 0 means 2 * state dimension.
  int power_range = 0;
  double rel_tol = 1e-7;
  int sample_count = 100;
  std::uint64_t seed = 20240607;
  /// Only "mt19937_64" is supported.
  std::string generator = "mt19937_64";

  /// 0, 0.1, ..., 5.0
  static std::vector<double> default_time_grid();
  /// Throws InputError if the grid is empty or negative or rel_tol <= 0.
  void validate() const;
};

/// Caches e^{phi t}, e^{phibar t} over the time grid and the matrix powers so
/// that many initial states can be checked against one pair of systems.
class TrajectoryOracle {
 public:
  TrajectoryOracle(const Matrix& phi, const Matrix& phibar, OracleConfig cfg);

  /// Worst normalized response difference over the time grid and powers.
  /// Continuous term: ||(e^{phi t} - e^{phibar t}) x0|| /
  ///   (||x0|| max(1, ||e^{phi t}||, ||e^{phibar t}||)).
  /// Discrete term: ||(phi^k - phibar^k) x0|| / (||x0|| max(1, ||phi||^k)),
  /// with ||phi|| the larger of the two spectral norms.
  /// Throws InputError for a zero or wrongly sized x0.
  double gap(const Vector& x0) const;

  /// Continuous-time term of gap() at each grid time, as (t, gap) rows.
  std::vector<std::pair<double, double>> trace(const Vector& x0) const;

  const OracleConfig& config() const { return cfg_; }
  int state_dim() const { return dim_; }

 private:
  void check(const Vector& x0) const;

  OracleConfig cfg_;
  int dim_ = 0;
  std::vector<Matrix> exp_diff_;    // e^{phi t} - e^{phibar t}
  std::vector<double> exp_scale_;   // max(1, ||e^{phi t}||, ||e^{phibar t}||)
  std::vector<Matrix> pow_diff_;    // phi^k - phibar^k, k = 0..power_range
  std::vector<double> pow_scale_;   // max(1, ||phi||^k)
};

double trajectory_gap(const NetworkSystem& phi, const NetworkSystem& phibar, const Vector& x0,
                      const OracleConfig& cfg = {});

struct ValidationSummary {
  int inside_total = 0;
  int inside_pass = 0;           // gap <= rel_tol
  int outside_total = 0;
  int outside_discernible = 0;   // gap > rel_tol
  double worst_inside_gap = 0.0;
  double min_outside_gap = 0.0;  // +inf when no outside samples exist
  /// Continuous gap trace of the first outside sample (empty if none).
  std::vector<std::pair<double, double>> probe_trace;

  bool passed() const {
    return inside_pass == inside_total && outside_discernible == outside_total;
  }
};

/// Samples unit vectors inside v (must be indiscernible) and vectors with a
/// unit component in v's orthogonal complement (must be discernible).
ValidationSummary validate_subspace(const Matrix& phi, const Matrix& phibar, const Subspace& v,
                                    const OracleConfig& cfg = {});
ValidationSummary validate_subspace(const NetworkSystem& phi, const NetworkSystem& phibar,
                                    const Subspace& v, const OracleConfig& cfg = {});

}  // namespace netdisc
