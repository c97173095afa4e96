#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

namespace cbandit {

/// Inside, or a halfspace a.z <= c holding on the whole target set while the
/// query violates it (a.w >= c; equality is a central cut).
struct SeparationResult {
  bool inside = true;
  Eigen::VectorXd a;
  double c = 0.0;

  static SeparationResult in() { return {}; }
  static SeparationResult cut(Eigen::VectorXd a, double c) { return {false, std::move(a), c}; }
};

using SeparationOracle = std::function<SeparationResult(const Eigen::VectorXd&)>;

struct EllipsoidState {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;  // E = {z : (z - center)^T shape^{-1} (z - center) <= 1}
  int iteration = 0;
};

struct EllipsoidOptions {
  std::optional<Eigen::VectorXd> center;  // default: origin
  int max_calls = 0;                      // 0: use ellipsoid_cap
  double volume_slack = 1e-9;
};

struct EllipsoidResult {
  bool found = false;
  Eigen::VectorXd point;
  int calls = 0;
  int cap = 0;
  bool proven_empty = false;  // a deep cut removed the whole ellipsoid
  double log_det = 0.0;       // of the final shape matrix
};

/// ceil(2 n (n+1) ln(R / Delta)) + n
int ellipsoid_cap(int n, double R, double Delta);

/// Central/deep-cut ellipsoid method starting from the ball of radius R.
/// Throws NumericalError if the shape matrix loses positive definiteness or a
/// cut fails to shrink the volume by the classical factor.
EllipsoidResult ellipsoid_find(const SeparationOracle& oracle, int n, double R, double Delta,
                               const EllipsoidOptions& opt = {});

}  // namespace cbandit
