#pragma once

namespace cbandit {

// Every solver tolerance lives here.
struct NumericSettings {
  double lp_pivot_tol = 1e-9;      // smallest admissible pivot magnitude
  double lp_feas_tol = 1e-8;       // primal feasibility on returned LP points
  double lp_cost_tol = 1e-10;      // reduced-cost threshold for entering columns
  double qp_feas_tol = 1e-8;
  double qp_kkt_tol = 1e-7;
  double simplex_tol = 1e-9;       // validation of probabilities on grids
  double volume_slack = 1e-9;      // relative slack on the ellipsoid volume assertion
};

const NumericSettings& default_settings();

}  // namespace cbandit
