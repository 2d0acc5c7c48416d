#pragma once

#include <span>
#include <vector>

namespace brw {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // standard error of the slope (0 for exact fits)
  std::vector<double> residuals;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 points with
/// distinct x (throws std::invalid_argument otherwise).
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Weighted least squares with weights w_i = 1 / Var(y_i); slope_se is the
/// model-based standard error sqrt(1 / S_xx,w).
LinearFit fit_line_weighted(std::span<const double> x, std::span<const double> y,
                            std::span<const double> w);

}  // namespace brw
