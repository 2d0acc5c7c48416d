#include "brw/least_squares.hpp"

#include <cmath>
#include <stdexcept>

namespace brw {

LinearFit fit_line_weighted(std::span<const double> x, std::span<const double> y,
                            std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size())
    throw std::invalid_argument("fit_line: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(w[i] > 0.0)) throw std::invalid_argument("fit_line: weights must be positive");
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.slope_se = std::sqrt(1.0 / sxx);
  f.residuals.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    f.residuals.push_back(y[i] - (f.intercept + f.slope * x[i]));
  return f;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  std::vector<double> w(x.size(), 1.0);
  LinearFit f = fit_line_weighted(x, y, w);
  // Ordinary standard error from the residual variance.
  double rss = 0.0;
  for (double r : f.residuals) rss += r * r;
  const double dof = static_cast<double>(x.size()) - 2.0;
  f.slope_se = dof > 0.0 ? std::sqrt(rss / dof) * f.slope_se : 0.0;
  return f;
}

}  // namespace brw
