#pragma once

// Convergence-order helpers: least-squares slopes in log-log space and
// Richardson extrapolation.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace bargmann_lab {

struct LogLogFit
{
  double slope     = 0.0;
  double intercept = 0.0;
  double residual  = 0.0;  ///< RMS of the log-space residuals
};

/// Ordinary least squares of log|y| against log x.
inline LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("fit_loglog: need at least two points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0) throw std::invalid_argument("fit_loglog: needs x > 0 and y != 0");
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_loglog: degenerate abscissae");
  LogLogFit fit;
  fit.slope     = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss     = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(std::abs(y[i])) - (fit.intercept + fit.slope * std::log(x[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

/// Eliminates the leading h^order error term from values at step h (coarse) and h/ratio (fine).
inline double richardson(double coarse, double fine, double ratio, double order)
{
  const double f = std::pow(ratio, order);
  return (f * fine - coarse) / (f - 1.0);
}

}  // namespace bargmann_lab
