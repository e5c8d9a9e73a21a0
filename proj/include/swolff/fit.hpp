#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace swolff {

/// Least-squares slope of log(y) against log(x). NaN with fewer than two
/// usable points; non-positive values are skipped.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

/// hi, hi/2, hi/4, ... while not below lo.
inline std::vector<double> halving_sweep(double hi, double lo) {
  std::vector<double> out;
  for (double x = hi; x >= lo * (1.0 - 1e-12); x /= 2.0) out.push_back(x);
  return out;
}

}  // namespace swolff
