#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace fwave {

/// Residuals over a sample grid with the sup-norm and a pass flag against a
/// fixed tolerance. Grids are either 1-d (points x) or 2-d (points (x,t));
/// exactly one of `grid`/`grid_xt` is populated.
struct ResidualReport {
  std::string label;
  std::vector<double> grid;
  std::vector<std::array<double, 2>> grid_xt;
  std::vector<double> residuals;
  double sup_norm = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t worst = 0;  // index of the largest residual

  static ResidualReport over_points(std::string label, std::vector<double> grid,
                                    std::vector<double> residuals, double tol);
  static ResidualReport over_grid(std::string label,
                                  std::vector<std::array<double, 2>> grid,
                                  std::vector<double> residuals, double tol);

  double worst_x() const;
  double worst_t() const;  // 0 for 1-d reports

  /// {label, grid, residuals, sup_norm, tolerance, pass}
  nlohmann::ordered_json to_json() const;
};

}  // namespace fwave
