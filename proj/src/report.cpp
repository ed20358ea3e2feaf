#include "fwave/report.hpp"

#include <cmath>

namespace fwave {

namespace {

void finish(ResidualReport& r) {
  r.sup_norm = 0.0;
  r.worst = 0;
  for (std::size_t i = 0; i < r.residuals.size(); ++i) {
    const double a = std::abs(r.residuals[i]);
    if (a > r.sup_norm) {
      r.sup_norm = a;
      r.worst = i;
    }
  }
  r.pass = r.sup_norm <= r.tolerance;
}

}  // namespace

ResidualReport ResidualReport::over_points(std::string label,
                                           std::vector<double> grid,
                                           std::vector<double> residuals,
                                           double tol) {
  ResidualReport r;
  r.label = std::move(label);
  r.grid = std::move(grid);
  r.residuals = std::move(residuals);
  r.tolerance = tol;
  finish(r);
  return r;
}

ResidualReport ResidualReport::over_grid(std::string label,
                                         std::vector<std::array<double, 2>> grid,
                                         std::vector<double> residuals,
                                         double tol) {
  ResidualReport r;
  r.label = std::move(label);
  r.grid_xt = std::move(grid);
  r.residuals = std::move(residuals);
  r.tolerance = tol;
  finish(r);
  return r;
}

double ResidualReport::worst_x() const {
  if (!grid_xt.empty()) return grid_xt[worst][0];
  if (!grid.empty()) return grid[worst];
  return 0.0;
}

double ResidualReport::worst_t() const {
  if (!grid_xt.empty()) return grid_xt[worst][1];
  return 0.0;
}

nlohmann::ordered_json ResidualReport::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  if (!grid_xt.empty()) {
    auto pts = nlohmann::ordered_json::array();
    for (const auto& p : grid_xt) pts.push_back({p[0], p[1]});
    j["grid"] = std::move(pts);
  } else {
    j["grid"] = grid;
  }
  j["residuals"] = residuals;
  j["sup_norm"] = sup_norm;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

}  // namespace fwave
