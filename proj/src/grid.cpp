#include "kp/grid.hpp"

#include <cmath>
#include <string>

#include "kp/error.hpp"

namespace kp {

Grid2D Grid2D::make(int nx, int ny, double lx, double ly, double x0,
                    double y0) {
  Grid2D g{nx, ny, lx, ly, x0, y0};
  g.validate();
  return g;
}

void Grid2D::validate() const {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
    throw Error(ErrorKind::kInvalidInput,
                "grid mode counts must be even and >= 8 (got nx=" +
                    std::to_string(nx) + ", ny=" + std::to_string(ny) + ")");
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw Error(ErrorKind::kInvalidInput, "grid side lengths must be positive");
  }
  if (!std::isfinite(x0) || !std::isfinite(y0)) {
    throw Error(ErrorKind::kInvalidInput, "grid center must be finite");
  }
}

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where) {
  if (!(a == b)) {
    throw Error(ErrorKind::kGridMismatch,
                std::string(where) + ": operands live on different grids");
  }
}

}  // namespace kp
