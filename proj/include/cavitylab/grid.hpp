#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cavitylab {

// One axis of a sweep. When lo > 0 the samples are lo..hi inclusive; when
// lo <= 0 (a velocity axis starting at rest) they are the right edges
// hi * (i + 1) / n so the singular point is skipped. See also
// linear_axis() for axes where 0 is a valid sample.
struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 1;
};

std::vector<double> velocity_axis(const AxisSpec& a);
std::vector<double> linear_axis(const AxisSpec& a);

// Reduced-unit sweep of (v / K, ell / w). Defaults reproduce the figure
// ranges: v / K in (0, 1.2], ell / w in [0, 3], 200 x 200.
struct GridSpec {
  AxisSpec v_over_K{0.0, 1.2, 200};
  AxisSpec ell_over_w{0.0, 3.0, 200};
};

struct Grid {
  std::vector<double> v_over_K;    // rows
  std::vector<double> ell_over_w;  // columns
  std::vector<double> values;      // row-major

  double at(std::size_t row, std::size_t col) const {
    return values[row * ell_over_w.size() + col];
  }
};

// Evaluates cell(v_over_K, ell_over_w) over the grid, rows split across
// `threads` workers. Output does not depend on the thread count.
Grid evaluate_grid(const GridSpec& spec,
                   const std::function<double(double, double)>& cell,
                   unsigned threads = 1);

}  // namespace cavitylab
