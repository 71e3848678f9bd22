#include "cavitylab/grid.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "cavitylab/errors.hpp"

namespace cavitylab {

std::vector<double> velocity_axis(const AxisSpec& a) {
  if (a.lo > 0.0) return linear_axis(a);
  if (a.n == 0) throw DomainError("grid axis needs at least one sample");
  if (!(a.hi > 0.0)) throw DomainError("velocity axis needs hi > 0");
  std::vector<double> out(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    out[i] = a.hi * static_cast<double>(i + 1) / static_cast<double>(a.n);
  return out;
}

std::vector<double> linear_axis(const AxisSpec& a) {
  if (a.n == 0) throw DomainError("grid axis needs at least one sample");
  if (a.hi < a.lo) throw DomainError("grid axis has hi < lo");
  std::vector<double> out(a.n);
  if (a.n == 1) {
    out[0] = a.lo;
    return out;
  }
  for (std::size_t i = 0; i < a.n; ++i)
    out[i] = a.lo + (a.hi - a.lo) * static_cast<double>(i) /
                        static_cast<double>(a.n - 1);
  out.back() = a.hi;
  return out;
}

Grid evaluate_grid(const GridSpec& spec,
                   const std::function<double(double, double)>& cell,
                   unsigned threads) {
  Grid g;
  g.v_over_K = velocity_axis(spec.v_over_K);
  g.ell_over_w = linear_axis(spec.ell_over_w);
  if (spec.ell_over_w.lo < 0.0) throw DomainError("ell range must be >= 0");
  const std::size_t rows = g.v_over_K.size();
  const std::size_t cols = g.ell_over_w.size();
  g.values.assign(rows * cols, 0.0);

  const auto fill_rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < rows; i += stride)
      for (std::size_t j = 0; j < cols; ++j)
        g.values[i * cols + j] = cell(g.v_over_K[i], g.ell_over_w[j]);
  };

  const std::size_t workers =
      std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, rows);
  if (workers == 1) {
    fill_rows(0, 1);
    return g;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          fill_rows(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return g;
}

}  // namespace cavitylab
