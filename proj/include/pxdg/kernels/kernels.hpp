#pragma once

// Data-parallel inner loops of the iteration on the uniform grid.
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled in a separate translation unit on x86-64 and picked at runtime
// when the CPU supports AVX2 and FMA. Set PXDG_KERNELS=scalar to force the
// reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace pxdg::kernels {

/// Row-major nx-by-ny grid of elements with spacings hx, hy.
struct Grid {
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

struct KernelTable {
  std::string_view name;

  /// bu = B u on the grid, bu interleaved (2 * grid.size()).
  /// In x: (u[right] - u[left]) / (2 hx), where a missing neighbour is replaced
  /// by the element itself; likewise in y.
  void (*lift)(const Grid& grid, std::span<const double> u, std::span<double> bu);

  /// out_j = sum_k |k| <w_k, (B e_j)_k>, i.e. B^T W w with W the element areas.
  void (*lift_adjoint)(const Grid& grid, std::span<const double> w, std::span<double> out);

  /// lam += rho * (bu - eta), all of equal length.
  void (*multiplier_update)(double rho, std::span<const double> bu, std::span<const double> eta,
                            std::span<double> lam);

  /// sum_k weights[k] * sum_c (a[k*comps+c] - b[k*comps+c])^2, comps in {1, 2}.
  /// An empty b is read as zeros.
  double (*weighted_sq_diff)(std::span<const double> weights, int comps, std::span<const double> a,
                             std::span<const double> b);
};

const KernelTable& scalar_table();

/// nullptr unless the AVX2 variant was compiled in and the CPU supports it.
const KernelTable* avx2_table();

/// Selected once per process.
const KernelTable& active();

}  // namespace pxdg::kernels
