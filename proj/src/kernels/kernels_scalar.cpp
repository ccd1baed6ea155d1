#include <cassert>

#include "pxdg/kernels/kernels.hpp"

namespace pxdg::kernels {

namespace {

void lift(const Grid& g, std::span<const double> u, std::span<double> bu) {
  assert(u.size() == g.size() && bu.size() == 2 * g.size());
  const double sx = 0.5 / g.hx, sy = 0.5 / g.hy;
  for (int j = 0; j < g.ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * g.nx;
    const std::size_t below = j > 0 ? row - g.nx : row;
    const std::size_t above = j + 1 < g.ny ? row + g.nx : row;
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = row + i;
      const std::size_t l = i > 0 ? k - 1 : k;
      const std::size_t r = i + 1 < g.nx ? k + 1 : k;
      bu[2 * k] = (u[r] - u[l]) * sx;
      bu[2 * k + 1] = (u[above + i] - u[below + i]) * sy;
    }
  }
}

void lift_adjoint(const Grid& g, std::span<const double> w, std::span<double> out) {
  assert(w.size() == 2 * g.size() && out.size() == g.size());
  const double cx = 0.5 * g.hy, cy = 0.5 * g.hx;  // |k| / (2 hx), |k| / (2 hy)
  for (double& o : out) o = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * g.nx;
    const std::size_t below = j > 0 ? row - g.nx : row;
    const std::size_t above = j + 1 < g.ny ? row + g.nx : row;
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = row + i;
      const std::size_t l = i > 0 ? k - 1 : k;
      const std::size_t r = i + 1 < g.nx ? k + 1 : k;
      const double wx = cx * w[2 * k], wy = cy * w[2 * k + 1];
      out[r] += wx;
      out[l] -= wx;
      out[above + i] += wy;
      out[below + i] -= wy;
    }
  }
}

void multiplier_update(double rho, std::span<const double> bu, std::span<const double> eta,
                       std::span<double> lam) {
  assert(bu.size() == lam.size() && eta.size() == lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) lam[i] += rho * (bu[i] - eta[i]);
}

double weighted_sq_diff(std::span<const double> weights, int comps, std::span<const double> a,
                        std::span<const double> b) {
  assert(a.size() == weights.size() * comps && (b.empty() || b.size() == a.size()));
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    double s = 0.0;
    for (int c = 0; c < comps; ++c) {
      const std::size_t i = k * comps + c;
      const double d = a[i] - (b.empty() ? 0.0 : b[i]);
      s += d * d;
    }
    acc += weights[k] * s;
  }
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", lift, lift_adjoint, multiplier_update, weighted_sq_diff};
  return table;
}

}  // namespace pxdg::kernels
