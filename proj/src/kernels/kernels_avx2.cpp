// Built with -mavx2 -mfma. Only reached through avx2_table(), which checks
// the CPU first.

#include <immintrin.h>

#include <cassert>

#include "pxdg/kernels/kernels.hpp"

namespace pxdg::kernels {

namespace {

// p[0..7] = x0 y0 x1 y1 x2 y2 x3 y3  ->  xs = x0..x3, ys = y0..y3
inline void load_deinterleave(const double* p, __m256d& xs, __m256d& ys) {
  const __m256d a = _mm256_loadu_pd(p);
  const __m256d b = _mm256_loadu_pd(p + 4);
  xs = _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), 0xD8);
  ys = _mm256_permute4x64_pd(_mm256_unpackhi_pd(a, b), 0xD8);
}

inline void store_interleave(double* p, __m256d xs, __m256d ys) {
  const __m256d lo = _mm256_unpacklo_pd(xs, ys);  // x0 y0 x2 y2
  const __m256d hi = _mm256_unpackhi_pd(xs, ys);  // x1 y1 x3 y3
  _mm256_storeu_pd(p, _mm256_permute2f128_pd(lo, hi, 0x20));
  _mm256_storeu_pd(p + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

inline double hsum(__m256d v) {
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void lift(const Grid& g, std::span<const double> u, std::span<double> bu) {
  assert(u.size() == g.size() && bu.size() == 2 * g.size());
  const double sx = 0.5 / g.hx, sy = 0.5 / g.hy;
  const __m256d vsx = _mm256_set1_pd(sx), vsy = _mm256_set1_pd(sy);
  const double* ud = u.data();
  double* out = bu.data();
  for (int j = 0; j < g.ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * g.nx;
    const double* up = ud + (j + 1 < g.ny ? row + g.nx : row);
    const double* dn = ud + (j > 0 ? row - g.nx : row);
    int i = 0;
    auto scalar = [&](int ii) {
      const std::size_t k = row + ii;
      const std::size_t l = ii > 0 ? k - 1 : k;
      const std::size_t r = ii + 1 < g.nx ? k + 1 : k;
      out[2 * k] = (ud[r] - ud[l]) * sx;
      out[2 * k + 1] = (up[ii] - dn[ii]) * sy;
    };
    scalar(i++);
    // Interior columns: both x-neighbours exist.
    for (; i + 4 < g.nx; i += 4) {
      const std::size_t k = row + i;
      const __m256d gx = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(ud + k + 1), _mm256_loadu_pd(ud + k - 1)), vsx);
      const __m256d gy = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(up + i), _mm256_loadu_pd(dn + i)), vsy);
      store_interleave(out + 2 * k, gx, gy);
    }
    for (; i < g.nx; ++i) scalar(i);
  }
}

void lift_adjoint(const Grid& g, std::span<const double> w, std::span<double> out) {
  assert(w.size() == 2 * g.size() && out.size() == g.size());
  const double cx = 0.5 * g.hy, cy = 0.5 * g.hx;
  const double* wd = w.data();
  double* o = out.data();
  // Gather form of the scalar scatter: element j receives +w_x from its left
  // neighbour (or itself on the right boundary) and -w_x from its right
  // neighbour (or itself on the left boundary); likewise in y.
  for (int j = 0; j < g.ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * g.nx;
    const bool has_below = j > 0, has_above = j + 1 < g.ny;
    const double c_below = has_below ? cy : 0.0;
    const double c_above = has_above ? cy : 0.0;
    const double c_self_y = (has_above ? 0.0 : cy) - (has_below ? 0.0 : cy);
    const double* wb = wd + 2 * (has_below ? row - g.nx : row);
    const double* wa = wd + 2 * (has_above ? row + g.nx : row);
    const double* ws = wd + 2 * row;

    auto scalar = [&](int i) {
      double acc = c_below * wb[2 * i + 1] - c_above * wa[2 * i + 1] + c_self_y * ws[2 * i + 1];
      const bool has_left = i > 0, has_right = i + 1 < g.nx;
      if (has_left) acc += cx * ws[2 * (i - 1)];
      if (has_right) acc -= cx * ws[2 * (i + 1)];
      if (!has_right) acc += cx * ws[2 * i];
      if (!has_left) acc -= cx * ws[2 * i];
      o[row + i] = acc;
    };

    const __m256d vcx = _mm256_set1_pd(cx), vcb = _mm256_set1_pd(c_below), vca = _mm256_set1_pd(c_above),
                  vcs = _mm256_set1_pd(c_self_y);
    int i = 0;
    scalar(i++);
    for (; i + 4 < g.nx; i += 4) {
      __m256d wlx, wly, wrx, wry, wbx, wby, wax, way, wsx, wsy;
      load_deinterleave(ws + 2 * (i - 1), wlx, wly);
      load_deinterleave(ws + 2 * (i + 1), wrx, wry);
      load_deinterleave(wb + 2 * i, wbx, wby);
      load_deinterleave(wa + 2 * i, wax, way);
      load_deinterleave(ws + 2 * i, wsx, wsy);
      __m256d acc = _mm256_mul_pd(vcb, wby);
      acc = _mm256_fnmadd_pd(vca, way, acc);
      acc = _mm256_fmadd_pd(vcs, wsy, acc);
      acc = _mm256_fmadd_pd(vcx, _mm256_sub_pd(wlx, wrx), acc);
      _mm256_storeu_pd(o + row + i, acc);
    }
    for (; i < g.nx; ++i) scalar(i);
  }
}

void multiplier_update(double rho, std::span<const double> bu, std::span<const double> eta,
                       std::span<double> lam) {
  assert(bu.size() == lam.size() && eta.size() == lam.size());
  const __m256d vr = _mm256_set1_pd(rho);
  std::size_t i = 0;
  for (; i + 4 <= lam.size(); i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(bu.data() + i), _mm256_loadu_pd(eta.data() + i));
    _mm256_storeu_pd(lam.data() + i, _mm256_fmadd_pd(vr, d, _mm256_loadu_pd(lam.data() + i)));
  }
  for (; i < lam.size(); ++i) lam[i] += rho * (bu[i] - eta[i]);
}

double weighted_sq_diff(std::span<const double> weights, int comps, std::span<const double> a,
                        std::span<const double> b) {
  assert(a.size() == weights.size() * comps && (b.empty() || b.size() == a.size()));
  const bool has_b = !b.empty();
  const double* ad = a.data();
  const double* bd = b.data();
  const double* wd = weights.data();
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(ad + i);
    if (has_b) d = _mm256_sub_pd(d, _mm256_loadu_pd(bd + i));
    __m256d wv;
    if (comps == 1) {
      wv = _mm256_loadu_pd(wd + i);
    } else {
      // (w0, w1) -> (w0, w0, w1, w1)
      wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(wd + i / 2)), 0x50);
    }
    acc = _mm256_fmadd_pd(_mm256_mul_pd(wv, d), d, acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double d = ad[i] - (has_b ? bd[i] : 0.0);
    tail += wd[i / comps] * d * d;
  }
  return hsum(acc) + tail;
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{"avx2", lift, lift_adjoint, multiplier_update, weighted_sq_diff};
  return table;
}

}  // namespace pxdg::kernels
