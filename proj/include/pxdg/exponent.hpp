#pragma once

#include <functional>
#include <memory>

#include "pxdg/dg_core.hpp"
#include "pxdg/mesh.hpp"

namespace pxdg {

/// A variable exponent x -> p(x) with known bounds 1 < p1 <= p(x) <= p2 <= 2.
class ExponentField {
 public:
  using Evaluator = std::function<double(Point)>;

  /// Throws std::invalid_argument unless 1 < p1 <= p2 <= 2.
  ExponentField(Evaluator p, double p1, double p2);

  static ExponentField constant(double p);

  double operator()(Point x) const { return p_(x); }
  double p1() const { return p1_; }
  double p2() const { return p2_; }
  bool is_constant() const { return p1_ == p2_; }

  /// Largest bound violation over the 3x3 Gauss points and edge midpoints of
  /// `mesh`; zero when every sample lies in [p1, p2].
  double bound_violation(const Mesh& mesh) const;

 private:
  Evaluator p_;
  double p1_;
  double p2_;
};

/// Conjugate exponent p/(p-1). Throws std::domain_error for p <= 1.
double conjugate(double p);

/// p(x) = 1 + 1/((b/2)(x1+x2) + 1 + b) for b > 0 and p = 2 for b = 0, on [-1,1]^2.
/// Throws std::invalid_argument for b < 0.
ExponentField manufactured_exponent(double b);

/// Modular: sum over elements of the integral of |u|^{p(x)}, 3x3 Gauss per element.
double modular(const DgScalar& u, const ExponentField& p, const Mesh& mesh);
double modular(const DgVector& q, const ExponentField& p, const Mesh& mesh);

/// Luxemburg norm inf{k > 0 : modular(u/k) <= 1}, 1e-12 relative.
double luxemburg_norm(const DgScalar& u, const ExponentField& p, const Mesh& mesh);
double luxemburg_norm(const DgVector& q, const ExponentField& p, const Mesh& mesh);

/// Root k of modular_of(k) = 1 for a modular_of strictly decreasing in k,
/// where modular_of(k) evaluates the modular of u/k. Returns 0 when
/// modular_of(1) is zero.
double luxemburg_from_modular(const std::function<double(double)>& modular_of, double rel_tol = 1e-12);

}  // namespace pxdg
