#pragma once

#include <functional>

#include "pxdg/dg_core.hpp"
#include "pxdg/exponent.hpp"
#include "pxdg/mesh.hpp"

namespace pxdg {

using ScalarFunction = std::function<double(Point)>;

struct ProblemData {
  Mesh mesh;
  ExponentField exponent;
  ScalarFunction xi;   // data term
  ScalarFunction u_D;  // boundary datum
  double r = 1.0;      // augmentation parameter

  /// Throws std::invalid_argument when r <= 0 or a function is missing.
  void validate() const;
};

/// How the exponent is sampled inside F.
enum class FQuadrature {
  Gauss3,      // 3x3 Gauss with p(x) evaluated pointwise
  Barycenter,  // |k| |q_k|^{p(xbar_k)} / p(xbar_k), the rule the iteration uses
};

struct EnergyReport {
  double F = 0.0;
  double G = 0.0;
  double J = 0.0;
  double constraint_residual = 0.0;  // ||Bv - q||
};

/// Barycenter exponents p(xbar_k), one per element.
std::vector<double> barycenter_exponents(const Mesh& mesh, const ExponentField& p);

/// F(q) = integral of |q|^{p(x)} / p(x).
double eval_F(const DgVector& q, const ProblemData& data, FQuadrature rule = FQuadrature::Gauss3);

/// G(v) = 1/2 ( ||v - xi||^2 + int_{boundary} |v - u_D|^2 w + int_{interior} |[v]|^2 w ),
/// w = h^{-2/p'} constant per edge.
double eval_G(const DgScalar& v, const ProblemData& data);

/// J_h(v) = F(Bv) + G(v).
EnergyReport eval_Jh(const DgScalar& v, const ProblemData& data, FQuadrature rule = FQuadrature::Gauss3);

/// L_r(v, q, lam) = F(q) + G(v) + <lam, Bv - q> + (r/2) ||Bv - q||^2.
double eval_lagrangian(const DgScalar& v, const DgVector& q, const DgVector& lam, const ProblemData& data,
                       FQuadrature rule = FQuadrature::Gauss3);

/// Density of the Gateaux derivative of the barycenter-rule F:
/// |q_k|^{pbar_k - 2} q_k, and 0 where q_k = 0.
DgVector grad_F(const DgVector& q, const ProblemData& data);

}  // namespace pxdg
