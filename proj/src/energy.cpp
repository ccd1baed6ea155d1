#include "pxdg/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "pxdg/quadrature.hpp"

namespace pxdg {

void ProblemData::validate() const {
  if (!(r > 0.0)) throw std::invalid_argument("ProblemData: r must be positive");
  if (!xi || !u_D) throw std::invalid_argument("ProblemData: xi and u_D must be set");
}

std::vector<double> barycenter_exponents(const Mesh& mesh, const ExponentField& p) {
  std::vector<double> out(mesh.num_elements());
  for (const auto& el : mesh.elements()) out[el.index] = p(el.barycenter);
  return out;
}

double eval_F(const DgVector& q, const ProblemData& data, FQuadrature rule) {
  const Mesh& mesh = data.mesh;
  if (q.size() != mesh.num_elements()) throw std::invalid_argument("eval_F: field size does not match mesh");
  double acc = 0.0;
  for (const auto& el : mesh.elements()) {
    const double a = norm(q.at(el.index));
    if (a == 0.0) continue;
    if (rule == FQuadrature::Barycenter) {
      const double p = data.exponent(el.barycenter);
      acc += el.area * std::pow(a, p) / p;
    } else {
      acc += quadrature::integrate(el.bounds, [&](Point x) {
        const double p = data.exponent(x);
        return std::pow(a, p) / p;
      });
    }
  }
  return acc;
}

double eval_G(const DgScalar& v, const ProblemData& data) {
  const Mesh& mesh = data.mesh;
  if (v.size() != mesh.num_elements()) throw std::invalid_argument("eval_G: field size does not match mesh");
  double volume = 0.0;
  for (const auto& el : mesh.elements()) {
    const double vk = v[el.index];
    volume += quadrature::integrate(el.bounds, [&](Point x) {
      const double d = vk - data.xi(x);
      return d * d;
    });
  }
  double boundary = 0.0;
  for (const Edge& e : mesh.boundary_edges()) {
    const double vk = v[e.plus];
    boundary += edge_weight(e, data.exponent) * quadrature::integrate(e, [&](Point x) {
      const double d = vk - data.u_D(x);
      return d * d;
    });
  }
  double jumps = 0.0;
  for (const Edge& e : mesh.interior_edges()) {
    const Vec2 j = jump(v, e);
    jumps += edge_weight(e, data.exponent) * e.length * dot(j, j);
  }
  return 0.5 * (volume + boundary + jumps);
}

EnergyReport eval_Jh(const DgScalar& v, const ProblemData& data, FQuadrature rule) {
  EnergyReport rep;
  rep.F = eval_F(b_operator(v, data.mesh), data, rule);
  rep.G = eval_G(v, data);
  rep.J = rep.F + rep.G;
  return rep;
}

double eval_lagrangian(const DgScalar& v, const DgVector& q, const DgVector& lam, const ProblemData& data,
                       FQuadrature rule) {
  const DgVector gap = b_operator(v, data.mesh) - q;
  const double g2 = inner(gap, gap, data.mesh);
  return eval_F(q, data, rule) + eval_G(v, data) + inner(lam, gap, data.mesh) + 0.5 * data.r * g2;
}

DgVector grad_F(const DgVector& q, const ProblemData& data) {
  const Mesh& mesh = data.mesh;
  if (q.size() != mesh.num_elements()) throw std::invalid_argument("grad_F: field size does not match mesh");
  DgVector out(mesh.num_elements());
  for (const auto& el : mesh.elements()) {
    const Vec2 qk = q.at(el.index);
    const double a = norm(qk);
    if (a == 0.0) continue;
    out.set(el.index, std::pow(a, data.exponent(el.barycenter) - 2.0) * qk);
  }
  return out;
}

}  // namespace pxdg
