#include "pxdg/quadrature.hpp"

#include <array>
#include <stdexcept>

namespace pxdg::quadrature {

namespace {

constexpr std::array<double, 1> kN1{0.0};
constexpr std::array<double, 1> kW1{2.0};
constexpr std::array<double, 2> kN2{-0.57735026918962576451, 0.57735026918962576451};
constexpr std::array<double, 2> kW2{1.0, 1.0};
constexpr std::array<double, 3> kN3{-0.77459666924148337704, 0.0, 0.77459666924148337704};
constexpr std::array<double, 3> kW3{0.55555555555555555556, 0.88888888888888888889, 0.55555555555555555556};
constexpr std::array<double, 4> kN4{-0.86113631159405257522, -0.33998104358485626480, 0.33998104358485626480,
                                    0.86113631159405257522};
constexpr std::array<double, 4> kW4{0.34785484513745385737, 0.65214515486254614263, 0.65214515486254614263,
                                    0.34785484513745385737};
constexpr std::array<double, 5> kN5{-0.90617984593866399280, -0.53846931010568309104, 0.0,
                                    0.53846931010568309104, 0.90617984593866399280};
constexpr std::array<double, 5> kW5{0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
                                    0.47862867049936646804, 0.23692688505618908751};

}  // namespace

Rule1d gauss_legendre(int n) {
  switch (n) {
    case 1: return {kN1, kW1};
    case 2: return {kN2, kW2};
    case 3: return {kN3, kW3};
    case 4: return {kN4, kW4};
    case 5: return {kN5, kW5};
    default: throw std::invalid_argument("gauss_legendre: supported point counts are 1..5");
  }
}

}  // namespace pxdg::quadrature
