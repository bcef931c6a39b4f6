#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "etgen/detail/poly_ops.hpp"
#include "etgen/laurent.hpp"

namespace etgen {

/// Hybrid relative pose with unknown focal length, depth formulation.
/// Variables, in order: a1, a2, a3, a4 (depths in the pinhole camera),
/// b (depth of the first point in the generalized camera), f.
template <class Scalar>
struct H13fData {
  /// Image points (third entry 1) of the pinhole camera.
  std::array<std::array<Scalar, 3>, 4> p;
  /// Ray direction of the first point in the generalized camera.
  std::array<Scalar, 3> q;
  /// Known 3D points 2..4.
  std::array<std::array<Scalar, 3>, 3> x;
};

/// Index pairs (i1 < i2) over the four points in lexicographic order.
std::vector<std::pair<int, int>> h13f_pairs();

/// The 6 norm equations followed by the 15 cross equations, or the first
/// 20 of them when `twenty` is set.
template <class Scalar>
LaurentSystem<Scalar> h13f_system(const H13fData<Scalar>& data, bool twenty) {
  using detail::operator*;
  using detail::operator+;
  using detail::operator-;
  constexpr std::size_t k = 6;
  const Scalar zero = from_int<Scalar>(0, data.p[0][0]);
  const Monomial inv_f2 = Monomial::variable(k, 5, -2);

  // Y_ab and X_ab per coordinate as polynomials in (a, b).
  auto y_coord = [&](int a, int b, std::size_t c) {
    return detail::linear<Scalar>({Monomial::variable(k, static_cast<std::size_t>(a)), Monomial::variable(k, static_cast<std::size_t>(b))},
                                  {data.p[static_cast<std::size_t>(a)][c], zero - data.p[static_cast<std::size_t>(b)][c]});
  };
  auto point = [&](int a, std::size_t c) {
    if (a == 0) return detail::linear<Scalar>({Monomial::variable(k, 4)}, {data.q[c]});
    return detail::constant(data.x[static_cast<std::size_t>(a - 1)][c], k);
  };
  auto x_coord = [&](int a, int b, std::size_t c) { return point(a, c) - point(b, c); };

  auto equation = [&](std::pair<int, int> s, std::pair<int, int> t) {
    LaurentPoly<Scalar> lhs;
    for (std::size_t c = 0; c < 3; ++c) {
      auto prod = y_coord(s.first, s.second, c) * y_coord(t.first, t.second, c);
      lhs = lhs + (c < 2 ? shift(prod, inv_f2) : prod);
      lhs = lhs - x_coord(s.first, s.second, c) * x_coord(t.first, t.second, c);
    }
    return lhs;
  };

  const auto pairs = h13f_pairs();
  LaurentSystem<Scalar> system;
  for (const auto& s : pairs) system.push_back(equation(s, s));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) system.push_back(equation(pairs[i], pairs[j]));
  if (twenty) system.pop_back();
  return system;
}

/// Synthetic scene and its ground-truth unknowns (a1..a4, b, f).
struct H13fScene {
  H13fData<double> data;
  Eigen::Matrix<double, 6, 1> truth;
};

H13fScene synth_h13f_scene(std::uint64_t seed);

}  // namespace etgen
