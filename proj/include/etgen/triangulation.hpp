#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include <Eigen/Core>

#include "etgen/detail/poly_ops.hpp"
#include "etgen/laurent.hpp"

namespace etgen {

using Camera = Eigen::Matrix<double, 3, 4>;

/// Three cameras observing one point, with noise-free projections.
struct TriangulationScene {
  std::array<Camera, 3> cameras;
  /// Image points with third entry 1.
  std::array<Eigen::Vector3d, 3> points;
  Eigen::Vector3d point;
};

/// Point in the unit cube at the origin, camera centers on the unit
/// sphere, random rotations, focal length ~1000 px and principal point
/// ~(500, 500) px with 1% jitter. Resamples until the point has positive
/// depth in every camera. Deterministic in `seed`.
TriangulationScene synth_triangulation_scene(std::uint64_t seed);

/// Residual numerators P^c X - u^c P^3 X of the six image coordinates as
/// coefficients of (x, y, z, 1), in the frame where the third camera rows
/// are (1,0,0,0), (0,1,0,0), (0,0,0,1).
template <class Scalar>
using TriangulationData = std::array<std::array<Scalar, 4>, 6>;

/// Scene moved to the canonical frame, with image coordinates centered at
/// 500 px and scaled by 1/1000 (a uniform rescaling of the cost).
struct CanonicalScene {
  TriangulationData<double> numerators;
  /// world (homogeneous) = frame * canonical (homogeneous).
  Eigen::Matrix4d frame;
};

CanonicalScene canonicalize(const TriangulationScene& scene);

/// Canonical coordinates (x, y, z) back to a world point.
Eigen::Vector3d to_world(const CanonicalScene& canonical, const Eigen::Vector3d& xyz);

/// Sum of squared reprojection errors of a world point.
double reprojection_cost(const TriangulationScene& scene, const Eigen::Vector3d& point);

/// Cost in canonical coordinates: sum of (N_i / D_i)^2 with D = (x, y, 1).
double canonical_cost(const TriangulationData<double>& data, const Eigen::Vector3d& xyz);

/// The three stationarity conditions d/dx, d/dy, d/dz of the canonical
/// cost as Laurent polynomials in x, y, z.
template <class Scalar>
LaurentSystem<Scalar> triangulation_system(const TriangulationData<Scalar>& data) {
  using detail::operator*;
  using detail::operator+;
  constexpr std::size_t k = 3;
  const std::vector<Monomial> affine{Monomial::variable(k, 0), Monomial::variable(k, 1), Monomial::variable(k, 2),
                                     Monomial(k)};
  const std::array<Monomial, 3> denominators{Monomial::variable(k, 0), Monomial::variable(k, 1), Monomial(k)};
  std::array<LaurentPoly<Scalar>, 3> gradient;
  for (std::size_t r = 0; r < 6; ++r) {
    const auto& n = data[r];
    const LaurentPoly<Scalar> residual =
        shift(detail::linear(affine, std::vector<Scalar>(n.begin(), n.end())), denominators[r / 2].inverse());
    const Scalar two = from_int<Scalar>(2, n[0]);
    for (std::size_t v = 0; v < k; ++v) gradient[v] = gradient[v] + two * (residual * detail::derivative(residual, v));
  }
  return {gradient.begin(), gradient.end()};
}

/// Triangulation system straight from cameras already in the canonical
/// frame. Throws std::invalid_argument when a third row is not canonical.
LaurentSystem<double> triangulation_system(const std::array<Camera, 3>& cameras,
                                           const std::array<Eigen::Vector3d, 3>& points);

/// Generic instance over a field: uniformly random numerators.
template <class Scalar, class Sample>
TriangulationData<Scalar> random_triangulation_data(Sample&& sample) {
  TriangulationData<Scalar> data;
  for (auto& row : data)
    for (auto& c : row) c = sample();
  return data;
}

struct Placement {
  Eigen::Vector3d point;
  double cost = 0.0;
  double error = 0.0;
};

/// Among the real canonical roots, the one whose world point has the least
/// reprojection cost, with its distance to the ground truth.
std::optional<Placement> best_placement(const TriangulationScene& scene, const CanonicalScene& canonical,
                                        const std::vector<Eigen::Vector3d>& real_roots);

}  // namespace etgen
