#include "etgen/triangulation.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace etgen {

namespace {

constexpr double kPrincipal = 500.0;
constexpr double kFocal = 1000.0;

Eigen::Vector3d random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Vector3d v;
  do {
    v = {gauss(rng), gauss(rng), gauss(rng)};
  } while (v.norm() < 1e-9);
  return v.normalized();
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  return q.normalized().toRotationMatrix();
}

Eigen::Vector2d project(const Camera& p, const Eigen::Vector3d& point) {
  const Eigen::Vector3d h = p * point.homogeneous();
  return h.head<2>() / h(2);
}

}  // namespace

TriangulationScene synth_triangulation_scene(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cube(-0.5, 0.5);
  std::normal_distribution<double> jitter(0.0, 0.01);
  TriangulationScene scene;
  scene.point = {cube(rng), cube(rng), cube(rng)};
  for (std::size_t i = 0; i < 3; ++i) {
    while (true) {
      const Eigen::Vector3d center = random_unit_vector(rng);
      const Eigen::Matrix3d rotation = random_rotation(rng);
      Eigen::Matrix3d k = Eigen::Matrix3d::Identity();
      k(0, 0) = kFocal * (1.0 + jitter(rng));
      k(1, 1) = kFocal * (1.0 + jitter(rng));
      k(0, 2) = kPrincipal * (1.0 + jitter(rng));
      k(1, 2) = kPrincipal * (1.0 + jitter(rng));
      Camera rt;
      rt << rotation, -rotation * center;
      const Camera p = k * rt;
      const double depth = (rt * scene.point.homogeneous())(2);
      if (depth <= 1e-3) continue;
      scene.cameras[i] = p;
      scene.points[i] = (p * scene.point.homogeneous()).hnormalized().homogeneous();
      break;
    }
  }
  return scene;
}

CanonicalScene canonicalize(const TriangulationScene& scene) {
  Eigen::Matrix3d normalize = Eigen::Matrix3d::Identity();
  normalize.topLeftCorner<2, 2>() /= kFocal;
  normalize.topRightCorner<2, 1>().setConstant(-kPrincipal / kFocal);

  std::array<Camera, 3> cams;
  std::array<Eigen::Vector2d, 3> uv;
  for (std::size_t i = 0; i < 3; ++i) {
    cams[i] = normalize * scene.cameras[i];
    uv[i] = (normalize * scene.points[i]).head<2>();
  }

  Eigen::Matrix<double, 3, 4> third;
  third << cams[0].row(2), cams[1].row(2), cams[2].row(2);
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(third, Eigen::ComputeFullV);
  Eigen::Matrix4d g;
  g.row(0) = third.row(0);
  g.row(1) = third.row(1);
  g.row(2) = svd.matrixV().col(3).transpose();
  g.row(3) = third.row(2);

  CanonicalScene out;
  out.frame = g.inverse();
  for (std::size_t i = 0; i < 3; ++i) {
    const Camera c = cams[i] * out.frame;
    for (std::size_t coord = 0; coord < 2; ++coord) {
      const Eigen::Matrix<double, 1, 4> n = c.row(static_cast<Eigen::Index>(coord)) - uv[i](static_cast<Eigen::Index>(coord)) * c.row(2);
      for (std::size_t j = 0; j < 4; ++j) out.numerators[2 * i + coord][j] = n(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

Eigen::Vector3d to_world(const CanonicalScene& canonical, const Eigen::Vector3d& xyz) {
  return (canonical.frame * xyz.homogeneous()).hnormalized();
}

double reprojection_cost(const TriangulationScene& scene, const Eigen::Vector3d& point) {
  double cost = 0.0;
  for (std::size_t i = 0; i < 3; ++i) cost += (project(scene.cameras[i], point) - scene.points[i].head<2>()).squaredNorm();
  return cost;
}

double canonical_cost(const TriangulationData<double>& data, const Eigen::Vector3d& xyz) {
  const std::array<double, 3> denominators{xyz(0), xyz(1), 1.0};
  double cost = 0.0;
  for (std::size_t r = 0; r < 6; ++r) {
    const auto& n = data[r];
    const double value = (n[0] * xyz(0) + n[1] * xyz(1) + n[2] * xyz(2) + n[3]) / denominators[r / 2];
    cost += value * value;
  }
  return cost;
}

LaurentSystem<double> triangulation_system(const std::array<Camera, 3>& cameras,
                                           const std::array<Eigen::Vector3d, 3>& points) {
  const std::array<Eigen::Matrix<double, 1, 4>, 3> expected{Eigen::Matrix<double, 1, 4>(1, 0, 0, 0),
                                                            Eigen::Matrix<double, 1, 4>(0, 1, 0, 0),
                                                            Eigen::Matrix<double, 1, 4>(0, 0, 0, 1)};
  TriangulationData<double> data;
  for (std::size_t i = 0; i < 3; ++i) {
    if (cameras[i].row(2) != expected[i]) throw std::invalid_argument("camera third rows are not in the canonical frame");
    for (std::size_t coord = 0; coord < 2; ++coord) {
      const Eigen::Matrix<double, 1, 4> n =
          cameras[i].row(static_cast<Eigen::Index>(coord)) - points[i](static_cast<Eigen::Index>(coord)) * cameras[i].row(2);
      for (std::size_t j = 0; j < 4; ++j) data[2 * i + coord][j] = n(static_cast<Eigen::Index>(j));
    }
  }
  return triangulation_system(data);
}

std::optional<Placement> best_placement(const TriangulationScene& scene, const CanonicalScene& canonical,
                                        const std::vector<Eigen::Vector3d>& real_roots) {
  std::optional<Placement> best;
  for (const auto& xyz : real_roots) {
    const Eigen::Vector3d world = to_world(canonical, xyz);
    if (!world.allFinite()) continue;
    const double cost = reprojection_cost(scene, world);
    if (!std::isfinite(cost)) continue;
    if (!best || cost < best->cost) best = Placement{world, cost, (world - scene.point).norm()};
  }
  return best;
}

}  // namespace etgen
