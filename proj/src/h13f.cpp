#include "etgen/h13f.hpp"

#include <random>

#include <Eigen/Geometry>

namespace etgen {

std::vector<std::pair<int, int>> h13f_pairs() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) pairs.emplace_back(a, b);
  return pairs;
}

H13fScene synth_h13f_scene(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uniform(0.5, 2.0);
  const Eigen::Matrix3d rotation =
      Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng)).normalized().toRotationMatrix();
  const Eigen::Vector3d translation(gauss(rng), gauss(rng), gauss(rng));
  const double f = uniform(rng);

  H13fScene scene;
  for (int j = 0; j < 4; ++j) {
    // Point in front of the pinhole camera: X = a R K^-1 p + T.
    const Eigen::Vector3d ray(gauss(rng) * 0.5, gauss(rng) * 0.5, 1.0);
    const double depth = uniform(rng) * 2.0;
    const Eigen::Vector3d world = depth * rotation * ray + translation;
    const Eigen::Vector3d image(f * ray(0), f * ray(1), 1.0);
    for (int c = 0; c < 3; ++c) scene.data.p[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = image(c);
    scene.truth(j) = depth;
    if (j == 0) {
      // X1 = b q with the generalized camera at the origin.
      const double b = world.norm();
      const Eigen::Vector3d q = world / b;
      for (int c = 0; c < 3; ++c) scene.data.q[static_cast<std::size_t>(c)] = q(c);
      scene.truth(4) = b;
    } else {
      for (int c = 0; c < 3; ++c) scene.data.x[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(c)] = world(c);
    }
  }
  scene.truth(5) = f;
  return scene;
}

}  // namespace etgen
