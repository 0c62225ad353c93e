#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "esbgk/gaussian.hpp"
#include "esbgk/velocity_grid.hpp"

namespace esbgk {

uint64_t splitmix64(uint64_t x);

// mt19937_64 with hand-rolled value mappings so streams are identical across
// standard libraries (the std distributions are implementation-defined)
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}

    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    Eigen::Vector3d normal3();
    // Box-Muller leaves no spare state: streams stay reproducible

  private:
    std::mt19937_64 eng_;
};

// random rotation from a uniformly distributed unit quaternion
Eigen::Matrix3d random_rotation(Rng& rng);

struct MixtureParams {
    int k_min = 2;
    int k_max = 4;
    double mean_half_width = 1.0;  // means uniform in [-a, a]^3
    double eig_lo = 0.3;           // covariance eigenvalue range
    double eig_hi = 2.0;
};

using Mixture = std::vector<EllipsoidalGaussian>;  // component.rho = weight

// anisotropic Gaussian mixture with Dirichlet weights summing to unit mass
Mixture random_mixture(Rng& rng, const MixtureParams& params = {});

// domain sizing rule: v_max >= |U| + 8 sqrt(lambda_max) for every component
double suggested_vmax(const Mixture& mix);

DistributionFunction sample_mixture(const Mixture& mix, GridPtr grid);

} // namespace esbgk
