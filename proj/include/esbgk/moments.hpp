#pragma once

#include <Eigen/Dense>

#include "esbgk/sym3.hpp"
#include "esbgk/velocity_grid.hpp"

namespace esbgk {

// Discrete macroscopic fields of f:
//   rho   = w sum f
//   rho U = w sum f v
//   rho Theta = w sum f (v-U)(v-U)^T,  T = tr(Theta)/3
// so tr(Theta) = 3T holds exactly by construction.
struct MacroState {
    double rho = 0.0;
    Eigen::Vector3d U = Eigen::Vector3d::Zero();
    double T = 0.0;
    Eigen::Matrix3d Theta = Eigen::Matrix3d::Zero();
};

MacroState extract_moments(const DistributionFunction& f);

} // namespace esbgk
