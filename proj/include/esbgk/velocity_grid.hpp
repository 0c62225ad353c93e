#pragma once

#include <Eigen/Dense>
#include <memory>

#include "esbgk/errors.hpp"

namespace esbgk {

// Uniform cell-centered cube [-v_max, v_max]^3 + offset with the midpoint
// rule. Node (k1,k2,k3) sits at offset_i - v_max + (k_i + 1/2) h and the flat
// index is (k1*n + k2)*n + k3 (k3 fastest). The flat ordering is a file-format
// contract; do not change it.
struct VelocityGrid {
    int n = 0;             // nodes per axis
    double v_max = 0.0;    // half-width of the cube
    Eigen::Vector3d offset = Eigen::Vector3d::Zero();
    double h = 0.0;        // spacing, 2 v_max / n
    double w = 0.0;        // quadrature weight, h^3

    // flat per-node coordinates, each of size n^3
    Eigen::ArrayXd vx, vy, vz;

    Eigen::Index size() const { return static_cast<Eigen::Index>(n) * n * n; }
};

using GridPtr = std::shared_ptr<const VelocityGrid>;

GridPtr make_velocity_grid(int n, double v_max,
                           const Eigen::Vector3d& offset = Eigen::Vector3d::Zero());

// Velocity distribution sampled at the grid nodes.
struct DistributionFunction {
    GridPtr grid;
    Eigen::ArrayXd values;
};

DistributionFunction make_distribution(GridPtr grid, Eigen::ArrayXd values);

bool same_grid(const VelocityGrid& a, const VelocityGrid& b);
void require_same_grid(const DistributionFunction& f, const DistributionFunction& g);

// w * sum(f)
double quadrature(const DistributionFunction& f);

// w * sum(f * phi) for any node-indexed expression phi
template <typename Derived>
double quadrature(const DistributionFunction& f, const Eigen::ArrayBase<Derived>& phi) {
    if (phi.size() != f.values.size())
        throw InvalidConfig("quadrature: phi does not match the grid");
    return f.grid->w * (f.values * phi.derived()).sum();
}

// w * sum(|f - g|)
double l1_distance(const DistributionFunction& f, const DistributionFunction& g);

} // namespace esbgk
