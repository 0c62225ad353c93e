#pragma once

#include <Eigen/Dense>

#include "esbgk/velocity_grid.hpp"

namespace esbgk {

// Discrete L^2 machinery around the unit Maxwellian m: orthonormal blocks
//   B0: span{1, v1, v2, v3, |v|^2} sqrt(m)        (collision invariants)
//   B1: span{3 v_i^2 - |v|^2} sqrt(m)             (2 independent directions)
//   B2: span{v1 v2, v1 v3, v2 v3} sqrt(m)
// built by modified Gram-Schmidt in a fixed generator order, discarding the
// one linearly dependent diagonal-stress generator.
struct LinearizedBasis {
    GridPtr grid;
    Eigen::ArrayXd sqrt_m;
    Eigen::MatrixXd b0;  // size() x 5
    Eigen::MatrixXd b1;  // size() x 2
    Eigen::MatrixXd b2;  // size() x 3
};

LinearizedBasis build_linearized_basis(GridPtr grid);

enum class Block { b0, b1, b2 };

// inner product and norm of the weighted grid space
double dot(const LinearizedBasis& basis, const Eigen::ArrayXd& a, const Eigen::ArrayXd& b);
double norm2(const LinearizedBasis& basis, const Eigen::ArrayXd& a);

Eigen::ArrayXd project(const LinearizedBasis& basis, Block block, const Eigen::ArrayXd& g);

// L g = (1/(1-nu)) [ (P0 - I) g + nu (P1 + P2) g ]
Eigen::ArrayXd apply_L(const LinearizedBasis& basis, const Eigen::ArrayXd& g, double nu);

struct DirichletReport {
    double lhs = 0.0;           // -<L g, g>
    double rhs = 0.0;           // (1/(1-nu)) ||(I-P0) g||^2 - (nu/(1-nu)) ||(P1+P2) g||^2
    double p0_residual2 = 0.0;  // ||(I-P0) g||^2
    double stress2 = 0.0;       // ||(P1+P2) g||^2
    double remainder_block = 0.0;  // (nu/(1-nu)) ||(P1+P2) g||^2, sign-definite in nu
};

DirichletReport dirichlet_form(const LinearizedBasis& basis, const Eigen::ArrayXd& g,
                               double nu);

} // namespace esbgk
