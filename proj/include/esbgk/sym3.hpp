#pragma once

#include <Eigen/Dense>

namespace esbgk {

// Symmetric 3x3 helpers. Matrices are Eigen::Matrix3d kept exactly symmetric
// by construction: assemble with symmetrize(), never write the two triangles
// independently.

inline Eigen::Matrix3d symmetrize(const Eigen::Matrix3d& a) {
    return 0.5 * (a + a.transpose());
}

struct SymEig3 {
    Eigen::Vector3d values;   // descending
    Eigen::Matrix3d vectors;  // columns, right-handed up to the sign rule
};

// Cyclic Jacobi with a fixed sweep order (0,1) (0,2) (1,2), at most 15 sweeps,
// run until the off-diagonal Frobenius mass drops below 1e-13 relative.
// Eigenvalues sorted descending; each eigenvector's first component of
// magnitude above 1e-12 is made positive so repeated runs and reflected
// inputs produce identical output.
SymEig3 eigendecompose_sym3(const Eigen::Matrix3d& m);

double det3(const Eigen::Matrix3d& m);

// Inverse through the eigendecomposition, gated on positive definiteness:
// every eigenvalue must exceed eps_pd * scale.
Eigen::Matrix3d inverse_spd(const Eigen::Matrix3d& m, double eps_pd, double scale);

} // namespace esbgk
