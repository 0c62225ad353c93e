#include "esbgk/sym3.hpp"

#include <cmath>

#include "esbgk/errors.hpp"

namespace esbgk {

namespace {

double offdiag_norm(const Eigen::Matrix3d& a) {
    return std::sqrt(2.0 * (a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2)));
}

// One Jacobi rotation zeroing a(p,q), accumulated into v.
void rotate(Eigen::Matrix3d& a, Eigen::Matrix3d& v, int p, int q) {
    const double apq = a(p, q);
    if (apq == 0.0)
        return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    // stable tangent of the rotation angle
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0)
        t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    r(p, p) = c;
    r(q, q) = c;
    r(p, q) = s;
    r(q, p) = -s;

    a = r.transpose() * a * r;
    a(p, q) = 0.0;  // rotation is designed to annihilate this entry
    a(q, p) = 0.0;
    v = v * r;
}

} // namespace

SymEig3 eigendecompose_sym3(const Eigen::Matrix3d& m) {
    Eigen::Matrix3d a = symmetrize(m);
    Eigen::Matrix3d v = Eigen::Matrix3d::Identity();

    const double scale = a.norm();
    const double tol = 1e-13 * (scale > 0.0 ? scale : 1.0);

    constexpr int max_sweeps = 15;
    constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    int sweep = 0;
    while (offdiag_norm(a) > tol) {
        if (sweep++ >= max_sweeps)
            throw NumericalFailure("jacobi eigensolver did not converge in 15 sweeps");
        for (auto [p, q] : pairs)
            rotate(a, v, p, q);
    }

    SymEig3 out;
    out.values = a.diagonal();
    out.vectors = v;

    // descending selection sort, swapping eigenvector columns along
    for (int i = 0; i < 2; ++i) {
        int best = i;
        for (int j = i + 1; j < 3; ++j)
            if (out.values[j] > out.values[best])
                best = j;
        if (best != i) {
            std::swap(out.values[i], out.values[best]);
            out.vectors.col(i).swap(out.vectors.col(best));
        }
    }

    // sign rule: first component with |x| > 1e-12 positive
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            if (std::abs(out.vectors(i, j)) > 1e-12) {
                if (out.vectors(i, j) < 0.0)
                    out.vectors.col(j) = -out.vectors.col(j);
                break;
            }
        }
    }
    return out;
}

double det3(const Eigen::Matrix3d& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Eigen::Matrix3d inverse_spd(const Eigen::Matrix3d& m, double eps_pd, double scale) {
    const SymEig3 eig = eigendecompose_sym3(m);
    const double gate = eps_pd * scale;
    if (!(eig.values.minCoeff() > gate))
        throw NonRealizable("inverse_spd: matrix not positive definite, min eigenvalue " +
                            std::to_string(eig.values.minCoeff()) + " at gate " +
                            std::to_string(gate));
    const Eigen::Matrix3d inv =
        eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();
    return symmetrize(inv);
}

} // namespace esbgk
