#include "esbgk/linearized.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "esbgk/errors.hpp"
#include "esbgk/gaussian.hpp"

namespace esbgk {

double dot(const LinearizedBasis& basis, const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
    return basis.grid->w * (a * b).sum();
}

double norm2(const LinearizedBasis& basis, const Eigen::ArrayXd& a) {
    return basis.grid->w * a.square().sum();
}

LinearizedBasis build_linearized_basis(GridPtr grid) {
    LinearizedBasis basis;
    basis.grid = grid;
    const VelocityGrid& g = *grid;

    const Eigen::ArrayXd vsq = g.vx.square() + g.vy.square() + g.vz.square();
    const double log_c = -1.5 * std::log(2.0 * std::numbers::pi);
    basis.sqrt_m = (0.5 * (log_c - 0.5 * vsq)).exp();  // sqrt of the unit Maxwellian

    // fixed generator order; the three diagonal-stress generators sum to zero,
    // so exactly one of them must fall out of Gram-Schmidt
    std::vector<Eigen::ArrayXd> gen;
    gen.push_back(Eigen::ArrayXd::Ones(g.size()) * basis.sqrt_m);
    gen.push_back(g.vx * basis.sqrt_m);
    gen.push_back(g.vy * basis.sqrt_m);
    gen.push_back(g.vz * basis.sqrt_m);
    gen.push_back(vsq * basis.sqrt_m);
    gen.push_back((3.0 * g.vx.square() - vsq) * basis.sqrt_m);
    gen.push_back((3.0 * g.vy.square() - vsq) * basis.sqrt_m);
    gen.push_back((3.0 * g.vz.square() - vsq) * basis.sqrt_m);
    gen.push_back(g.vx * g.vy * basis.sqrt_m);
    gen.push_back(g.vx * g.vz * basis.sqrt_m);
    gen.push_back(g.vy * g.vz * basis.sqrt_m);

    // block boundaries in generator indices: [0,5) -> B0, [5,8) -> B1, rest B2
    std::vector<Eigen::ArrayXd> ortho;
    std::vector<int> block_of;
    int discarded = 0;
    for (std::size_t i = 0; i < gen.size(); ++i) {
        Eigen::ArrayXd v = gen[i];
        const double original = std::sqrt(norm2(basis, v));
        for (const Eigen::ArrayXd& u : ortho)
            v -= dot(basis, u, v) * u;
        // second pass for numerical orthogonality
        for (const Eigen::ArrayXd& u : ortho)
            v -= dot(basis, u, v) * u;
        const double residual = std::sqrt(norm2(basis, v));
        if (residual < 1e-8 * original) {
            ++discarded;
            continue;
        }
        ortho.push_back(v / residual);
        block_of.push_back(i < 5 ? 0 : (i < 8 ? 1 : 2));
    }
    if (discarded != 1 || ortho.size() != 10)
        throw NumericalFailure("linearized basis: expected exactly one dependent generator");

    auto fill = [&](int which, Eigen::MatrixXd& out) {
        int cols = 0;
        for (int b : block_of)
            if (b == which)
                ++cols;
        out.resize(g.size(), cols);
        int c = 0;
        for (std::size_t i = 0; i < ortho.size(); ++i)
            if (block_of[i] == which)
                out.col(c++) = ortho[i].matrix();
    };
    fill(0, basis.b0);
    fill(1, basis.b1);
    fill(2, basis.b2);
    if (basis.b0.cols() != 5 || basis.b1.cols() != 2 || basis.b2.cols() != 3)
        throw NumericalFailure("linearized basis: unexpected block dimensions");
    return basis;
}

namespace {
Eigen::ArrayXd project_onto(const Eigen::MatrixXd& b, double w, const Eigen::ArrayXd& g) {
    const Eigen::VectorXd coeff = w * (b.transpose() * g.matrix());
    return (b * coeff).array();
}
} // namespace

Eigen::ArrayXd project(const LinearizedBasis& basis, Block block, const Eigen::ArrayXd& g) {
    if (g.size() != basis.grid->size())
        throw InvalidConfig("project: vector does not match the grid");
    switch (block) {
    case Block::b0: return project_onto(basis.b0, basis.grid->w, g);
    case Block::b1: return project_onto(basis.b1, basis.grid->w, g);
    default:        return project_onto(basis.b2, basis.grid->w, g);
    }
}

Eigen::ArrayXd apply_L(const LinearizedBasis& basis, const Eigen::ArrayXd& g, double nu) {
    if (!nu_in_range(nu))
        throw InvalidConfig("apply_L: nu out of (-1/2, 1)");
    const Eigen::ArrayXd p0 = project(basis, Block::b0, g);
    const Eigen::ArrayXd p12 = project(basis, Block::b1, g) + project(basis, Block::b2, g);
    return ((p0 - g) + nu * p12) / (1.0 - nu);
}

DirichletReport dirichlet_form(const LinearizedBasis& basis, const Eigen::ArrayXd& g,
                               double nu) {
    DirichletReport rep;
    const Eigen::ArrayXd lg = apply_L(basis, g, nu);
    rep.lhs = -dot(basis, lg, g);
    rep.p0_residual2 = norm2(basis, g - project(basis, Block::b0, g));
    rep.stress2 = norm2(basis, project(basis, Block::b1, g) + project(basis, Block::b2, g));
    rep.remainder_block = nu / (1.0 - nu) * rep.stress2;
    rep.rhs = rep.p0_residual2 / (1.0 - nu) - rep.remainder_block;
    return rep;
}

} // namespace esbgk
