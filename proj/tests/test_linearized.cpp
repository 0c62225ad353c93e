#include "doctest.h"

#include <cmath>

#include "esbgk/ensemble.hpp"
#include "esbgk/linearized.hpp"
#include "esbgk/velocity_grid.hpp"

using namespace esbgk;

namespace {

// deterministic non-polynomial probe with pieces in every block
Eigen::ArrayXd probe(const LinearizedBasis& basis) {
    const VelocityGrid& grid = *basis.grid;
    const Eigen::ArrayXd g = (0.7 * grid.vx).sin() + 0.3 * grid.vx * grid.vy +
                             0.1 * (grid.vx.square() + grid.vy.square() + grid.vz.square()) -
                             0.2 * (0.5 * grid.vz).cos();
    return g * basis.sqrt_m;
}

} // namespace

TEST_CASE("basis blocks are orthonormal") {
    LinearizedBasis basis = build_linearized_basis(make_velocity_grid(32, 8.0));
    REQUIRE(basis.b0.cols() == 5);
    REQUIRE(basis.b1.cols() == 2);
    REQUIRE(basis.b2.cols() == 3);

    Eigen::MatrixXd all(basis.b0.rows(), 10);
    all << basis.b0, basis.b1, basis.b2;
    const Eigen::MatrixXd gram =
        (all.transpose() * all) * basis.grid->w;
    CHECK((gram - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("basis construction is deterministic") {
    GridPtr grid = make_velocity_grid(16, 6.0);
    const LinearizedBasis a = build_linearized_basis(grid);
    const LinearizedBasis b = build_linearized_basis(grid);
    CHECK((a.b0 - b.b0).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.b1 - b.b1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.b2 - b.b2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projections are idempotent and mutually orthogonal") {
    LinearizedBasis basis = build_linearized_basis(make_velocity_grid(32, 8.0));
    const Eigen::ArrayXd g = probe(basis);

    const Eigen::ArrayXd p0 = project(basis, Block::b0, g);
    const Eigen::ArrayXd p1 = project(basis, Block::b1, g);
    const Eigen::ArrayXd p2 = project(basis, Block::b2, g);

    const double scale = std::sqrt(norm2(basis, g));
    CHECK(std::sqrt(norm2(basis, project(basis, Block::b0, p0) - p0)) <= 1e-12 * scale);
    CHECK(std::sqrt(norm2(basis, project(basis, Block::b1, p1) - p1)) <= 1e-12 * scale);
    CHECK(std::abs(dot(basis, p0, p1)) <= 1e-12 * scale * scale);
    CHECK(std::abs(dot(basis, p0, p2)) <= 1e-12 * scale * scale);
    CHECK(std::abs(dot(basis, p1, p2)) <= 1e-12 * scale * scale);

    // the three projections and the remainder reassemble g
    const Eigen::ArrayXd rest = g - p0 - p1 - p2;
    CHECK(std::abs(norm2(basis, g) -
                   (norm2(basis, p0) + norm2(basis, p1) + norm2(basis, p2) +
                    norm2(basis, rest))) <= 1e-10 * scale * scale);
}

TEST_CASE("block eigenfunctions of the linearized operator") {
    LinearizedBasis basis = build_linearized_basis(make_velocity_grid(32, 8.0));

    for (double nu : {-0.45, -0.1, 0.0, 0.5, 0.9}) {
        CAPTURE(nu);

        // collision invariants: L vanishes
        for (int j = 0; j < 5; ++j) {
            const Eigen::ArrayXd col = basis.b0.col(j).array();
            CHECK(std::sqrt(norm2(basis, apply_L(basis, col, nu))) <= 1e-10);
        }
        // stress directions: eigenvalue -1
        for (int j = 0; j < 2; ++j) {
            const Eigen::ArrayXd col = basis.b1.col(j).array();
            CHECK(std::sqrt(norm2(basis, apply_L(basis, col, nu) + col)) <= 1e-10);
        }
        for (int j = 0; j < 3; ++j) {
            const Eigen::ArrayXd col = basis.b2.col(j).array();
            CHECK(std::sqrt(norm2(basis, apply_L(basis, col, nu) + col)) <= 1e-10);
        }

        // everything orthogonal to all blocks: eigenvalue -1/(1-nu)
        LinearizedBasis& b = basis;
        Eigen::ArrayXd g = probe(b);
        g -= project(b, Block::b0, g) + project(b, Block::b1, g) + project(b, Block::b2, g);
        const double mu = -1.0 / (1.0 - nu);
        CHECK(std::sqrt(norm2(b, apply_L(b, g, nu) - mu * g)) <=
              1e-8 * std::sqrt(norm2(b, g)));
    }
}

TEST_CASE("dirichlet identity for the entropy form") {
    LinearizedBasis basis = build_linearized_basis(make_velocity_grid(32, 8.0));
    Rng rng(31);

    for (int rep = 0; rep < 20; ++rep) {
        // random cubic polynomial times sqrt(m), normalized
        Eigen::Matrix<double, 20, 1> coef;
        for (int k = 0; k < 20; ++k) coef[k] = rng.normal();
        const Eigen::ArrayXd& x = basis.grid->vx;
        const Eigen::ArrayXd& y = basis.grid->vy;
        const Eigen::ArrayXd& z = basis.grid->vz;
        Eigen::ArrayXd g = coef[0] + coef[1] * x + coef[2] * y + coef[3] * z +
                           coef[4] * x.square() + coef[5] * y.square() + coef[6] * z.square() +
                           coef[7] * x * y + coef[8] * x * z + coef[9] * y * z +
                           coef[10] * x.cube() + coef[11] * y.cube() + coef[12] * z.cube() +
                           coef[13] * x.square() * y + coef[14] * x.square() * z +
                           coef[15] * y.square() * x + coef[16] * y.square() * z +
                           coef[17] * z.square() * x + coef[18] * z.square() * y +
                           coef[19] * x * y * z;
        g *= basis.sqrt_m;
        g /= std::sqrt(norm2(basis, g));

        for (double nu : {-0.45, -0.25, 0.0, 0.25, 0.5, 0.75, 0.95}) {
            CAPTURE(rep);
            CAPTURE(nu);
            const DirichletReport r = dirichlet_form(basis, g, nu);
            CHECK(std::abs(r.lhs - r.rhs) <= 1e-8 * (1.0 + std::abs(r.lhs)));

            // dissipativity: -<Lg, g> >= 0 on the admissible range
            CHECK(r.lhs >= -1e-10);

            // the stress block term carries the sign of nu
            if (nu > 0.0) CHECK(r.remainder_block >= 0.0);
            if (nu < 0.0) CHECK(r.remainder_block <= 0.0);
            CHECK(r.p0_residual2 >= 0.0);
            CHECK(r.stress2 <= r.p0_residual2 + 1e-10);
        }
    }
}
