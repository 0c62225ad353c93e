#include "doctest.h"

#include <cmath>

#include "esbgk/ensemble.hpp"
#include "esbgk/velocity_grid.hpp"

using namespace esbgk;

TEST_CASE("streams repeat under a seed and split across seeds") {
    Rng a(99), b(99), c(100);
    bool all_equal = true;
    bool any_differ = false;
    for (int k = 0; k < 64; ++k) {
        const double ua = a.uniform();
        all_equal = all_equal && (ua == b.uniform());
        any_differ = any_differ || (ua != c.uniform());
    }
    CHECK(all_equal);
    CHECK(any_differ);
}

TEST_CASE("uniform values stay in range with a sane mean") {
    Rng rng(7);
    double acc = 0.0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
        const double u = rng.uniform(-2.0, 3.0);
        CHECK(u >= -2.0);
        CHECK(u < 3.0);
        acc += u;
    }
    CHECK(std::abs(acc / n - 0.5) < 0.05);  // sd of the mean ~ 0.01
}

TEST_CASE("normal draws have roughly standard moments") {
    Rng rng(8);
    double s1 = 0.0, s2 = 0.0;
    const int n = 40000;
    for (int k = 0; k < n; ++k) {
        const double x = rng.normal();
        s1 += x;
        s2 += x * x;
    }
    CHECK(std::abs(s1 / n) < 0.02);
    CHECK(std::abs(s2 / n - 1.0) < 0.03);
}

TEST_CASE("random rotations are proper orthogonal") {
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
        const Eigen::Matrix3d r = random_rotation(rng);
        CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <=
              1e-14);
        CHECK(std::abs(r.determinant() - 1.0) <= 1e-14);
    }
}

TEST_CASE("random mixtures respect the advertised parameter box") {
    Rng rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const Mixture mix = random_mixture(rng);
        CHECK(mix.size() >= 2);
        CHECK(mix.size() <= 4);

        double wsum = 0.0;
        for (const EllipsoidalGaussian& g : mix) {
            CHECK(g.rho > 0.0);
            wsum += g.rho;
            CHECK(g.U.cwiseAbs().maxCoeff() <= 1.0);
            CHECK(g.lambda.minCoeff() >= 0.3);
            CHECK(g.lambda.maxCoeff() <= 2.0);
            // axes form a rotation
            CHECK((g.axes.transpose() * g.axes - Eigen::Matrix3d::Identity())
                      .cwiseAbs()
                      .maxCoeff() <= 1e-13);
        }
        CHECK(std::abs(wsum - 1.0) <= 1e-15);

        const double vm = suggested_vmax(mix);
        for (const EllipsoidalGaussian& g : mix)
            CHECK(vm >= g.U.norm() + 8.0 * std::sqrt(g.lambda.maxCoeff()) - 1e-12);
    }
}

TEST_CASE("mixture sampling is reproducible and carries unit mass") {
    Rng r1(321), r2(321);
    const Mixture m1 = random_mixture(r1);
    const Mixture m2 = random_mixture(r2);
    REQUIRE(m1.size() == m2.size());
    for (size_t i = 0; i < m1.size(); ++i) {
        CHECK(m1[i].rho == m2[i].rho);
        CHECK(m1[i].U == m2[i].U);
        CHECK(m1[i].lambda == m2[i].lambda);
        CHECK((m1[i].axes.array() == m2[i].axes.array()).all());
    }

    GridPtr grid = make_velocity_grid(48, suggested_vmax(m1));
    const DistributionFunction f = sample_mixture(m1, grid);
    const DistributionFunction g = sample_mixture(m2, grid);
    CHECK((f.values == g.values).all());
    CHECK(std::abs(quadrature(f) - 1.0) <= 1e-9);
    CHECK(f.values.minCoeff() > 0.0);
}
