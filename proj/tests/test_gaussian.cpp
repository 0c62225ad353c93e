#include "doctest.h"

#include <cmath>

#include "esbgk/entropy.hpp"
#include "esbgk/errors.hpp"
#include "esbgk/gaussian.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/velocity_grid.hpp"

using namespace esbgk;

namespace {

MacroState reference_state() {
    MacroState st;
    st.rho = 1.0;
    st.U = Eigen::Vector3d::Zero();
    st.T = 1.0;
    st.Theta = Eigen::Vector3d(2.0, 0.5, 0.5).asDiagonal();
    return st;
}

} // namespace

TEST_CASE("unit maxwellian peak and entropy") {
    MacroState st;
    st.rho = 1.0;
    st.T = 1.0;
    st.Theta = Eigen::Matrix3d::Identity();
    const EllipsoidalGaussian m = maxwellian(st);
    // peak value (2 pi)^(-3/2)
    CHECK(std::abs(std::exp(m.log_norm) - 0.063493635934240970) <= 1e-16);
    CHECK(std::abs(maxwellian_entropy(1.0, 1.0) - (-4.2568155996140181)) <= 1e-14);
    CHECK(std::abs(gaussian_entropy(m) - maxwellian_entropy(1.0, 1.0)) <= 1e-14);
}

TEST_CASE("anisotropy interpolation of the temperature tensor") {
    const MacroState st = reference_state();

    const TemperatureTensor half = temperature_tensor(st, 0.5);
    CHECK(half.lambda[0] == 1.5);
    CHECK(half.lambda[1] == 0.75);
    CHECK(half.lambda[2] == 0.75);

    const TemperatureTensor neg = temperature_tensor(st, -0.25);
    CHECK(neg.lambda[0] == 0.75);
    CHECK(neg.lambda[1] == 1.125);
    CHECK(neg.lambda[2] == 1.125);

    // descending stress eigenvalues ride along
    CHECK(half.theta[0] == 2.0);
    CHECK(half.theta[1] == 0.5);
    CHECK(half.theta[2] == 0.5);
}

TEST_CASE("nu parameter domain is open") {
    const MacroState st = reference_state();
    CHECK_THROWS_AS(temperature_tensor(st, 1.0), InvalidConfig);
    CHECK_THROWS_AS(temperature_tensor(st, -0.5), InvalidConfig);
    CHECK_THROWS_AS(temperature_tensor(st, 1.5), InvalidConfig);
    CHECK_NOTHROW(temperature_tensor(st, 0.9999));
    CHECK_NOTHROW(temperature_tensor(st, -0.4999));
}

TEST_CASE("zero anisotropy reduces to the maxwellian") {
    const MacroState st = reference_state();
    GridPtr grid = make_velocity_grid(32, 12.0);
    const Eigen::ArrayXd iso = evaluate_log(es_gaussian(st, 0.0), *grid);
    const Eigen::ArrayXd max = evaluate_log(maxwellian(st), *grid);
    CHECK((iso - max).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("target approaches the stress gaussian as nu approaches 1") {
    const MacroState st = reference_state();
    const EllipsoidalGaussian near = es_gaussian(st, 1.0 - 1e-7);
    const EllipsoidalGaussian at = stress_gaussian(st);
    CHECK((near.lambda - at.lambda).norm() <= 1e-6);
    CHECK(std::abs(near.log_norm - at.log_norm) <= 1e-6);

    MacroState flat = st;
    flat.Theta = Eigen::Vector3d(3.0, 0.0, 0.0).asDiagonal();
    CHECK_THROWS_AS(stress_gaussian(flat), NonRealizable);
}

TEST_CASE("quadratic form matches the direct diagonal formula") {
    const Eigen::Vector3d U(0.3, -0.1, 0.2);
    const Eigen::Vector3d lam(1.5, 0.75, 0.6);
    const EllipsoidalGaussian g = gaussian_from_cov(1.2, U, lam.asDiagonal());
    GridPtr grid = make_velocity_grid(8, 3.0);
    const Eigen::ArrayXd q = quadratic_form(g, *grid);
    for (Eigen::Index i : {Eigen::Index(0), Eigen::Index(137), Eigen::Index(511)}) {
        const double direct = std::pow(grid->vx[i] - U[0], 2) / lam[0] +
                              std::pow(grid->vy[i] - U[1], 2) / lam[1] +
                              std::pow(grid->vz[i] - U[2], 2) / lam[2];
        CHECK(std::abs(q[i] - direct) <= 1e-13 * (1.0 + direct));
    }
}

TEST_CASE("closed entropy gap equals the two-entropy difference") {
    const double rho = 1.3, T = 1.0;
    const Eigen::Vector3d lam(1.5, 0.75, 0.75);
    const double gap = entropy_gap_from_maxwellian(rho, T, lam);
    const EllipsoidalGaussian g = gaussian_from_cov(rho, Eigen::Vector3d::Zero(), lam.asDiagonal());
    CHECK(std::abs(gap - (maxwellian_entropy(rho, T) - gaussian_entropy(g))) <= 1e-14);
    CHECK(gap < 0.0);  // the maxwellian has the smallest H at fixed trace

    // isotropic input: identically zero, not merely small
    CHECK(entropy_gap_from_maxwellian(rho, T, Eigen::Vector3d::Constant(T)) == 0.0);
}

TEST_CASE("quadrature entropy agrees with the closed form") {
    const MacroState st = reference_state();
    const EllipsoidalGaussian g = es_gaussian(st, 0.5);
    GridPtr grid = make_velocity_grid(48, 10.0);
    const double h_quad = h_functional(sample(g, grid));
    CHECK(std::abs(h_quad - gaussian_entropy(g)) <= 1e-9);
}

TEST_CASE("conservation correction is the identity when moments already match") {
    GridPtr grid = make_velocity_grid(24, 9.0);
    const EllipsoidalGaussian g =
        gaussian_from_cov(1.1, Eigen::Vector3d(0.2, 0.0, -0.1),
                          Eigen::Vector3d(1.3, 0.8, 0.9).asDiagonal());
    const MacroState target = extract_moments(sample(g, grid));
    const CorrectionResult res = conservation_correct(g, grid, target);
    CHECK(res.c == 1.0);
    CHECK(res.a == 1.0);
    CHECK(res.b.norm() == 0.0);
    CHECK(res.iterations == 0);
}

TEST_CASE("conservation correction repairs coarse-grid moment loss") {
    GridPtr grid = make_velocity_grid(16, 6.0);  // coarse on purpose
    MacroState want;
    want.rho = 1.0;
    want.U = Eigen::Vector3d(0.1, 0.0, 0.0);
    want.T = 1.0;
    want.Theta = Eigen::Matrix3d::Identity();

    const EllipsoidalGaussian g = maxwellian(want);
    const MacroState raw = extract_moments(sample(g, grid));
    const double raw_err = std::abs(raw.rho - 1.0) + std::abs(raw.T - 1.0);
    CHECK(raw_err > 1e-10);  // the coarse grid visibly loses moments

    const CorrectionResult res = conservation_correct(g, grid, want);
    const MacroState got = extract_moments(res.f);
    CHECK(std::abs(got.rho - want.rho) <= 1e-12);
    CHECK((got.U - want.U).norm() <= 1e-12);
    CHECK(std::abs(got.T - want.T) <= 1e-12);
    CHECK(res.iterations >= 1);
}

TEST_CASE("conservation correction reaches a dilated target") {
    GridPtr grid = make_velocity_grid(32, 10.0);
    const EllipsoidalGaussian g = gaussian_from_cov(1.0, Eigen::Vector3d::Zero(),
                                                    Eigen::Matrix3d::Identity());
    MacroState want = extract_moments(sample(g, grid));
    want.T *= 1.2;  // ask for 20% more temperature at the same mass and mean

    const CorrectionResult res = conservation_correct(g, grid, want);
    const MacroState got = extract_moments(res.f);
    CHECK(std::abs(got.T - want.T) <= 1e-12 * want.T);
    CHECK(std::abs(got.rho - want.rho) <= 1e-12);
    CHECK(res.a == doctest::Approx(1.0 / std::sqrt(1.2)).epsilon(1e-6));
    CHECK(res.c == doctest::Approx(1.0 / (1.2 * std::sqrt(1.2))).epsilon(1e-6));
}

TEST_CASE("bad correction targets are rejected") {
    GridPtr grid = make_velocity_grid(8, 4.0);
    const EllipsoidalGaussian g = gaussian_from_cov(1.0, Eigen::Vector3d::Zero(),
                                                    Eigen::Matrix3d::Identity());
    MacroState bad;
    bad.rho = -1.0;
    bad.T = 1.0;
    CHECK_THROWS_AS(conservation_correct(g, grid, bad), NonRealizable);
}
