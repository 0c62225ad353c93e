#include "doctest.h"

#include <cmath>
#include <numbers>

#include "esbgk/errors.hpp"
#include "esbgk/gaussian.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/solver.hpp"
#include "esbgk/velocity_grid.hpp"

using namespace esbgk;

namespace {

DistributionFunction hot_axis_initial(GridPtr grid) {
    MacroState st;
    st.rho = 1.0;
    st.T = 1.0;
    st.Theta = Eigen::Vector3d(2.0, 0.5, 0.5).asDiagonal();
    return sample(stress_gaussian(st), grid);
}

SolverConfig base_config(double nu, double sigma_c) {
    SolverConfig cfg;
    cfg.nu = nu;
    cfg.sigma.constant = true;
    cfg.sigma.c = sigma_c;
    return cfg;
}

} // namespace

TEST_CASE("a sampled maxwellian is a fixed point") {
    MacroState st;
    st.rho = 1.0;
    st.T = 1.0;
    st.Theta = Eigen::Matrix3d::Identity();
    GridPtr grid = make_velocity_grid(32, 10.0);
    const DistributionFunction f0 = sample(maxwellian(st), grid);

    SolverConfig cfg = base_config(0.5, 3.0);
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    cfg.output_stride = 50;
    const Trajectory traj = run_homogeneous(f0, cfg);

    const MacroState fin = traj.snapshots.back().state;
    const MacroState ini = traj.snapshots.front().state;
    CHECK((fin.Theta - ini.Theta).norm() <= 1e-9);
    CHECK(std::abs(fin.rho - ini.rho) <= 1e-12);
    CHECK(traj.snapshots.back().l1_to_maxwellian <= 1e-9);
}

TEST_CASE("stress tensor follows the exponential relaxation law") {
    GridPtr grid = make_velocity_grid(32, 12.0);
    const DistributionFunction f0 = hot_axis_initial(grid);
    const MacroState measured0 = extract_moments(f0);

    // dt chosen so 128 steps land on t = ln 2 exactly, where the
    // deviatoric part has halved
    const double dt = std::numbers::ln2 / 128.0;
    SolverConfig cfg = base_config(0.5, 1.0);
    cfg.dt = dt;
    cfg.t_end = std::numbers::ln2;
    cfg.output_stride = 128;
    const Trajectory traj = run_homogeneous(f0, cfg);

    const Eigen::Matrix3d expect =
        stress_relaxation_oracle(measured0, 1.0, traj.snapshots.back().t);
    CHECK((traj.snapshots.back().state.Theta - expect).norm() <= 1e-9);

    // the relaxation rate of Theta is sigma itself, independent of nu
    SolverConfig cfg2 = cfg;
    cfg2.nu = -0.25;
    const Trajectory traj2 = run_homogeneous(f0, cfg2);
    CHECK((traj2.snapshots.back().state.Theta - expect).norm() <= 1e-9);
}

TEST_CASE("single euler step reproduces the explicit update") {
    GridPtr grid = make_velocity_grid(24, 10.0);
    const DistributionFunction f0 = hot_axis_initial(grid);
    const MacroState st = extract_moments(f0);

    const double nu = 0.25;
    const double sigma = 3.0;
    const double a = sigma / (1.0 - nu);
    const double dt = 0.01;

    const DistributionFunction m = sample(es_gaussian(st, nu), grid);
    Eigen::ArrayXd expect = f0.values + (dt * a) * (m.values - f0.values);

    DistributionFunction f = f0;
    SolverConfig cfg = base_config(nu, sigma);
    cfg.dt = dt;
    cfg.scheme = TimeIntegrator::euler;
    step_homogeneous(f, cfg);

    CHECK((f.values - expect).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("rk4 converges at fourth order against the stress law") {
    GridPtr grid = make_velocity_grid(32, 8.0 * std::sqrt(2.0));
    const DistributionFunction f0 = hot_axis_initial(grid);
    const MacroState measured0 = extract_moments(f0);

    auto theta_error = [&](double dt) {
        SolverConfig cfg = base_config(0.5, 6.0);
        cfg.dt = dt;
        cfg.t_end = 0.5;
        cfg.output_stride = 1000000;  // endpoints only
        const Trajectory traj = run_homogeneous(f0, cfg);
        const Eigen::Matrix3d expect = stress_relaxation_oracle(measured0, 6.0, 0.5);
        return (traj.snapshots.back().state.Theta - expect).norm();
    };

    const double e1 = theta_error(0.02);
    const double e2 = theta_error(0.01);
    CHECK(e1 / e2 >= 13.0);  // ~16 for a fourth-order scheme
    CHECK(e1 / e2 <= 19.0);
}

TEST_CASE("collision invariants are conserved") {
    GridPtr grid = make_velocity_grid(32, 8.0 * std::sqrt(2.0));
    const DistributionFunction f0 = hot_axis_initial(grid);
    const MacroState st0 = extract_moments(f0);

    SolverConfig cfg = base_config(0.5, 3.0);
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    cfg.output_stride = 100;

    auto drift = [&](bool correct) {
        SolverConfig c = cfg;
        c.correction = correct;
        const Trajectory traj = run_homogeneous(f0, c);
        const MacroState fin = traj.snapshots.back().state;
        double d = std::abs(fin.rho - st0.rho) / st0.rho;
        d = std::max(d, (fin.rho * fin.U - st0.rho * st0.U).norm() / st0.rho);
        const double en0 = st0.rho * (st0.U.squaredNorm() + 3.0 * st0.T);
        const double en1 = fin.rho * (fin.U.squaredNorm() + 3.0 * fin.T);
        return std::max(d, std::abs(en1 - en0) / en0);
    };

    CHECK(drift(false) <= 1e-8);
    CHECK(drift(true) <= 1e-12);
}

TEST_CASE("conservation refit pays off on a coarse grid") {
    // at this resolution the raw quadrature moments of the sampled target are
    // visibly off, so the refit has real work to do
    GridPtr grid = make_velocity_grid(16, 8.0);
    const DistributionFunction f0 = hot_axis_initial(grid);
    const MacroState st0 = extract_moments(f0);

    auto mass_drift = [&](bool correct) {
        SolverConfig cfg = base_config(0.25, 3.0);
        cfg.dt = 0.01;
        cfg.t_end = 1.0;
        cfg.output_stride = 100;
        cfg.correction = correct;
        const Trajectory traj = run_homogeneous(f0, cfg);
        return std::abs(traj.snapshots.back().state.rho - st0.rho) / st0.rho;
    };

    const double raw = mass_drift(false);
    const double fixed = mass_drift(true);
    CHECK(fixed <= 1e-12);
    CHECK(raw > 100.0 * fixed);
}

TEST_CASE("entropy decays monotonically and balances its production") {
    GridPtr grid = make_velocity_grid(32, 8.0 * std::sqrt(2.0));
    const DistributionFunction f0 = hot_axis_initial(grid);

    SolverConfig cfg = base_config(0.0, 3.0);
    cfg.dt = 0.01;
    cfg.t_end = 2.0;
    const Trajectory traj = run_homogeneous(f0, cfg);

    REQUIRE(traj.snapshots.size() == 201);
    double prev = traj.snapshots.front().report.H_f;
    for (const Snapshot& s : traj.snapshots) {
        CHECK(s.report.H_f <= prev + 1e-12);
        prev = s.report.H_f;
        CHECK(std::abs(s.entropy_balance_residual) <= 1e-4 * (1.0 + std::abs(traj.H0)));
    }
    CHECK(traj.total_clipped_mass == 0.0);

    // nu = 0 relaxes at sigma itself; the certified floor is half that here
    CHECK(traj.fit_valid);
    CHECK(traj.bound_rate == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(traj.fitted_rate >= traj.bound_rate - 0.01);
    // relative entropy is quadratic in the deviation, so it decays at about
    // twice the stress rate
    CHECK(traj.fitted_rate >= 5.0);
    CHECK(traj.fitted_rate <= 7.0);
}

TEST_CASE("stability gate rejects oversized steps") {
    GridPtr grid = make_velocity_grid(16, 8.0);
    const DistributionFunction f0 = hot_axis_initial(grid);
    SolverConfig cfg = base_config(0.9, 3.0);  // A = 30
    cfg.dt = 0.02;                             // dt * A = 0.6 > 0.5
    cfg.t_end = 0.04;
    CHECK_THROWS_AS(run_homogeneous(f0, cfg), InvalidConfig);
    cfg.dt = 0.016;  // dt * A = 0.48, just inside
    CHECK_NOTHROW(run_homogeneous(f0, cfg));

    cfg.dt = -0.01;
    CHECK_THROWS_AS(run_homogeneous(f0, cfg), InvalidConfig);
    cfg.dt = 0.001;
    cfg.nu = 1.5;
    CHECK_THROWS_AS(run_homogeneous(f0, cfg), InvalidConfig);
}
