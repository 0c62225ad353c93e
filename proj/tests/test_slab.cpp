#include "doctest.h"

#include <cmath>
#include <numbers>

#include "esbgk/errors.hpp"
#include "esbgk/gaussian.hpp"
#include "esbgk/slab.hpp"
#include "esbgk/solver.hpp"
#include "esbgk/velocity_grid.hpp"

using namespace esbgk;

namespace {

MacroState uniform_state() {
    MacroState st;
    st.rho = 1.0;
    st.T = 1.0;
    st.Theta = Eigen::Matrix3d::Identity();
    return st;
}

} // namespace

TEST_CASE("upwind transport conserves cell sums exactly") {
    Eigen::ArrayXd cells(8);
    cells << 1, 2, 3, 4, 4, 3, 2, 1;
    const double before = cells.sum();

    advect_upwind_periodic(cells, 0.7);
    CHECK(std::abs(cells.sum() - before) <= 1e-13);
    advect_upwind_periodic(cells, -0.4);
    CHECK(std::abs(cells.sum() - before) <= 1e-13);

    // zero speed is the identity
    Eigen::ArrayXd still(4);
    still << 5, 6, 7, 8;
    const Eigen::ArrayXd copy = still;
    advect_upwind_periodic(still, 0.0);
    CHECK((still == copy).all());
}

TEST_CASE("upwind transport is monotone") {
    // a square pulse must not grow new extrema
    Eigen::ArrayXd cells = Eigen::ArrayXd::Zero(16);
    cells.segment(4, 4) = 1.0;
    for (int k = 0; k < 40; ++k) {
        advect_upwind_periodic(cells, 0.5);
        CHECK(cells.minCoeff() >= -1e-15);
        CHECK(cells.maxCoeff() <= 1.0 + 1e-15);
    }
}

TEST_CASE("upwind transport rejects courant above one") {
    Eigen::ArrayXd cells = Eigen::ArrayXd::Ones(4);
    CHECK_THROWS_AS(advect_upwind_periodic(cells, 1.5), NumericalFailure);
    CHECK_THROWS_AS(advect_upwind_periodic(cells, -1.01), NumericalFailure);
}

TEST_CASE("uniform profile reduces to the homogeneous run") {
    // with no spatial gradient the transport halves are exact shifts of a
    // constant field, so every cell must match the 0D solver bitwise
    GridPtr grid = make_velocity_grid(16, 6.0);
    MacroState st = uniform_state();
    st.Theta = Eigen::Vector3d(1.5, 0.8, 0.7).asDiagonal();

    SlabState slab = make_slab(grid, 4, 1.0, [&](double) { return st; });

    SlabConfig cfg;
    cfg.relax.nu = 0.25;
    cfg.relax.dt = 0.002;
    cfg.relax.t_end = 0.05;
    const SlabTrajectory traj = run_slab_1d(slab, cfg);

    DistributionFunction f = sample(stress_gaussian(st), grid);
    SolverConfig h = cfg.relax;
    h.output_stride = 1000000;
    const Trajectory ref = run_homogeneous(f, h);

    const Eigen::ArrayXd& col0 = traj.final_state.F.col(0);
    double worst = 0.0;
    for (int x = 0; x < 4; ++x)
        worst = std::max(worst,
                         (traj.final_state.F.col(x) - ref.final_f.values).abs().maxCoeff());
    CHECK(worst <= 1e-14);
    CHECK((col0 - traj.final_state.F.col(3)).abs().maxCoeff() == 0.0);
}

TEST_CASE("slab run conserves the collision invariants") {
    GridPtr grid = make_velocity_grid(24, 8.0);
    const double L = 1.0;
    SlabState slab = make_slab(grid, 16, L, [&](double x) {
        MacroState st = uniform_state();
        st.rho = 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x / L);
        return st;
    });

    SlabConfig cfg;
    cfg.relax.nu = 0.25;
    cfg.relax.dt = 0.004;
    cfg.relax.t_end = 0.2;
    const SlabTrajectory traj = run_slab_1d(slab, cfg);

    const SlabSnapshot& a = traj.snapshots.front();
    const SlabSnapshot& b = traj.snapshots.back();
    CHECK(std::abs(b.mass - a.mass) / a.mass <= 2e-9);
    CHECK((b.momentum - a.momentum).norm() / a.mass <= 2e-9);
    CHECK(std::abs(b.energy - a.energy) / a.energy <= 2e-9);

    // transport and relaxation both dissipate the spatially integrated entropy
    double prev = a.H;
    for (const SlabSnapshot& s : traj.snapshots) {
        CHECK(s.H <= prev + 1e-10);
        prev = s.H;
    }
    CHECK(b.min_value >= 0.0);
}

TEST_CASE("slab rejects a step breaking the cfl gate") {
    GridPtr grid = make_velocity_grid(8, 6.0);
    SlabState slab = make_slab(grid, 4, 1.0, [&](double) { return uniform_state(); });
    SlabConfig cfg;
    cfg.relax.dt = 0.05;  // vmax dt / dx = 6 * 0.05 / 0.25 = 1.2
    cfg.relax.t_end = 0.1;
    CHECK_THROWS_AS(run_slab_1d(slab, cfg), InvalidConfig);
}
