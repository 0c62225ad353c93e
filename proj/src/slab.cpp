#include "esbgk/slab.hpp"

#include <cmath>
#include <string>

#include "esbgk/errors.hpp"
#include "esbgk/gaussian.hpp"

namespace esbgk {

SlabState make_slab(GridPtr grid, int nx, double length,
                    const std::function<MacroState(double)>& profile) {
    if (nx < 2)
        throw InvalidConfig("slab: nx must be at least 2");
    if (!(length > 0.0))
        throw InvalidConfig("slab: length must be positive");
    SlabState s;
    s.grid = grid;
    s.length = length;
    s.dx = length / nx;
    s.F.resize(grid->size(), nx);
    for (int j = 0; j < nx; ++j) {
        const MacroState st = profile((j + 0.5) * s.dx);
        const EllipsoidalGaussian g = gaussian_from_cov(st.rho, st.U, st.Theta);
        s.F.col(j) = evaluate_log(g, *grid).exp();
    }
    return s;
}

void advect_upwind_periodic(Eigen::Ref<Eigen::ArrayXd> cells, double courant) {
    if (std::abs(courant) > 1.0)
        throw NumericalFailure("upwind substep: courant number above 1");
    const Eigen::Index nx = cells.size();
    if (courant == 0.0 || nx < 2)
        return;
    static thread_local Eigen::ArrayXd prev;
    prev = cells;
    if (courant > 0.0) {
        for (Eigen::Index j = 0; j < nx; ++j) {
            const Eigen::Index jm = j == 0 ? nx - 1 : j - 1;
            cells[j] = (1.0 - courant) * prev[j] + courant * prev[jm];
        }
    } else {
        for (Eigen::Index j = 0; j < nx; ++j) {
            const Eigen::Index jp = j + 1 == nx ? 0 : j + 1;
            cells[j] = (1.0 + courant) * prev[j] - courant * prev[jp];
        }
    }
}

namespace {

double xlogx_sum(const Eigen::ArrayXd& v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] > 0.0)
            acc += v[i] * std::log(v[i]);
    return acc;
}

SlabSnapshot take_snapshot(const SlabState& s, double t, double clipped) {
    const VelocityGrid& g = *s.grid;
    SlabSnapshot snap;
    snap.t = t;
    snap.clipped_mass = clipped;
    snap.min_value = s.F.minCoeff();
    const Eigen::ArrayXd cellsum = s.F.colwise().sum();
    snap.mass = s.dx * g.w * cellsum.sum();
    snap.momentum.x() = s.dx * g.w * (s.F.colwise() * g.vx).sum();
    snap.momentum.y() = s.dx * g.w * (s.F.colwise() * g.vy).sum();
    snap.momentum.z() = s.dx * g.w * (s.F.colwise() * g.vz).sum();
    const Eigen::ArrayXd vsq = g.vx.square() + g.vy.square() + g.vz.square();
    snap.energy = s.dx * g.w * (s.F.colwise() * vsq).sum();
    double h = 0.0;
    for (Eigen::Index j = 0; j < s.F.cols(); ++j)
        h += xlogx_sum(s.F.col(j));
    snap.H = s.dx * g.w * h;
    return snap;
}

} // namespace

SlabTrajectory run_slab_1d(const SlabState& initial, const SlabConfig& cfg) {
    const SolverConfig& rc = cfg.relax;
    if (!nu_in_range(rc.nu))
        throw InvalidConfig("slab: nu out of (-1/2, 1)");
    if (!(rc.dt > 0.0) || rc.t_end < 0.0 || rc.output_stride < 1)
        throw InvalidConfig("slab: bad time stepping configuration");

    SlabState s = initial;
    const VelocityGrid& g = *s.grid;
    const Eigen::Index nx = s.F.cols();

    const double vmax_axis = g.vx.abs().maxCoeff();
    const double cfl = rc.dt * vmax_axis / s.dx;
    if (cfl > 0.9)
        throw InvalidConfig("slab: CFL gate dt v_max / dx <= 0.9 failed, got " +
                            std::to_string(cfl));

    // relaxation stability gate on the initial cells
    for (Eigen::Index j = 0; j < nx; ++j) {
        const MacroState st = extract_moments({s.grid, s.F.col(j)});
        const double a = rc.sigma(st.rho, st.T) / (1.0 - rc.nu);
        if (rc.dt * a > 0.5)
            throw InvalidConfig("slab: stability gate dt * A_nu <= 0.5 failed in cell " +
                                std::to_string(j));
    }

    SolverConfig cell_cfg = rc;
    cell_cfg.output_stride = 1;

    const double half_dt = 0.5 * rc.dt;
    const long n_steps = std::lround(rc.t_end / rc.dt);
    double clipped_total = 0.0;

    auto transport_half = [&]() {
        for (Eigen::Index i = 0; i < s.F.rows(); ++i) {
            const double courant = g.vx[i] * half_dt / s.dx;
            Eigen::ArrayXd row = s.F.row(i);
            advect_upwind_periodic(row, courant);
            s.F.row(i) = row;
        }
    };

    SlabTrajectory traj;
    traj.snapshots.push_back(take_snapshot(s, 0.0, 0.0));
    for (long k = 1; k <= n_steps; ++k) {
        transport_half();
        for (Eigen::Index j = 0; j < nx; ++j) {
            DistributionFunction cell{s.grid, s.F.col(j)};
            clipped_total += s.dx * step_homogeneous(cell, cell_cfg).clipped_mass;
            s.F.col(j) = cell.values;
        }
        transport_half();
        if (k % rc.output_stride == 0 || k == n_steps)
            traj.snapshots.push_back(take_snapshot(s, k * rc.dt, clipped_total));
    }
    traj.final_state = std::move(s);
    return traj;
}

} // namespace esbgk
