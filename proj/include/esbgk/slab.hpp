#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "esbgk/solver.hpp"
#include "esbgk/velocity_grid.hpp"

namespace esbgk {

// 1D-in-space slab with periodic boundary, transport along the first velocity
// axis. The state is one column of node values per spatial cell.
struct SlabState {
    GridPtr grid;
    double length = 1.0;
    double dx = 0.0;
    Eigen::ArrayXXd F;  // grid->size() rows, nx columns
};

SlabState make_slab(GridPtr grid, int nx, double length,
                    const std::function<MacroState(double)>& profile);

struct SlabConfig {
    SolverConfig relax;   // dt, t_end, nu, sigma, scheme, correction
};

struct SlabSnapshot {
    double t = 0.0;
    double mass = 0.0;
    Eigen::Vector3d momentum = Eigen::Vector3d::Zero();
    double energy = 0.0;   // second raw moment, integrated over x
    double H = 0.0;        // dx sum_x w sum_v f ln f
    double min_value = 0.0;
    double clipped_mass = 0.0;  // cumulative
};

struct SlabTrajectory {
    std::vector<SlabSnapshot> snapshots;
    SlabState final_state;
};

// one periodic first-order upwind substep u_t + c u_x = 0 with courant = c dt/dx
void advect_upwind_periodic(Eigen::Ref<Eigen::ArrayXd> cells, double courant);

// Strang splitting: half transport, full local relaxation, half transport.
// CFL gate dt v_max / dx <= 0.9.
SlabTrajectory run_slab_1d(const SlabState& initial, const SlabConfig& cfg);

} // namespace esbgk
