#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "esbgk/entropy.hpp"
#include "esbgk/gaussian.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/velocity_grid.hpp"

namespace esbgk {

// Collision frequency sigma(rho, T): a constant, or the power law rho^alpha T^beta.
// The homogeneous sections of the model conventionally take sigma = 3 so that
// A_nu = 3/(1-nu).
struct SigmaModel {
    bool constant = true;
    double c = 3.0;
    double alpha = 1.0;
    double beta = 0.5;

    double operator()(double rho, double T) const {
        return constant ? c : std::pow(rho, alpha) * std::pow(T, beta);
    }
};

enum class TimeIntegrator { rk4, euler };

struct SolverConfig {
    double nu = 0.0;
    SigmaModel sigma;
    double dt = 0.01;
    double t_end = 1.0;
    TimeIntegrator scheme = TimeIntegrator::rk4;
    int output_stride = 1;      // snapshot every k-th step
    bool correction = false;    // conservation refit of the sampled target
    bool entropy_floor = false;
};

struct Snapshot {
    double t = 0.0;
    MacroState state;
    EntropyReport report;
    double l1_to_maxwellian = 0.0;     // w sum |f - M0(f)|
    double entropy_balance_residual = 0.0;  // H(t) - H(0) + int_0^t D
    double clipped_mass = 0.0;         // cumulative
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    DistributionFunction final_f;
    double H0 = 0.0;
    double rel_entropy_0 = 0.0;
    double bound_rate = 0.0;    // sigma_0 min{1, (1+2nu)/(1-nu)}
    double fitted_rate = 0.0;   // least-squares slope of -ln H(f|M0)
    bool fit_valid = false;
    double total_clipped_mass = 0.0;
};

// Theta(t) = T Id + exp(-sigma t) (Theta_0 - T Id); exact for constant sigma
Eigen::Matrix3d stress_relaxation_oracle(const MacroState& initial, double sigma, double t);

struct StepStats {
    double clipped_mass = 0.0;
};

// one dt of df/dt = A_nu (M_nu(f) - f); moments (and sigma) re-evaluated at
// every stage; negatives clipped after the full update
StepStats step_homogeneous(DistributionFunction& f, const SolverConfig& cfg);

Trajectory run_homogeneous(const DistributionFunction& f0, const SolverConfig& cfg);

} // namespace esbgk
