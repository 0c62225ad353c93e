#pragma once

#include <Eigen/Dense>
#include <string>

#include "esbgk/solver.hpp"

namespace esbgk {

enum class ScenarioKind { relax, slab, certify, linearized };
enum class OutputFormat { csv, json };
enum class InitKind { gaussian, mixture, equilibrium };

// one flat bag of settings shared by all subcommands; each command validates
// and uses the slice it cares about
struct Scenario {
    ScenarioKind kind = ScenarioKind::relax;

    double nu = 0.0;
    SigmaModel sigma;

    int grid_n = 48;
    double vmax = 0.0;  // 0: sized from the initial data

    double dt = 0.01;
    double t_end = 3.0;
    TimeIntegrator scheme = TimeIntegrator::rk4;
    int output_stride = 1;
    bool correction = false;
    bool entropy_floor = false;

    InitKind init = InitKind::gaussian;
    double rho0 = 1.0;
    Eigen::Vector3d u0 = Eigen::Vector3d::Zero();
    Eigen::Vector3d theta0 = Eigen::Vector3d(2.0, 0.5, 0.5);  // stress eigenvalues

    int count = 1000;        // certify cases / linearized trial fields
    std::uint64_t seed = 42;
    double tol_scale = 1.0;

    int nx = 32;             // slab cells
    double length = 1.0;

    OutputFormat format = OutputFormat::csv;
    std::string out;  // empty: stdout for tables, required for csv/json files

    void validate() const;  // throws InvalidConfig
    SolverConfig solver_config() const;
};

// key = value lines, '#' starts a comment, unknown keys are errors
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

const char* to_string(ScenarioKind k);

} // namespace esbgk
