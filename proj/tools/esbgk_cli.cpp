#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esbgk/commands.hpp"
#include "esbgk/errors.hpp"
#include "esbgk/scenario.hpp"

namespace {

using esbgk::Scenario;
using esbgk::ScenarioKind;

// holders plus the CLI11 option handles, so that only flags the user actually
// passed override a scenario file
struct Options {
    std::string scenario_file;

    double nu = 0.0;
    double sigma_const = 3.0;
    double sigma_alpha = 1.0;
    double sigma_beta = 0.5;
    int grid_n = 0;
    double vmax = 0.0;
    double dt = 0.0;
    double t_end = 0.0;
    int stride = 1;
    std::string scheme = "rk4";
    std::string correction = "off";
    bool entropy_floor = false;
    std::string init = "gaussian";
    double rho0 = 1.0;
    std::vector<double> u0{0.0, 0.0, 0.0};
    std::vector<double> theta0{2.0, 0.5, 0.5};
    int count = 0;
    std::uint64_t seed = 42;
    double tol_scale = 1.0;
    int nx = 32;
    double length = 1.0;
    std::string format = "csv";
    std::string out;

    CLI::Option *o_nu = nullptr, *o_sigma_const = nullptr, *o_sigma_alpha = nullptr,
                *o_sigma_beta = nullptr, *o_grid_n = nullptr, *o_vmax = nullptr, *o_dt = nullptr,
                *o_t_end = nullptr, *o_stride = nullptr, *o_scheme = nullptr,
                *o_correction = nullptr, *o_entropy_floor = nullptr, *o_init = nullptr,
                *o_rho0 = nullptr, *o_u0 = nullptr, *o_theta0 = nullptr, *o_count = nullptr,
                *o_seed = nullptr, *o_tol_scale = nullptr, *o_nx = nullptr, *o_length = nullptr,
                *o_format = nullptr, *o_out = nullptr;
};

void add_options(CLI::App* sub, Options& o) {
    sub->add_option("--scenario", o.scenario_file, "key = value scenario file; flags override");
    o.o_nu = sub->add_option("--nu", o.nu, "anisotropy parameter in (-1/2, 1)");
    o.o_sigma_const = sub->add_option("--sigma-const", o.sigma_const,
                                      "constant collision frequency (default 3)");
    o.o_sigma_alpha =
        sub->add_option("--sigma-alpha", o.sigma_alpha, "density exponent of sigma = rho^a T^b");
    o.o_sigma_beta =
        sub->add_option("--sigma-beta", o.sigma_beta, "temperature exponent of sigma = rho^a T^b");
    o.o_grid_n = sub->add_option("--grid-n", o.grid_n, "velocity nodes per axis");
    o.o_vmax = sub->add_option("--vmax", o.vmax, "velocity cube half width (0: automatic)");
    o.o_dt = sub->add_option("--dt", o.dt, "time step");
    o.o_t_end = sub->add_option("--t-end", o.t_end, "final time");
    o.o_stride = sub->add_option("--stride", o.stride, "snapshot every k-th step");
    o.o_scheme =
        sub->add_option("--scheme", o.scheme, "time integrator")->check(CLI::IsMember({"rk4", "euler"}));
    o.o_correction = sub->add_option("--correction", o.correction,
                                     "refit the relaxation target to the stage moments")
                         ->check(CLI::IsMember({"off", "on"}));
    o.o_entropy_floor = sub->add_flag("--entropy-floor", o.entropy_floor,
                                      "clamp values below 1e-300 inside entropy logs");
    o.o_init = sub->add_option("--init", o.init, "initial condition family")
                   ->check(CLI::IsMember({"gaussian", "mixture", "equilibrium"}));
    o.o_rho0 = sub->add_option("--rho0", o.rho0, "initial density");
    o.o_u0 = sub->add_option("--u0", o.u0, "initial bulk velocity")->expected(3);
    o.o_theta0 =
        sub->add_option("--theta0", o.theta0, "initial stress eigenvalues")->expected(3);
    o.o_count = sub->add_option("--count", o.count, "random cases / trial fields");
    o.o_seed = sub->add_option("--seed", o.seed, "random seed");
    o.o_tol_scale = sub->add_option("--tol-scale", o.tol_scale,
                                    "multiply every certification tolerance");
    o.o_nx = sub->add_option("--nx", o.nx, "slab cells");
    o.o_length = sub->add_option("--length", o.length, "slab length");
    o.o_format =
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    o.o_out = sub->add_option("--out", o.out, "output path (default: stdout)");
}

Scenario base_scenario(ScenarioKind kind) {
    Scenario s;
    s.kind = kind;
    switch (kind) {
    case ScenarioKind::relax:
        break;  // struct defaults
    case ScenarioKind::slab:
        // periodic density wave at T = 1; defaults keep dt vmax / dx inside
        // the transport stability gate
        s.grid_n = 24;
        s.dt = 0.003;
        s.t_end = 0.5;
        s.theta0 = Eigen::Vector3d::Ones();
        break;
    case ScenarioKind::certify:
        break;
    case ScenarioKind::linearized:
        s.grid_n = 32;
        s.vmax = 8.0;
        s.count = 100;
        break;
    }
    return s;
}

int run(const Options& o, ScenarioKind kind) {
    Scenario s = base_scenario(kind);
    if (!o.scenario_file.empty()) {
        try {
            // the file may set anything, including another kind; the
            // subcommand decides what runs
            ScenarioKind keep = kind;
            Scenario from_file = esbgk::load_scenario_file(o.scenario_file);
            from_file.kind = keep;
            s = from_file;
        } catch (const esbgk::InvalidConfig& e) {
            std::fprintf(stderr, "configuration error: %s\n", e.what());
            return 2;
        }
    }
    if (o.o_nu->count())
        s.nu = o.nu;
    if (o.o_sigma_const->count()) {
        s.sigma.constant = true;
        s.sigma.c = o.sigma_const;
    }
    if (o.o_sigma_alpha->count()) {
        s.sigma.constant = false;
        s.sigma.alpha = o.sigma_alpha;
    }
    if (o.o_sigma_beta->count()) {
        s.sigma.constant = false;
        s.sigma.beta = o.sigma_beta;
    }
    if (o.o_grid_n->count())
        s.grid_n = o.grid_n;
    if (o.o_vmax->count())
        s.vmax = o.vmax;
    if (o.o_dt->count())
        s.dt = o.dt;
    if (o.o_t_end->count())
        s.t_end = o.t_end;
    if (o.o_stride->count())
        s.output_stride = o.stride;
    if (o.o_scheme->count())
        s.scheme = o.scheme == "euler" ? esbgk::TimeIntegrator::euler : esbgk::TimeIntegrator::rk4;
    if (o.o_correction->count())
        s.correction = o.correction == "on";
    if (o.o_entropy_floor->count())
        s.entropy_floor = o.entropy_floor;
    if (o.o_init->count()) {
        if (o.init == "mixture")
            s.init = esbgk::InitKind::mixture;
        else if (o.init == "equilibrium")
            s.init = esbgk::InitKind::equilibrium;
        else
            s.init = esbgk::InitKind::gaussian;
    }
    if (o.o_rho0->count())
        s.rho0 = o.rho0;
    if (o.o_u0->count())
        s.u0 = Eigen::Vector3d(o.u0[0], o.u0[1], o.u0[2]);
    if (o.o_theta0->count())
        s.theta0 = Eigen::Vector3d(o.theta0[0], o.theta0[1], o.theta0[2]);
    if (o.o_count->count())
        s.count = o.count;
    if (o.o_seed->count())
        s.seed = o.seed;
    if (o.o_tol_scale->count())
        s.tol_scale = o.tol_scale;
    if (o.o_nx->count())
        s.nx = o.nx;
    if (o.o_length->count())
        s.length = o.length;
    if (o.o_format->count())
        s.format = o.format == "json" ? esbgk::OutputFormat::json : esbgk::OutputFormat::csv;
    if (o.o_out->count())
        s.out = o.out;
    return esbgk::run_scenario_guarded(s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-velocity relaxation laboratory for the ellipsoidal BGK model"};
    app.require_subcommand(1);

    Options relax_opts, slab_opts, certify_opts, linearized_opts;
    int exit_code = 0;

    CLI::App* relax =
        app.add_subcommand("relax", "space-homogeneous relaxation with entropy diagnostics");
    add_options(relax, relax_opts);
    relax->callback([&] { exit_code = run(relax_opts, ScenarioKind::relax); });

    CLI::App* slab = app.add_subcommand("slab", "1D periodic slab, transport + relaxation");
    add_options(slab, slab_opts);
    slab->callback([&] { exit_code = run(slab_opts, ScenarioKind::slab); });

    CLI::App* certify = app.add_subcommand(
        "certify", "random-ensemble certification of the entropy inequalities");
    add_options(certify, certify_opts);
    certify->callback([&] { exit_code = run(certify_opts, ScenarioKind::certify); });

    CLI::App* linearized =
        app.add_subcommand("linearized", "spectral checks of the linearized relaxation operator");
    add_options(linearized, linearized_opts);
    linearized->callback([&] { exit_code = run(linearized_opts, ScenarioKind::linearized); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}
