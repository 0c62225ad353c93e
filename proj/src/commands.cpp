#include "esbgk/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <vector>

#include "esbgk/certify.hpp"
#include "esbgk/ensemble.hpp"
#include "esbgk/errors.hpp"
#include "esbgk/io.hpp"
#include "esbgk/linearized.hpp"
#include "esbgk/slab.hpp"

namespace esbgk {

namespace {

void emit(const Scenario& s, const std::string& text) {
    if (s.out.empty())
        std::cout << text;
    else
        write_text_file(s.out, text);
}

const char* scheme_name(TimeIntegrator t) {
    return t == TimeIntegrator::rk4 ? "rk4" : "euler";
}

const char* init_name(InitKind k) {
    switch (k) {
    case InitKind::gaussian:
        return "gaussian";
    case InitKind::mixture:
        return "mixture";
    case InitKind::equilibrium:
        return "equilibrium";
    }
    return "unknown";
}

struct InitialData {
    GridPtr grid;
    DistributionFunction f;
    double vmax = 0.0;
};

InitialData build_initial(const Scenario& s) {
    InitialData d;
    if (s.init == InitKind::mixture) {
        Rng rng(s.seed);
        const Mixture mix = random_mixture(rng);
        d.vmax = s.vmax > 0.0 ? s.vmax : suggested_vmax(mix);
        d.grid = make_velocity_grid(s.grid_n, d.vmax);
        d.f = sample_mixture(mix, d.grid);
        return d;
    }
    MacroState st;
    st.rho = s.rho0;
    st.U = s.u0;
    st.Theta = s.theta0.asDiagonal();
    st.T = s.theta0.sum() / 3.0;
    d.vmax = s.vmax > 0.0 ? s.vmax : s.u0.norm() + 8.0 * std::sqrt(s.theta0.maxCoeff());
    d.grid = make_velocity_grid(s.grid_n, d.vmax);
    if (s.init == InitKind::equilibrium)
        d.f = sample(maxwellian(st), d.grid);
    else
        d.f = sample(gaussian_from_cov(st.rho, st.U, st.Theta), d.grid);
    return d;
}

void sigma_json(JsonWriter& jw, const SigmaModel& sm) {
    jw.begin_object();
    jw.kv("constant", sm.constant);
    jw.kv("c", sm.c);
    jw.kv("alpha", sm.alpha);
    jw.kv("beta", sm.beta);
    jw.end_object();
}

std::string trajectory_csv(const Scenario& s, double vmax, const Trajectory& traj) {
    std::string out;
    out.reserve(256 * traj.snapshots.size() + 1024);
    out += "# esbgk relax\n";
    out += "# nu = " + fmt17(s.nu) + "\n";
    if (s.sigma.constant)
        out += "# sigma = " + fmt17(s.sigma.c) + " (constant)\n";
    else
        out += "# sigma = rho^" + fmt17(s.sigma.alpha) + " T^" + fmt17(s.sigma.beta) + "\n";
    out += "# grid_n = " + std::to_string(s.grid_n) + ", vmax = " + fmt17(vmax) + "\n";
    out += "# dt = " + fmt17(s.dt) + ", t_end = " + fmt17(s.t_end) + ", scheme = " +
           scheme_name(s.scheme) + ", correction = " + (s.correction ? "on" : "off") + "\n";
    out += "# init = " + std::string(init_name(s.init)) + "\n";
    out += "# H0 = " + fmt17(traj.H0) + ", rel_entropy_0 = " + fmt17(traj.rel_entropy_0) + "\n";
    out += "# bound_rate = " + fmt17(traj.bound_rate) +
           ", fitted_rate = " + fmt17(traj.fitted_rate) +
           ", fit_valid = " + (traj.fit_valid ? std::string("1") : std::string("0")) + "\n";
    out += "# total_clipped_mass = " + fmt17(traj.total_clipped_mass) + "\n";
    out += "t,rho,U1,U2,U3,T,Theta11,Theta22,Theta33,Theta12,Theta13,Theta23,"
           "H_f,rel_entropy,D_nu,R_nu,F_nu,l1_to_maxwellian,entropy_balance_residual\n";
    for (const Snapshot& sn : traj.snapshots) {
        const MacroState& st = sn.state;
        const EntropyReport& er = sn.report;
        out += fmt17(sn.t);
        out += ',' + fmt17(st.rho);
        for (int i = 0; i < 3; ++i)
            out += ',' + fmt17(st.U[i]);
        out += ',' + fmt17(st.T);
        out += ',' + fmt17(st.Theta(0, 0)) + ',' + fmt17(st.Theta(1, 1)) + ',' +
               fmt17(st.Theta(2, 2));
        out += ',' + fmt17(st.Theta(0, 1)) + ',' + fmt17(st.Theta(0, 2)) + ',' +
               fmt17(st.Theta(1, 2));
        out += ',' + fmt17(er.H_f);
        out += ',' + fmt17(er.rel_entropy);
        out += ',' + fmt17(er.D_nu);
        out += ',' + fmt17(er.R_nu);
        out += ',' + fmt17(er.F_nu);
        out += ',' + fmt17(sn.l1_to_maxwellian);
        out += ',' + fmt17(sn.entropy_balance_residual);
        out += '\n';
    }
    return out;
}

std::string trajectory_json(const Scenario& s, double vmax, const Trajectory& traj) {
    JsonWriter jw;
    jw.begin_object();
    jw.kv("kind", "relax_trajectory");
    jw.key("config");
    jw.begin_object();
    jw.kv("nu", s.nu);
    jw.key("sigma");
    sigma_json(jw, s.sigma);
    jw.kv("grid_n", s.grid_n);
    jw.kv("vmax", vmax);
    jw.kv("dt", s.dt);
    jw.kv("t_end", s.t_end);
    jw.kv("scheme", scheme_name(s.scheme));
    jw.kv("output_stride", s.output_stride);
    jw.kv("correction", s.correction);
    jw.kv("entropy_floor", s.entropy_floor);
    jw.kv("init", init_name(s.init));
    jw.kv("seed", static_cast<unsigned long long>(s.seed));
    jw.end_object();

    jw.kv("H0", traj.H0);
    jw.kv("rel_entropy_0", traj.rel_entropy_0);
    jw.kv("bound_rate", traj.bound_rate);
    jw.kv("fitted_rate", traj.fitted_rate);
    jw.kv("fit_valid", traj.fit_valid);
    jw.kv("total_clipped_mass", traj.total_clipped_mass);

    jw.key("snapshots");
    jw.begin_array();
    for (const Snapshot& sn : traj.snapshots) {
        const MacroState& st = sn.state;
        const EntropyReport& er = sn.report;
        jw.begin_object();
        jw.kv("t", sn.t);
        jw.kv("rho", st.rho);
        jw.key("U");
        jw.begin_array();
        for (int i = 0; i < 3; ++i)
            jw.value(st.U[i]);
        jw.end_array();
        jw.kv("T", st.T);
        jw.key("Theta");
        jw.begin_array();
        jw.value(st.Theta(0, 0));
        jw.value(st.Theta(1, 1));
        jw.value(st.Theta(2, 2));
        jw.value(st.Theta(0, 1));
        jw.value(st.Theta(0, 2));
        jw.value(st.Theta(1, 2));
        jw.end_array();
        jw.kv("H_f", er.H_f);
        jw.kv("rel_entropy", er.rel_entropy);
        jw.kv("D_nu", er.D_nu);
        jw.kv("E_part", er.E_part);
        jw.kv("R_nu", er.R_nu);
        jw.kv("R_quad", er.R_quad);
        jw.kv("F_nu", er.F_nu);
        jw.kv("split_residual", er.split_residual);
        jw.kv("l1_to_maxwellian", sn.l1_to_maxwellian);
        jw.kv("entropy_balance_residual", sn.entropy_balance_residual);
        jw.kv("clipped_mass", sn.clipped_mass);
        jw.key("margins");
        jw.begin_object();
        jw.kv("cercignani", er.margins.cercignani);
        jw.kv("entropy_gap", er.margins.entropy_gap);
        jw.kv("ordering_closed", er.margins.ordering_closed);
        jw.kv("ordering_quad", er.margins.ordering_quad);
        jw.kv("stress_fraction", er.margins.stress_fraction);
        jw.kv("remainder_sign", er.margins.remainder_sign);
        jw.end_object();
        jw.end_object();
    }
    jw.end_array();
    jw.end_object();
    return jw.str();
}

} // namespace

int cmd_relax(const Scenario& s) {
    const InitialData init = build_initial(s);
    const Trajectory traj = run_homogeneous(init.f, s.solver_config());
    if (s.format == OutputFormat::csv)
        emit(s, trajectory_csv(s, init.vmax, traj));
    else
        emit(s, trajectory_json(s, init.vmax, traj));
    if (!s.out.empty())
        std::cout << "relax: " << traj.snapshots.size() << " snapshots, rel entropy "
                  << fmt17(traj.rel_entropy_0) << " -> "
                  << fmt17(traj.snapshots.back().report.rel_entropy) << ", wrote " << s.out
                  << "\n";
    return 0;
}

int cmd_slab(const Scenario& s) {
    // the slab profile is isotropic, so the grid is sized from T alone
    const double T0 = s.theta0.sum() / 3.0;
    const double vmax = s.vmax > 0.0 ? s.vmax : s.u0.norm() + 8.0 * std::sqrt(T0);
    const GridPtr grid = make_velocity_grid(s.grid_n, vmax);

    // density wave on a uniform temperature background
    const auto profile = [&](double x) {
        MacroState st;
        st.rho = s.rho0 * (1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x / s.length));
        st.U = s.u0;
        st.T = T0;
        st.Theta = Eigen::Matrix3d::Identity() * T0;
        return st;
    };
    const SlabState initial = make_slab(grid, s.nx, s.length, profile);
    SlabConfig cfg;
    cfg.relax = s.solver_config();
    const SlabTrajectory traj = run_slab_1d(initial, cfg);

    if (s.format == OutputFormat::csv) {
        std::string out;
        out.reserve(128 * traj.snapshots.size() + 512);
        out += "# esbgk slab\n";
        out += "# nu = " + fmt17(s.nu) + ", nx = " + std::to_string(s.nx) +
               ", length = " + fmt17(s.length) + "\n";
        out += "# grid_n = " + std::to_string(s.grid_n) + ", vmax = " + fmt17(vmax) + "\n";
        out += "# dt = " + fmt17(s.dt) + ", t_end = " + fmt17(s.t_end) + ", scheme = " +
               scheme_name(s.scheme) + ", correction = " + (s.correction ? "on" : "off") + "\n";
        out += "t,mass,momentum1,momentum2,momentum3,energy,H,min_value,clipped_mass\n";
        for (const SlabSnapshot& sn : traj.snapshots) {
            out += fmt17(sn.t);
            out += ',' + fmt17(sn.mass);
            for (int i = 0; i < 3; ++i)
                out += ',' + fmt17(sn.momentum[i]);
            out += ',' + fmt17(sn.energy);
            out += ',' + fmt17(sn.H);
            out += ',' + fmt17(sn.min_value);
            out += ',' + fmt17(sn.clipped_mass);
            out += '\n';
        }
        emit(s, out);
    } else {
        JsonWriter jw;
        jw.begin_object();
        jw.kv("kind", "slab_trajectory");
        jw.key("config");
        jw.begin_object();
        jw.kv("nu", s.nu);
        jw.key("sigma");
        sigma_json(jw, s.sigma);
        jw.kv("grid_n", s.grid_n);
        jw.kv("vmax", vmax);
        jw.kv("nx", s.nx);
        jw.kv("length", s.length);
        jw.kv("dt", s.dt);
        jw.kv("t_end", s.t_end);
        jw.kv("scheme", scheme_name(s.scheme));
        jw.kv("correction", s.correction);
        jw.end_object();
        jw.key("snapshots");
        jw.begin_array();
        for (const SlabSnapshot& sn : traj.snapshots) {
            jw.begin_object();
            jw.kv("t", sn.t);
            jw.kv("mass", sn.mass);
            jw.key("momentum");
            jw.begin_array();
            for (int i = 0; i < 3; ++i)
                jw.value(sn.momentum[i]);
            jw.end_array();
            jw.kv("energy", sn.energy);
            jw.kv("H", sn.H);
            jw.kv("min_value", sn.min_value);
            jw.kv("clipped_mass", sn.clipped_mass);
            jw.end_object();
        }
        jw.end_array();
        jw.end_object();
        emit(s, jw.str());
    }
    if (!s.out.empty())
        std::cout << "slab: " << traj.snapshots.size() << " snapshots, wrote " << s.out << "\n";
    return 0;
}

int cmd_certify(const Scenario& s) {
    CertifyConfig cfg;
    cfg.count = s.count;
    cfg.seed = s.seed;
    cfg.grid_n = s.grid_n;
    cfg.vmax = s.vmax;
    cfg.sigma = s.sigma;
    cfg.tol_scale = s.tol_scale;

    const CertificationReport rep = run_certification(cfg);
    print_certification_table(rep, std::cout);
    if (!s.out.empty()) {
        write_certification_json(rep, s.out);
        std::cout << "wrote " << s.out << "\n";
    }
    return rep.certified ? 0 : 1;
}

int cmd_linearized(const Scenario& s) {
    const double vmax = s.vmax > 0.0 ? s.vmax : 8.0;
    const GridPtr grid = make_velocity_grid(s.grid_n, vmax);
    const LinearizedBasis basis = build_linearized_basis(grid);
    const double tol = 1e-8 * s.tol_scale;
    const std::vector<double> nus = {-0.45, -0.4, -0.25, -0.1, 0.0, 0.1,
                                     0.25,  0.5,  0.75,  0.9,  0.95};

    // orthonormality of the 10 basis columns
    Eigen::MatrixXd all(grid->size(), 10);
    all << basis.b0, basis.b1, basis.b2;
    double gram_dev = 0.0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j <= i; ++j) {
            const double d = grid->w * (all.col(i).array() * all.col(j).array()).sum();
            gram_dev = std::max(gram_dev, std::abs(d - (i == j ? 1.0 : 0.0)));
        }

    // block eigenvalue residuals: kernel 0 on B0, -1 on B1 and B2, and
    // -1/(1-nu) on the orthogonal complement
    double kernel_res = 0.0, minus_one_res = 0.0, complement_res = 0.0;
    double dirichlet_gap = 0.0, dissipativity = std::numeric_limits<double>::infinity();

    Rng rng(s.seed);
    const Eigen::ArrayXd& x = grid->vx;
    const Eigen::ArrayXd& y = grid->vy;
    const Eigen::ArrayXd& z = grid->vz;

    for (int trial = 0; trial < s.count; ++trial) {
        // random cubic polynomial times sqrt(m): smooth, decaying, and not
        // confined to the invariant blocks
        double c[20];
        for (double& ci : c)
            ci = rng.normal();
        Eigen::ArrayXd poly = c[0] + c[1] * x + c[2] * y + c[3] * z + c[4] * x * x +
                              c[5] * y * y + c[6] * z * z + c[7] * x * y + c[8] * x * z +
                              c[9] * y * z + c[10] * x * x * x + c[11] * y * y * y +
                              c[12] * z * z * z + c[13] * x * x * y + c[14] * x * x * z +
                              c[15] * y * y * x + c[16] * y * y * z + c[17] * z * z * x +
                              c[18] * z * z * y + c[19] * x * y * z;
        Eigen::ArrayXd g = poly * basis.sqrt_m;
        const double gn = std::sqrt(norm2(basis, g));
        if (gn > 0.0)
            g /= gn;

        const Eigen::ArrayXd g_perp =
            g - project(basis, Block::b0, g) - project(basis, Block::b1, g) -
            project(basis, Block::b2, g);

        for (double nu : nus) {
            const DirichletReport d = dirichlet_form(basis, g, nu);
            dirichlet_gap = std::max(dirichlet_gap, std::abs(d.lhs - d.rhs) / (1.0 + std::abs(d.lhs)));
            dissipativity = std::min(dissipativity, d.lhs);

            const Eigen::ArrayXd lp = apply_L(basis, g_perp, nu);
            const double res = std::sqrt(norm2(basis, lp + g_perp / (1.0 - nu)));
            complement_res = std::max(complement_res, res);
        }
    }

    for (double nu : nus) {
        for (int j = 0; j < basis.b0.cols(); ++j) {
            const Eigen::ArrayXd col = basis.b0.col(j).array();
            kernel_res = std::max(kernel_res, std::sqrt(norm2(basis, apply_L(basis, col, nu))));
        }
        for (int j = 0; j < basis.b1.cols(); ++j) {
            const Eigen::ArrayXd col = basis.b1.col(j).array();
            minus_one_res =
                std::max(minus_one_res, std::sqrt(norm2(basis, apply_L(basis, col, nu) + col)));
        }
        for (int j = 0; j < basis.b2.cols(); ++j) {
            const Eigen::ArrayXd col = basis.b2.col(j).array();
            minus_one_res =
                std::max(minus_one_res, std::sqrt(norm2(basis, apply_L(basis, col, nu) + col)));
        }
    }

    struct Line {
        const char* name;
        double value;
        bool pass;
    };
    const Line lines[] = {
        {"orthonormality_deviation", gram_dev, gram_dev <= tol},
        {"dirichlet_identity_gap", dirichlet_gap, dirichlet_gap <= tol},
        {"dissipativity_min", dissipativity, dissipativity >= -tol},
        {"kernel_block_residual", kernel_res, kernel_res <= tol},
        {"eigenvalue_minus_one_residual", minus_one_res, minus_one_res <= tol},
        {"eigenvalue_complement_residual", complement_res, complement_res <= tol},
    };
    bool all_pass = true;
    for (const Line& l : lines) {
        all_pass = all_pass && l.pass;
        std::cout << (l.pass ? "ok       " : "VIOLATED ") << l.name << " = " << fmt17(l.value)
                  << "\n";
    }
    std::cout << (all_pass ? "linearized operator certified\n"
                           : "linearized operator checks FAILED\n");

    if (!s.out.empty()) {
        JsonWriter jw;
        jw.begin_object();
        jw.kv("kind", "linearized_report");
        jw.key("config");
        jw.begin_object();
        jw.kv("grid_n", s.grid_n);
        jw.kv("vmax", vmax);
        jw.kv("count", s.count);
        jw.kv("seed", static_cast<unsigned long long>(s.seed));
        jw.kv("tol", tol);
        jw.end_object();
        jw.key("checks");
        jw.begin_array();
        for (const Line& l : lines) {
            jw.begin_object();
            jw.kv("name", l.name);
            jw.kv("value", l.value);
            jw.kv("pass", l.pass);
            jw.end_object();
        }
        jw.end_array();
        jw.kv("pass", all_pass);
        jw.end_object();
        write_text_file(s.out, jw.str());
        std::cout << "wrote " << s.out << "\n";
    }
    return all_pass ? 0 : 1;
}

int run_scenario(const Scenario& s) {
    s.validate();
    switch (s.kind) {
    case ScenarioKind::relax:
        return cmd_relax(s);
    case ScenarioKind::slab:
        return cmd_slab(s);
    case ScenarioKind::certify:
        return cmd_certify(s);
    case ScenarioKind::linearized:
        return cmd_linearized(s);
    }
    throw InvalidConfig("unknown scenario kind");
}

int run_scenario_guarded(const Scenario& s) {
    try {
        return run_scenario(s);
    } catch (const InvalidConfig& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace esbgk
