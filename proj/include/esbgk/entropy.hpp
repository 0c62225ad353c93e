#pragma once

#include <Eigen/Dense>
#include <optional>

#include "esbgk/gaussian.hpp"
#include "esbgk/moments.hpp"
#include "esbgk/velocity_grid.hpp"

namespace esbgk {

// H(f) = w sum f ln f with the 0 ln 0 = 0 convention
double h_functional(const DistributionFunction& f);

// H(f|g) = w sum f ln(f/g); errors where g <= 0 on the support of f
double relative_entropy(const DistributionFunction& f, const DistributionFunction& g);

// F_nu = sum theta_i / ((1-nu) T + nu theta_i). Requires tr Theta = 3T:
// |sum theta - 3T| <= 1e-10 * 3T is enforced.
double f_nu_scalar(double T, const Eigen::Vector3d& theta, double nu);

// f with its log and moments precomputed once, shared by the per-nu checks
struct Prepared {
    const DistributionFunction* f = nullptr;
    Eigen::ArrayXd log_f;
    MacroState state;
    double h_f = 0.0;
};

// entropy_floor: clamp values below 1e-300 inside the log only; off means a
// nonpositive node is a hard SupportViolation
Prepared prepare(const DistributionFunction& f, bool entropy_floor = false);

// relaxation target M_nu sampled once and shared by every check at this nu
struct TargetEval {
    TemperatureTensor tt;
    EllipsoidalGaussian g;
    Eigen::ArrayXd q;      // (v-U)' T_nu^-1 (v-U)
    Eigen::ArrayXd log_m;
    Eigen::ArrayXd m;
};

TargetEval evaluate_es_target(const MacroState& state, const VelocityGrid& grid, double nu);

// named slacks; every inequality is written so that >= 0 means it holds
struct EntropyMargins {
    double cercignani = 0.0;        // D - min(1+2nu, 1-nu) A H(f|M0)
    double entropy_gap = 0.0;       // gap_nu - max(nu, -2nu) gap_1
    double ordering_closed = 0.0;   // H(M1) - H(M0)
    double ordering_quad = 0.0;     // H(f) - H(M1)
    double stress_fraction = 0.0;   // 3 - F for nu >= 0, F - 3 for nu < 0
    double remainder_sign = 0.0;    // nu R
};

struct EntropyReport {
    double nu = 0.0;
    double A_nu = 0.0;
    double rho = 0.0;
    double T = 0.0;
    Eigen::Vector3d theta = Eigen::Vector3d::Zero();  // stress eigenvalues, descending

    double H_f = 0.0;
    double H_M0 = 0.0;
    double H_Mnu = 0.0;
    std::optional<double> H_M1;  // absent when Theta is degenerate
    double rel_entropy = 0.0;    // H(f|M0), exact discrete identity H_f - H(M0)

    double D_nu = 0.0;    // -A w sum (M-f) ln f
    double E_part = 0.0;  // A w sum (M-f)(ln M - ln f), nonnegative node by node
    double F_nu = 0.0;
    double R_nu = 0.0;    // closed form A rho (3 - F)
    double R_quad = 0.0;  // A [w sum (M-f) q], q the T_nu quadratic form

    double mass_diff = 0.0;       // w sum (M - f)
    double split_residual = 0.0;  // D - E - R_quad/2 + A C mass_diff; ~roundoff
    double min_e_node = 0.0;      // smallest nodewise E integrand

    EntropyMargins margins;
};

EntropyReport entropy_production(const Prepared& p, const TargetEval& target, double A_nu);
EntropyReport entropy_production(const Prepared& p, double nu, double A_nu);
EntropyReport entropy_production(const DistributionFunction& f, double nu, double A_nu,
                                 bool entropy_floor = false);

// Pointwise truncation split of M_nu - f at ratio R > 1:
//   M - f <= (R-1) f            where M < R f
//   M - f <= (M-f)(lnM-lnf)/lnR where M >= R f
struct TruncationReport {
    double R = 0.0;
    double max_violation = 0.0;  // max nodewise lhs - rhs, <= 0 up to roundoff
    double gain_term = 0.0;      // (R-1) w sum f over {M < R f}
    double entropy_term = 0.0;   // w sum (M-f)(lnM-lnf)/lnR over {M >= R f}
    Eigen::Index nodes_gain = 0;
    Eigen::Index nodes_entropy = 0;
};

TruncationReport truncation_split(const Prepared& p, const TargetEval& target, double R);
TruncationReport diperna_lions_check(const Prepared& p, double nu, double R);

} // namespace esbgk
