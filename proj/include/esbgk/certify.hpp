#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "esbgk/ensemble.hpp"
#include "esbgk/entropy.hpp"
#include "esbgk/solver.hpp"

namespace esbgk {

struct CertifyConfig {
    int count = 1000;
    std::uint64_t seed = 42;
    int grid_n = 48;
    double vmax = 0.0;  // 0 means size each grid from the sampled mixture
    std::vector<double> nu_grid = {-0.45, -0.4, -0.25, -0.1, 0.0,
                                   0.1,   0.25, 0.5,   0.75, 0.9, 0.95};
    SigmaModel sigma;  // constant 3 by default
    std::vector<double> truncation_ratios = {1.1, 2.718281828459045, 10.0};
    MixtureParams mixture;

    // multiplies every tolerance; < 1 tightens until real violations appear,
    // which is how the reporting path itself gets exercised
    double tol_scale = 1.0;
};

// one inequality instance, normalized so that margin >= -tol passes
struct CheckSummary {
    std::string name;
    double tol = 0.0;          // effective, tol_scale already applied
    double min_margin = 0.0;   // worst normalized margin seen
    int worst_case = -1;
    double worst_nu = 0.0;     // 0 for per-case checks
    long long evaluations = 0;
    long long violations = 0;
};

struct CaseNuRow {
    int case_id = 0;
    double nu = 0.0;
    double cercignani = 0.0;
    double remainder_consistency = 0.0;
    double remainder_sign = 0.0;
    double stress_fraction = 0.0;
    double entropy_gap = 0.0;
    double ordering_closed = 0.0;
    double ordering_quad = 0.0;
    double split_residual = 0.0;
    double e_node = 0.0;
    double truncation = 0.0;
};

struct CaseRow {
    int case_id = 0;
    int components = 0;
    double vmax = 0.0;
    double rho = 0.0;
    double T = 0.0;
    double rel_entropy = 0.0;
    double kullback = 0.0;  // normalized margin of the L1 bound
};

struct CertificationReport {
    CertifyConfig config;
    std::vector<CheckSummary> checks;
    std::vector<CaseNuRow> rows;
    std::vector<CaseRow> cases;
    long long violations = 0;
    bool certified = false;
};

CertificationReport run_certification(const CertifyConfig& cfg);

void write_certification_json(const CertificationReport& rep, const std::string& path);
void print_certification_table(const CertificationReport& rep, std::ostream& os);

} // namespace esbgk
