#include "esbgk/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "esbgk/errors.hpp"
#include "esbgk/io.hpp"

namespace esbgk {

namespace {

enum CheckId {
    kCercignani = 0,
    kRemainderConsistency,
    kRemainderSign,
    kStressFraction,
    kEntropyGap,
    kOrderingClosed,
    kOrderingQuad,
    kSplitResidual,
    kPointwiseE,
    kKullback,
    kTruncation,
    kNumChecks
};

struct CheckDef {
    const char* name;
    double base_tol;
    bool per_nu;  // false: one evaluation per case
};

// every margin is normalized before it lands here, so the tolerances are
// dimensionless and comparable across mixtures
constexpr CheckDef kDefs[kNumChecks] = {
    {"cercignani_lower_bound", 1e-6, true},
    {"remainder_consistency", 1e-6, true},
    {"remainder_sign", 1e-10, true},
    {"stress_fraction_bound", 1e-12, true},
    {"entropy_gap_comparison", 1e-12, true},
    {"gaussian_entropy_ordering", 1e-12, true},
    {"quadratic_entropy_ordering", 1e-6, true},
    {"entropy_split_residual", 1e-8, true},
    {"pointwise_e_sign", 1e-12, true},
    {"l1_relative_entropy_bound", 1e-9, false},
    {"truncation_split_bound", 1e-12, true},
};

struct Recorder {
    std::vector<CheckSummary>& checks;

    void operator()(int id, double margin, int case_id, double nu) {
        CheckSummary& c = checks[static_cast<std::size_t>(id)];
        ++c.evaluations;
        if (margin < c.min_margin) {
            c.min_margin = margin;
            c.worst_case = case_id;
            c.worst_nu = nu;
        }
        if (margin < -c.tol)
            ++c.violations;
    }
};

} // namespace

CertificationReport run_certification(const CertifyConfig& cfg) {
    if (cfg.count < 1)
        throw InvalidConfig("certification: count must be at least 1");
    if (cfg.grid_n < 8)
        throw InvalidConfig("certification: grid_n below 8 cannot resolve a mixture");
    if (!(cfg.tol_scale > 0.0))
        throw InvalidConfig("certification: tol_scale must be positive");
    if (cfg.nu_grid.empty())
        throw InvalidConfig("certification: empty nu grid");
    for (double nu : cfg.nu_grid)
        if (!nu_in_range(nu))
            throw InvalidConfig("certification: nu grid entry outside (-1/2, 1)");
    for (double R : cfg.truncation_ratios)
        if (!(R > 1.0))
            throw InvalidConfig("certification: truncation ratio must exceed 1");

    CertificationReport rep;
    rep.config = cfg;
    rep.checks.resize(kNumChecks);
    for (int i = 0; i < kNumChecks; ++i) {
        rep.checks[i].name = kDefs[i].name;
        rep.checks[i].tol = kDefs[i].base_tol * cfg.tol_scale;
        rep.checks[i].min_margin = std::numeric_limits<double>::infinity();
        rep.checks[i].worst_nu = std::numeric_limits<double>::quiet_NaN();
    }
    rep.rows.reserve(static_cast<std::size_t>(cfg.count) * cfg.nu_grid.size());
    rep.cases.reserve(static_cast<std::size_t>(cfg.count));

    Recorder record{rep.checks};

    for (int case_id = 0; case_id < cfg.count; ++case_id) {
        Rng rng(cfg.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(case_id + 1));
        const Mixture mix = random_mixture(rng, cfg.mixture);
        const double vmax = cfg.vmax > 0.0 ? cfg.vmax : suggested_vmax(mix);
        const GridPtr grid = make_velocity_grid(cfg.grid_n, vmax);
        const DistributionFunction f = sample_mixture(mix, grid);
        const Prepared p = prepare(f);

        CaseRow cr;
        cr.case_id = case_id;
        cr.components = static_cast<int>(mix.size());
        cr.vmax = vmax;
        cr.rho = p.state.rho;
        cr.T = p.state.T;

        // L1 against the discrete-mass-matched Maxwellian; matching masses is
        // what makes the quadratic bound on |f - M|_1 applicable as stated
        {
            DistributionFunction m0 = sample(maxwellian(p.state), f.grid);
            const double mass_m = quadrature(m0);
            if (!(mass_m > 0.0))
                throw NumericalFailure("certification: sampled Maxwellian lost all mass");
            m0.values *= p.state.rho / mass_m;
            const double kl = relative_entropy(f, m0);
            const double bound = std::sqrt(2.0 * std::max(kl, 0.0));
            const double l1 = l1_distance(f, m0);
            cr.kullback = (bound - l1) / (1.0 + bound);
            record(kKullback, cr.kullback, case_id, 0.0);
        }

        for (double nu : cfg.nu_grid) {
            const double A = cfg.sigma(p.state.rho, p.state.T) / (1.0 - nu);
            const TargetEval target = evaluate_es_target(p.state, *f.grid, nu);
            const EntropyReport er = entropy_production(p, target, A);
            cr.rel_entropy = er.rel_entropy;  // H(f|M0), the same for every nu

            CaseNuRow row;
            row.case_id = case_id;
            row.nu = nu;

            const double a_rho = A * er.rho;
            row.cercignani = er.margins.cercignani / (1.0 + std::abs(er.D_nu));
            row.remainder_consistency =
                -std::abs(er.R_quad - er.R_nu) / std::max(a_rho, std::abs(er.R_nu));
            row.remainder_sign =
                (nu == 0.0 ? -std::abs(er.R_nu) : er.margins.remainder_sign) / a_rho;
            row.stress_fraction = er.margins.stress_fraction;

            const double gap1 = er.H_M1 ? er.H_M0 - *er.H_M1 : 0.0;
            row.entropy_gap = er.margins.entropy_gap / (1.0 + std::abs(gap1));
            row.ordering_closed = er.margins.ordering_closed / (1.0 + std::abs(er.H_M0));
            row.ordering_quad = er.margins.ordering_quad / (1.0 + std::abs(er.H_f));
            row.split_residual = -std::abs(er.split_residual) / (1.0 + std::abs(er.D_nu));
            row.e_node = er.min_e_node;

            row.truncation = std::numeric_limits<double>::infinity();
            for (double R : cfg.truncation_ratios) {
                const TruncationReport tr = truncation_split(p, target, R);
                row.truncation = std::min(row.truncation, -tr.max_violation);
            }

            record(kCercignani, row.cercignani, case_id, nu);
            record(kRemainderConsistency, row.remainder_consistency, case_id, nu);
            record(kRemainderSign, row.remainder_sign, case_id, nu);
            record(kStressFraction, row.stress_fraction, case_id, nu);
            record(kEntropyGap, row.entropy_gap, case_id, nu);
            record(kOrderingClosed, row.ordering_closed, case_id, nu);
            record(kOrderingQuad, row.ordering_quad, case_id, nu);
            record(kSplitResidual, row.split_residual, case_id, nu);
            record(kPointwiseE, row.e_node, case_id, nu);
            record(kTruncation, row.truncation, case_id, nu);

            rep.rows.push_back(row);
        }
        rep.cases.push_back(cr);
    }

    rep.violations = 0;
    for (const CheckSummary& c : rep.checks)
        rep.violations += c.violations;
    rep.certified = rep.violations == 0;
    return rep;
}

void write_certification_json(const CertificationReport& rep, const std::string& path) {
    JsonWriter jw;
    jw.begin_object();
    jw.kv("kind", "certification");
    jw.kv("certified", rep.certified);
    jw.kv("violations", rep.violations);

    jw.key("config");
    jw.begin_object();
    jw.kv("count", rep.config.count);
    jw.kv("seed", static_cast<unsigned long long>(rep.config.seed));
    jw.kv("grid_n", rep.config.grid_n);
    jw.kv("vmax", rep.config.vmax);
    jw.kv("tol_scale", rep.config.tol_scale);
    jw.key("nu_grid");
    jw.begin_array();
    for (double nu : rep.config.nu_grid)
        jw.value(nu);
    jw.end_array();
    jw.key("sigma");
    jw.begin_object();
    jw.kv("constant", rep.config.sigma.constant);
    jw.kv("c", rep.config.sigma.c);
    jw.kv("alpha", rep.config.sigma.alpha);
    jw.kv("beta", rep.config.sigma.beta);
    jw.end_object();
    jw.key("truncation_ratios");
    jw.begin_array();
    for (double R : rep.config.truncation_ratios)
        jw.value(R);
    jw.end_array();
    jw.key("mixture");
    jw.begin_object();
    jw.kv("k_min", rep.config.mixture.k_min);
    jw.kv("k_max", rep.config.mixture.k_max);
    jw.kv("mean_half_width", rep.config.mixture.mean_half_width);
    jw.kv("eig_lo", rep.config.mixture.eig_lo);
    jw.kv("eig_hi", rep.config.mixture.eig_hi);
    jw.end_object();
    jw.end_object();

    jw.key("checks");
    jw.begin_array();
    for (const CheckSummary& c : rep.checks) {
        jw.begin_object();
        jw.kv("name", c.name);
        jw.kv("tol", c.tol);
        jw.kv("min_margin", c.min_margin);
        jw.kv("worst_case", c.worst_case);
        jw.kv("worst_nu", c.worst_nu);
        jw.kv("evaluations", c.evaluations);
        jw.kv("violations", c.violations);
        jw.end_object();
    }
    jw.end_array();

    jw.key("cases");
    jw.begin_array();
    for (const CaseRow& c : rep.cases) {
        jw.begin_object();
        jw.kv("case_id", c.case_id);
        jw.kv("components", c.components);
        jw.kv("vmax", c.vmax);
        jw.kv("rho", c.rho);
        jw.kv("T", c.T);
        jw.kv("rel_entropy", c.rel_entropy);
        jw.kv("l1_bound_margin", c.kullback);
        jw.end_object();
    }
    jw.end_array();

    jw.key("rows");
    jw.begin_array();
    for (const CaseNuRow& r : rep.rows) {
        jw.begin_object();
        jw.kv("case_id", r.case_id);
        jw.kv("nu", r.nu);
        jw.kv("cercignani", r.cercignani);
        jw.kv("remainder_consistency", r.remainder_consistency);
        jw.kv("remainder_sign", r.remainder_sign);
        jw.kv("stress_fraction", r.stress_fraction);
        jw.kv("entropy_gap", r.entropy_gap);
        jw.kv("ordering_closed", r.ordering_closed);
        jw.kv("ordering_quad", r.ordering_quad);
        jw.kv("split_residual", r.split_residual);
        jw.kv("e_node", r.e_node);
        jw.kv("truncation", r.truncation);
        jw.end_object();
    }
    jw.end_array();

    jw.end_object();
    write_text_file(path, jw.str());
}

void print_certification_table(const CertificationReport& rep, std::ostream& os) {
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %10s %13s %6s %7s %6s  %s\n", "check", "tol",
                  "min margin", "case", "nu", "viol", "status");
    os << line;
    for (const CheckSummary& c : rep.checks) {
        char nu_buf[16];
        if (std::isnan(c.worst_nu))
            std::snprintf(nu_buf, sizeof nu_buf, "%7s", "-");
        else
            std::snprintf(nu_buf, sizeof nu_buf, "%7.2f", c.worst_nu);
        std::snprintf(line, sizeof line, "%-28s %10.1e %13.3e %6d %s %6lld  %s\n", c.name.c_str(),
                      c.tol, c.min_margin, c.worst_case, nu_buf, c.violations,
                      c.violations == 0 ? "ok" : "VIOLATED");
        os << line;
    }
    long long evaluations = 0;
    for (const CheckSummary& c : rep.checks)
        evaluations += c.evaluations;
    std::snprintf(line, sizeof line,
                  "cases: %d   nu points: %zu   evaluations: %lld   violations: %lld\n",
                  rep.config.count, rep.config.nu_grid.size(), evaluations, rep.violations);
    os << line;
    os << (rep.certified ? "certified: all entropy inequalities hold within tolerance\n"
                         : "NOT certified: at least one inequality violated\n");
}

} // namespace esbgk
