#include "esbgk/scenario.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "esbgk/errors.hpp"
#include "esbgk/gaussian.hpp"

namespace esbgk {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw InvalidConfig("scenario: bad numeric value for '" + key + "': " + v);
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw InvalidConfig("scenario: bad integer value for '" + key + "': " + v);
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1")
        return true;
    if (v == "off" || v == "false" || v == "0")
        return false;
    throw InvalidConfig("scenario: bad boolean value for '" + key + "': " + v);
}

Eigen::Vector3d parse_vec3(const std::string& key, const std::string& v) {
    std::istringstream iss(v);
    Eigen::Vector3d out;
    char comma;
    if (!(iss >> out[0] >> comma >> out[1] >> comma >> out[2]))
        throw InvalidConfig("scenario: expected three comma separated numbers for '" + key +
                            "': " + v);
    std::string rest;
    if (iss >> rest)
        throw InvalidConfig("scenario: trailing garbage in '" + key + "': " + v);
    return out;
}

void apply(Scenario& s, const std::string& key, const std::string& value) {
    if (key == "kind") {
        if (value == "relax")
            s.kind = ScenarioKind::relax;
        else if (value == "slab")
            s.kind = ScenarioKind::slab;
        else if (value == "certify")
            s.kind = ScenarioKind::certify;
        else if (value == "linearized")
            s.kind = ScenarioKind::linearized;
        else
            throw InvalidConfig("scenario: unknown kind '" + value + "'");
    } else if (key == "nu") {
        s.nu = parse_double(key, value);
    } else if (key == "sigma") {
        s.sigma.constant = true;
        s.sigma.c = parse_double(key, value);
    } else if (key == "sigma_alpha") {
        s.sigma.constant = false;
        s.sigma.alpha = parse_double(key, value);
    } else if (key == "sigma_beta") {
        s.sigma.constant = false;
        s.sigma.beta = parse_double(key, value);
    } else if (key == "grid_n") {
        s.grid_n = static_cast<int>(parse_int(key, value));
    } else if (key == "vmax") {
        s.vmax = parse_double(key, value);
    } else if (key == "dt") {
        s.dt = parse_double(key, value);
    } else if (key == "t_end") {
        s.t_end = parse_double(key, value);
    } else if (key == "scheme") {
        if (value == "rk4")
            s.scheme = TimeIntegrator::rk4;
        else if (value == "euler")
            s.scheme = TimeIntegrator::euler;
        else
            throw InvalidConfig("scenario: unknown scheme '" + value + "'");
    } else if (key == "output_stride") {
        s.output_stride = static_cast<int>(parse_int(key, value));
    } else if (key == "correction") {
        s.correction = parse_bool(key, value);
    } else if (key == "entropy_floor") {
        s.entropy_floor = parse_bool(key, value);
    } else if (key == "init") {
        if (value == "gaussian")
            s.init = InitKind::gaussian;
        else if (value == "mixture")
            s.init = InitKind::mixture;
        else if (value == "equilibrium")
            s.init = InitKind::equilibrium;
        else
            throw InvalidConfig("scenario: unknown init '" + value + "'");
    } else if (key == "rho0") {
        s.rho0 = parse_double(key, value);
    } else if (key == "u0") {
        s.u0 = parse_vec3(key, value);
    } else if (key == "theta0") {
        s.theta0 = parse_vec3(key, value);
    } else if (key == "count") {
        s.count = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        s.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "tol_scale") {
        s.tol_scale = parse_double(key, value);
    } else if (key == "nx") {
        s.nx = static_cast<int>(parse_int(key, value));
    } else if (key == "length") {
        s.length = parse_double(key, value);
    } else if (key == "format") {
        if (value == "csv")
            s.format = OutputFormat::csv;
        else if (value == "json")
            s.format = OutputFormat::json;
        else
            throw InvalidConfig("scenario: unknown format '" + value + "'");
    } else if (key == "out") {
        s.out = value;
    } else {
        throw InvalidConfig("scenario: unknown key '" + key + "'");
    }
}

} // namespace

Scenario parse_scenario_text(const std::string& text) {
    Scenario s;
    std::istringstream iss(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(iss, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig("scenario: line " + std::to_string(lineno) +
                                " is not key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw InvalidConfig("scenario: line " + std::to_string(lineno) +
                                " has an empty key or value");
        apply(s, key, value);
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidConfig("scenario: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

void Scenario::validate() const {
    if (!nu_in_range(nu))
        throw InvalidConfig("scenario: nu must lie in (-1/2, 1)");
    if (sigma.constant && !(sigma.c > 0.0))
        throw InvalidConfig("scenario: constant sigma must be positive");
    if (grid_n < 2)
        throw InvalidConfig("scenario: grid_n must be at least 2");
    if (vmax < 0.0)
        throw InvalidConfig("scenario: vmax must be nonnegative (0 means automatic)");
    if (!(dt > 0.0))
        throw InvalidConfig("scenario: dt must be positive");
    if (!(t_end >= dt))
        throw InvalidConfig("scenario: t_end must be at least dt");
    if (output_stride < 1)
        throw InvalidConfig("scenario: output_stride must be at least 1");
    if (!(rho0 > 0.0))
        throw InvalidConfig("scenario: rho0 must be positive");
    if (!(theta0.minCoeff() >= 0.0) || !(theta0.sum() > 0.0))
        throw InvalidConfig("scenario: theta0 needs nonnegative entries and positive trace");
    if (count < 1)
        throw InvalidConfig("scenario: count must be at least 1");
    if (!(tol_scale > 0.0))
        throw InvalidConfig("scenario: tol_scale must be positive");
    if (kind == ScenarioKind::slab) {
        if (nx < 2)
            throw InvalidConfig("scenario: nx must be at least 2");
        if (!(length > 0.0))
            throw InvalidConfig("scenario: length must be positive");
    }
}

SolverConfig Scenario::solver_config() const {
    SolverConfig c;
    c.nu = nu;
    c.sigma = sigma;
    c.dt = dt;
    c.t_end = t_end;
    c.scheme = scheme;
    c.output_stride = output_stride;
    c.correction = correction;
    c.entropy_floor = entropy_floor;
    return c;
}

const char* to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::relax:
        return "relax";
    case ScenarioKind::slab:
        return "slab";
    case ScenarioKind::certify:
        return "certify";
    case ScenarioKind::linearized:
        return "linearized";
    }
    return "unknown";
}

} // namespace esbgk
