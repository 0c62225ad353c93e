#pragma once

#include "esbgk/scenario.hpp"

namespace esbgk {

int cmd_relax(const Scenario& s);
int cmd_slab(const Scenario& s);
int cmd_certify(const Scenario& s);
int cmd_linearized(const Scenario& s);

// validate + dispatch on kind; exceptions propagate
int run_scenario(const Scenario& s);

// exceptions mapped to process exit codes: bad configuration 2, runtime
// breakdown (lost realizability, negative support, no convergence) 3
int run_scenario_guarded(const Scenario& s);

} // namespace esbgk
