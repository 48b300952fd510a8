#ifndef SEIRKIT_CLI_HPP
#define SEIRKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace seirkit {

// Dispatches one subcommand (simulate, r0, equilibria, stability, lyapunov,
// sensitivity, bifurcate, center-manifold). args excludes the program name.
// Returns 0 on success, 1 on validation problems, 2 on numerical failure.
// All output is deterministic for a fixed scenario and seed.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace seirkit

#endif
