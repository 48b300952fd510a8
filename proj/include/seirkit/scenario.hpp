#ifndef SEIRKIT_SCENARIO_HPP
#define SEIRKIT_SCENARIO_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seirkit/integrate.hpp"
#include "seirkit/model.hpp"

namespace seirkit {

enum class ModelKind { SeirModified, SeirClassical, Backward4 };

const char* to_string(ModelKind kind);

// Parsed and validated scenario file. The parameter map holds exactly the
// keys the chosen model requires; initial state and step are optional at
// parse time and demanded by the commands that need them.
struct Scenario {
    ModelKind model = ModelKind::SeirModified;
    std::map<std::string, double> parameters;
    std::optional<StateVector> initial_state;
    std::optional<StepConfig> step;
    std::map<std::string, std::string> outputs; // requested artifacts, e.g. trajectory=path

    ModifiedSeirParams modified_params() const;
    ClassicalSeirParams classical_params() const;
    BackwardModelParams backward_params() const;
    DynamicalSystem make_system() const;
    std::vector<std::string> state_names() const; // column labels, state order

    const StateVector& require_initial() const;
    const StepConfig& require_step() const;
};

// Scenario file problem, carrying the 1-based line it was found on
// (0 when the problem is the absence of something).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Line-oriented "[section]" / "key = value" format with sections model,
// params, initial, step and optional outputs. '#' starts a comment. Unknown
// sections, unknown keys, malformed numbers, and invalid values are all
// rejected with the offending line number.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario_file(const std::string& path);

} // namespace seirkit

#endif
