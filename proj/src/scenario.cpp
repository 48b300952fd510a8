#include "seirkit/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seirkit {

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::SeirModified: return "seir-modified";
        case ModelKind::SeirClassical: return "seir-classical";
        default: return "backward4";
    }
}

namespace {

struct RawEntry {
    std::string value;
    int line;
};

using Section = std::map<std::string, RawEntry>;

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const RawEntry& entry, const std::string& key) {
    const char* begin = entry.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw ScenarioError(entry.line, "value of '" + key + "' is not a finite number");
    return v;
}

const std::vector<std::string>& required_params(ModelKind model) {
    static const std::vector<std::string> modified{"tau", "mu", "beta", "epsilon", "gamma"};
    static const std::vector<std::string> classical{"beta", "epsilon", "gamma", "n"};
    static const std::vector<std::string> backward{"beta1", "beta2", "epsilon", "phi",
                                                   "sigma", "gamma", "delta", "alpha"};
    switch (model) {
        case ModelKind::SeirModified: return modified;
        case ModelKind::SeirClassical: return classical;
        default: return backward;
    }
}

std::vector<std::string> initial_keys(ModelKind model) {
    if (model == ModelKind::Backward4) return {"x1", "x2", "x3", "x4"};
    return {"s", "e", "i", "r"};
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;

    std::istringstream stream(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ScenarioError(lineno, "malformed section header '" + body + "'");
            current = trim(body.substr(1, body.size() - 2));
            static const char* known[] = {"model", "params", "initial", "step", "outputs"};
            if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
                    return current == k;
                }) == std::end(known))
                throw ScenarioError(lineno, "unknown section '" + current + "'");
            if (sections.count(current))
                throw ScenarioError(lineno, "duplicate section '" + current + "'");
            sections[current] = {};
            section_lines[current] = lineno;
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ScenarioError(lineno, "expected 'key = value', got '" + body + "'");
        if (current.empty())
            throw ScenarioError(lineno, "'key = value' before any [section] header");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ScenarioError(lineno, "empty key or value");
        Section& section = sections[current];
        if (section.count(key))
            throw ScenarioError(lineno, "duplicate key '" + key + "' in [" + current + "]");
        section[key] = {value, lineno};
    }

    if (!sections.count("model")) throw ScenarioError(0, "missing [model] section");
    Section& model_section = sections["model"];
    for (const auto& [key, entry] : model_section)
        if (key != "name")
            throw ScenarioError(entry.line, "unknown key '" + key + "' in [model]");
    if (!model_section.count("name"))
        throw ScenarioError(section_lines["model"], "missing 'name' in [model]");

    Scenario scenario;
    const RawEntry& name = model_section["name"];
    if (name.value == "seir-modified") scenario.model = ModelKind::SeirModified;
    else if (name.value == "seir-classical") scenario.model = ModelKind::SeirClassical;
    else if (name.value == "backward4") scenario.model = ModelKind::Backward4;
    else throw ScenarioError(name.line, "unknown model '" + name.value + "'");

    if (!sections.count("params")) throw ScenarioError(0, "missing [params] section");
    Section& params = sections["params"];
    const std::vector<std::string>& required = required_params(scenario.model);
    for (const auto& [key, entry] : params) {
        if (std::find(required.begin(), required.end(), key) == required.end())
            throw ScenarioError(entry.line, "unknown key '" + key + "' in [params] for model " +
                                                std::string(to_string(scenario.model)));
        const double v = parse_number(entry, key);
        if (!(v > 0.0))
            throw ScenarioError(entry.line, "parameter '" + key + "' must be positive");
        scenario.parameters[key] = v;
    }
    for (const std::string& key : required)
        if (!scenario.parameters.count(key))
            throw ScenarioError(section_lines["params"],
                                "missing required parameter '" + key + "'");

    if (sections.count("initial")) {
        Section& initial = sections["initial"];
        const std::vector<std::string> keys = initial_keys(scenario.model);
        StateVector state(keys.size(), 0.0);
        for (const auto& [key, entry] : initial) {
            const auto it = std::find(keys.begin(), keys.end(), key);
            if (it == keys.end())
                throw ScenarioError(entry.line, "unknown key '" + key + "' in [initial]");
            const double v = parse_number(entry, key);
            if (v < 0.0)
                throw ScenarioError(entry.line, "initial '" + key + "' must be nonnegative");
            state[static_cast<std::size_t>(it - keys.begin())] = v;
        }
        for (const std::string& key : keys)
            if (!initial.count(key))
                throw ScenarioError(section_lines["initial"],
                                    "missing initial value '" + key + "'");
        scenario.initial_state = state;
    }

    if (sections.count("step")) {
        Section& step = sections["step"];
        for (const auto& [key, entry] : step)
            if (key != "dt" && key != "t_start" && key != "t_end")
                throw ScenarioError(entry.line, "unknown key '" + key + "' in [step]");
        for (const char* key : {"dt", "t_start", "t_end"})
            if (!step.count(key))
                throw ScenarioError(section_lines["step"],
                                    std::string("missing step value '") + key + "'");
        try {
            scenario.step = StepConfig(parse_number(step["dt"], "dt"),
                                       parse_number(step["t_start"], "t_start"),
                                       parse_number(step["t_end"], "t_end"));
        } catch (const std::invalid_argument& e) {
            throw ScenarioError(section_lines["step"], e.what());
        }
    }

    if (sections.count("outputs")) {
        for (const auto& [key, entry] : sections["outputs"]) {
            if (key != "trajectory" && key != "diagram" && key != "report")
                throw ScenarioError(entry.line, "unknown key '" + key + "' in [outputs]");
            scenario.outputs[key] = entry.value;
        }
    }

    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(0, "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

ModifiedSeirParams Scenario::modified_params() const {
    if (model != ModelKind::SeirModified)
        throw ScenarioError(0, "this command needs a seir-modified scenario, got " +
                                   std::string(to_string(model)));
    return {parameters.at("tau"), parameters.at("mu"), parameters.at("beta"),
            parameters.at("epsilon"), parameters.at("gamma")};
}

ClassicalSeirParams Scenario::classical_params() const {
    if (model != ModelKind::SeirClassical)
        throw ScenarioError(0, "this command needs a seir-classical scenario, got " +
                                   std::string(to_string(model)));
    return {parameters.at("beta"), parameters.at("epsilon"), parameters.at("gamma"),
            parameters.at("n")};
}

BackwardModelParams Scenario::backward_params() const {
    if (model != ModelKind::Backward4)
        throw ScenarioError(0, "this command needs a backward4 scenario, got " +
                                   std::string(to_string(model)));
    return {parameters.at("beta1"), parameters.at("beta2"), parameters.at("epsilon"),
            parameters.at("phi"),   parameters.at("sigma"), parameters.at("gamma"),
            parameters.at("delta"), parameters.at("alpha")};
}

DynamicalSystem Scenario::make_system() const {
    switch (model) {
        case ModelKind::SeirModified: return make_modified_seir_system(modified_params());
        case ModelKind::SeirClassical: return make_classical_seir_system(classical_params());
        default: return make_backward_model_system(backward_params());
    }
}

std::vector<std::string> Scenario::state_names() const {
    if (model == ModelKind::Backward4) return {"x1", "x2", "x3", "x4"};
    return {"S", "E", "I", "R"};
}

const StateVector& Scenario::require_initial() const {
    if (!initial_state)
        throw ScenarioError(0, "scenario is missing the [initial] section this command needs");
    return *initial_state;
}

const StepConfig& Scenario::require_step() const {
    if (!step)
        throw ScenarioError(0, "scenario is missing the [step] section this command needs");
    return *step;
}

} // namespace seirkit
