#pragma once

#include <optional>
#include <ostream>

#include "mbcsim/engine.hpp"
#include "mbcsim/io.hpp"

namespace mbcsim {

// Declarative reviewer behavior, written in 1-based merit indices exactly as
// scenario files spell it.
struct BehaviorSpec {
    double noise_sigma = 0.0;                     // every reviewer
    std::vector<std::pair<int, double>> noisy;    // (PI, sigma) overrides
    std::vector<int> reverse;                     // reverse-ranking PIs
    std::vector<std::pair<int, int>> one_sided;   // (reviewer, ally)
    std::vector<std::pair<int, int>> reciprocal;  // mutual pairs
    std::vector<int> controversial;               // proposals
    double controversy_delta_mu = 0.0;
    double controversy_sigma = 0.0;
    double controversy_plus_probability = 0.5;
    std::optional<bool> bonus;  // per-leg override of the bonus switch

    BehaviorProfile build(const GroupConfig& cfg) const;
};

enum class ExperimentKind { funding, delta, accuracy };

struct Scenario {
    std::string name = "scenario";
    GroupConfig cfg;
    uint64_t replications = 100000;
    int workers = 0;
    ExperimentKind kind = ExperimentKind::funding;
    bool paired = true;
    bool also_unpaired = false;  // additionally report the unpaired delta
    std::optional<std::pair<int, int>> condition;  // (reviewer PI, reviewed proposal)
    BehaviorSpec behavior;       // funding experiments
    BehaviorSpec base, variant;  // delta experiments
    std::vector<int> m_values;   // accuracy experiments
};

// Parses and validates a scenario document; unknown keys are rejected.
// Throws ParseError on malformed input, ValidationError on constraint
// violations.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

struct Preset {
    std::string name;
    std::string description;
    std::vector<Scenario> parts;
    bool accuracy_schema = false;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

struct RunOverrides {
    std::optional<int> n, m, workers;
    std::optional<double> rate, p;
    std::optional<uint64_t> replications, seed;
    std::optional<bool> bonus, paired;
};

struct RunOutputs {
    std::string csv_path;
    std::string meta_path;
};

// Runs every part, writes <out_dir>/<name>.csv plus a .meta.json sidecar
// recording the full configuration, and prints one summary line per
// scenario to `log`.
RunOutputs run_preset(const Preset& preset, const RunOverrides& overrides,
                      const std::string& out_dir, std::ostream& log);
RunOutputs run_scenario_file(const std::string& path, const RunOverrides& overrides,
                             const std::string& out_dir, std::ostream& log);

}  // namespace mbcsim
