#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "maslovkit/scenarios.hpp"
#include "maslovkit/verify.hpp"

namespace maslov {

/// Lagrangian loop payload (bases only, no frames).
struct LagrangianLoopScenario {
    SymplecticSpace space;
    std::vector<double> grid;
    std::vector<Mat> bases;
};

struct PlanarScenario {
    std::vector<SymplecticPath> boundaries;
};

/// Parsed scenario file: one of the supported kinds plus bookkeeping.
struct ScenarioFile {
    std::string kind;
    std::string id;
    int dimension = 0;
    std::uint64_t seed = 0;
    Tolerances tol{};
    std::variant<DiskScenario, GroupActionScenario, ClutchingScenario, PlanarScenario,
                 LagrangianLoopScenario>
        payload;
};

struct ResultRecord {
    std::string id;
    std::string kind;
    double value = 0.0;
    bool is_integer = false;
    long rounded = 0;
    std::vector<std::string> warnings;
    double timing_ms = 0.0;
    Tolerances tol{};
    std::optional<double> area;
    std::optional<double> ratio;
};

nlohmann::json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const nlohmann::json& j, Tolerances base);

ScenarioFile parse_scenario(const nlohmann::json& j,
                            const Tolerances& base_tol = default_tolerances());
ScenarioFile load_scenario(const std::string& path,
                           const Tolerances& base_tol = default_tolerances());
nlohmann::json scenario_to_json(const ScenarioFile& s);

/// Evaluates the scenario; fills value, integer flag, warnings and timing.
ResultRecord compute_scenario(const ScenarioFile& s);
nlohmann::json record_to_json(const ResultRecord& r);

/// Built-in generators for `generate <kind>`.
ScenarioFile generate_scenario(const std::string& kind, int n, int k, int samples,
                               std::uint64_t seed,
                               const Tolerances& tol = default_tolerances());

nlohmann::json verify_report(const std::vector<PropertyResult>& results,
                             const VerifyConfig& cfg);

} // namespace maslov
