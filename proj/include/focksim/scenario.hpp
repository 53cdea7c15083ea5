#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "focksim/analysis.hpp"
#include "focksim/fock.hpp"
#include "focksim/herald.hpp"

namespace focksim {

enum class ScenarioKind { single, cascade, ecs_dual, thermal };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& s);

/// Per-mode truncation overrides; defaults derive from the amplitudes.
struct Truncations {
    std::optional<int> signal_dim;
    std::optional<int> idler_dim;
};

inline constexpr int kConfigSchemaVersion = 1;

/// Declarative description of one experiment.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::single;
    Complex alpha{0.0, 0.0};
    Complex beta{0.0, 0.0};    // ecs-dual second amplitude
    double lambda = 0.01;
    int n_amplifiers = 1;      // cascade length (single: fixed 1)
    int upper_n = 2;           // ecs-dual amplifiers per channel
    int lower_n = 1;
    double nbar = 0.0;         // thermal occupation of the input signal
    Truncations truncations;
    std::set<std::string> analyses;  // empty set means the per-kind default
    std::optional<HeraldPattern> herald;
    WignerGridSpec wigner_grid;
    std::optional<int> wigner_target_mode;  // for multimode heralded targets

    int resolved_signal_dim() const;
    int resolved_idler_dim() const;
    std::set<std::string> resolved_analyses() const;
    void validate() const;  // throws ConfigError

    static ScenarioConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;  // canonical echo with defaults resolved
};

/// Deterministic scalar summary of a run; serializes to canonical JSON.
struct ScenarioReport {
    nlohmann::json config_echo;
    std::map<std::string, double> probabilities;
    std::map<std::string, double> references;
    std::map<std::string, double> fidelities;
    std::map<std::string, double> analysis_values;
    std::map<std::string, std::vector<double>> distributions;
    std::map<std::string, double> diagnostics;
    std::map<std::string, bool> flags;

    nlohmann::json to_json() const;
};

/// Build input, evolve, herald, analyze. Deterministic for a fixed config.
ScenarioReport run(const ScenarioConfig& config);

/// One run per value; parameter is one of lambda, alpha, nbar, n_amplifiers.
std::vector<ScenarioReport> sweep(const ScenarioConfig& config, const std::string& parameter,
                                  const std::vector<double>& values);

/// Five-mode ecs-dual input (upper signal, lower signal, upper idlers..., lower
/// idlers...) with both signals carrying the entangled coherent state.
FockVector build_ecs_dual_input(const ScenarioConfig& config);

/// The heralded single-mode target a wigner command operates on, along with the
/// evolved-state machinery shared with run(). Pure kinds return a vector state;
/// thermal returns a density matrix.
struct WignerTarget {
    bool mixed = false;
    FockVector pure;
    DensityMatrix dm;
};
WignerTarget wigner_target(const ScenarioConfig& config);

/// JSON schema of the config document.
nlohmann::json config_schema();

}  // namespace focksim
