#include "focksim/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "focksim/amplifier.hpp"
#include "focksim/states.hpp"
#include "focksim/thermal.hpp"

namespace focksim {

using nlohmann::json;

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::single: return "single";
        case ScenarioKind::cascade: return "cascade";
        case ScenarioKind::ecs_dual: return "ecs-dual";
        case ScenarioKind::thermal: return "thermal";
    }
    throw InvalidArgumentError("unknown scenario kind");
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "single") return ScenarioKind::single;
    if (s == "cascade") return ScenarioKind::cascade;
    if (s == "ecs-dual") return ScenarioKind::ecs_dual;
    if (s == "thermal") return ScenarioKind::thermal;
    throw ConfigError("kind", "unknown scenario kind '" + s + "'");
}

namespace {

const std::set<std::string>& known_analyses() {
    static const std::set<std::string> kKnown{"fidelity-targets", "wigner", "mandel-q", "entropy",
                                              "distribution"};
    return kKnown;
}

std::set<std::string> default_analyses(ScenarioKind kind) {
    if (kind == ScenarioKind::ecs_dual) return {"entropy", "fidelity-targets"};
    return {"distribution", "fidelity-targets", "mandel-q"};
}

}  // namespace

int ScenarioConfig::resolved_signal_dim() const {
    if (truncations.signal_dim) return *truncations.signal_dim;
    double amax = std::abs(alpha);
    if (kind == ScenarioKind::ecs_dual) amax = std::max(amax, std::abs(beta));
    return default_signal_dim(amax);
}

int ScenarioConfig::resolved_idler_dim() const {
    return truncations.idler_dim ? *truncations.idler_dim : kDefaultIdlerDim;
}

std::set<std::string> ScenarioConfig::resolved_analyses() const {
    return analyses.empty() ? default_analyses(kind) : analyses;
}

void ScenarioConfig::validate() const {
    CouplingParams{lambda, kind == ScenarioKind::cascade ? n_amplifiers : 1}.validate();
    if (kind == ScenarioKind::single && n_amplifiers != 1)
        throw InvalidArgumentError("n_amplifiers: kind 'single' is a one-amplifier scenario");
    if (kind == ScenarioKind::ecs_dual && (upper_n < 1 || lower_n < 1))
        throw InvalidArgumentError("upper_n/lower_n: need at least one amplifier per channel");
    if (nbar < 0.0) throw InvalidArgumentError("nbar: must be >= 0");
    const int ds = resolved_signal_dim();
    const int di = resolved_idler_dim();
    if (ds < 2 || di < 2) throw InvalidArgumentError("truncations: dims must be >= 2");

    // keep the joint state at desk scale
    double total = static_cast<double>(ds);
    const int n_idlers = kind == ScenarioKind::ecs_dual ? upper_n + lower_n
                         : kind == ScenarioKind::cascade ? n_amplifiers
                                                         : 1;
    if (kind == ScenarioKind::ecs_dual) total *= ds;
    for (int k = 0; k < n_idlers; ++k) total *= di;
    if (total > static_cast<double>(1L << 22))
        throw InvalidArgumentError(
            "n_amplifiers/truncations: joint state dimension exceeds the 2^22 budget");
    double amax = std::abs(alpha);
    if (kind == ScenarioKind::ecs_dual) amax = std::max(amax, std::abs(beta));
    // one added photon of headroom for the PACS fidelity targets
    if (required_dim(amax) + 1.0 > static_cast<double>(ds))
        throw TruncationError("truncations.signal_dim: " + std::to_string(ds) +
                              " too small for amplitude " + std::to_string(amax));
    for (const auto& a : resolved_analyses())
        if (!known_analyses().count(a))
            throw InvalidArgumentError("analyses: unknown analysis '" + a + "'");
    wigner_grid.validate();
    if (herald) {
        if (kind == ScenarioKind::ecs_dual || kind == ScenarioKind::thermal)
            throw InvalidArgumentError(
                "herald: only configurable for kinds 'single' and 'cascade'");
        const int n_idl = kind == ScenarioKind::single ? 1 : n_amplifiers;
        if (herald->kind == HeraldPattern::Kind::exact_counts &&
            static_cast<int>(herald->counts.size()) != n_idl)
            throw InvalidArgumentError("herald.counts: length must equal the idler count");
        if (herald->kind == HeraldPattern::Kind::coincidence_pair &&
            (herald->pair[0] == herald->pair[1] || herald->pair[0] < 0 || herald->pair[1] < 0 ||
             herald->pair[0] >= n_idl || herald->pair[1] >= n_idl))
            throw InvalidArgumentError("herald.pair: indices must be distinct and in range");
    }
}

namespace {

Complex complex_from_json(const json& j, const std::string& field) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ConfigError(field, "expected a number or a [re, im] pair");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

double number_from_json(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    return j.get<double>();
}

int integer_from_json(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
    return j.get<int>();
}

HeraldPattern herald_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("herald", "expected an object");
    for (const auto& [key, _] : j.items())
        if (key != "kind" && key != "counts" && key != "pair")
            throw ConfigError("herald." + key, "unknown field");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("herald.kind", "expected a string");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "any-single-click") return HeraldPattern::single_click();
    if (kind == "exact-counts") {
        if (!j.contains("counts") || !j["counts"].is_array())
            throw ConfigError("herald.counts", "expected an array of integers");
        std::vector<int> counts;
        for (const auto& c : j["counts"]) counts.push_back(integer_from_json(c, "herald.counts"));
        return HeraldPattern::exact(std::move(counts));
    }
    if (kind == "coincidence-pair") {
        if (!j.contains("pair") || !j["pair"].is_array() || j["pair"].size() != 2)
            throw ConfigError("herald.pair", "expected a pair of idler indices");
        return HeraldPattern::coincidence(integer_from_json(j["pair"][0], "herald.pair"),
                                          integer_from_json(j["pair"][1], "herald.pair"));
    }
    throw ConfigError("herald.kind", "unknown herald kind '" + kind + "'");
}

json herald_to_json(const HeraldPattern& p) {
    json j;
    switch (p.kind) {
        case HeraldPattern::Kind::any_single_click:
            j["kind"] = "any-single-click";
            break;
        case HeraldPattern::Kind::exact_counts:
            j["kind"] = "exact-counts";
            j["counts"] = p.counts;
            break;
        case HeraldPattern::Kind::coincidence_pair:
            j["kind"] = "coincidence-pair";
            j["pair"] = json::array({p.pair[0], p.pair[1]});
            break;
    }
    return j;
}

WignerGridSpec wigner_grid_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("wigner_grid", "expected an object");
    WignerGridSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "x_min") spec.x_min = number_from_json(value, "wigner_grid.x_min");
        else if (key == "x_max") spec.x_max = number_from_json(value, "wigner_grid.x_max");
        else if (key == "p_min") spec.p_min = number_from_json(value, "wigner_grid.p_min");
        else if (key == "p_max") spec.p_max = number_from_json(value, "wigner_grid.p_max");
        else if (key == "resolution") spec.resolution = integer_from_json(value, "wigner_grid.resolution");
        else throw ConfigError("wigner_grid." + key, "unknown field");
    }
    return spec;
}

json wigner_grid_to_json(const WignerGridSpec& spec) {
    return json{{"p_max", spec.p_max},
                {"p_min", spec.p_min},
                {"resolution", spec.resolution},
                {"x_max", spec.x_max},
                {"x_min", spec.x_min}};
}

bool key_allowed(ScenarioKind kind, const std::string& key) {
    static const std::set<std::string> common{"schema_version", "kind",         "alpha",
                                              "lambda",         "truncations",  "analyses",
                                              "wigner_grid",    "wigner_target_mode"};
    if (common.count(key)) return true;
    switch (kind) {
        case ScenarioKind::single:
        case ScenarioKind::cascade:
            return key == "n_amplifiers" || key == "herald";
        case ScenarioKind::ecs_dual:
            return key == "beta" || key == "upper_n" || key == "lower_n";
        case ScenarioKind::thermal:
            return key == "nbar";
    }
    return false;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("kind", "required string field");
    ScenarioConfig cfg;
    cfg.kind = scenario_kind_from_string(j["kind"].get<std::string>());
    for (const auto& [key, _] : j.items())
        if (!key_allowed(cfg.kind, key))
            throw ConfigError(key, "unknown or inapplicable field for kind '" +
                                        to_string(cfg.kind) + "'");
    if (j.contains("schema_version") &&
        integer_from_json(j["schema_version"], "schema_version") != kConfigSchemaVersion)
        throw ConfigError("schema_version", "unsupported schema version");
    if (j.contains("alpha")) cfg.alpha = complex_from_json(j["alpha"], "alpha");
    if (j.contains("beta")) cfg.beta = complex_from_json(j["beta"], "beta");
    if (j.contains("lambda")) cfg.lambda = number_from_json(j["lambda"], "lambda");
    if (j.contains("n_amplifiers"))
        cfg.n_amplifiers = integer_from_json(j["n_amplifiers"], "n_amplifiers");
    if (j.contains("upper_n")) cfg.upper_n = integer_from_json(j["upper_n"], "upper_n");
    if (j.contains("lower_n")) cfg.lower_n = integer_from_json(j["lower_n"], "lower_n");
    if (j.contains("nbar")) cfg.nbar = number_from_json(j["nbar"], "nbar");
    if (j.contains("truncations")) {
        const json& t = j["truncations"];
        if (!t.is_object()) throw ConfigError("truncations", "expected an object");
        for (const auto& [key, value] : t.items()) {
            if (key == "signal_dim")
                cfg.truncations.signal_dim = integer_from_json(value, "truncations.signal_dim");
            else if (key == "idler_dim")
                cfg.truncations.idler_dim = integer_from_json(value, "truncations.idler_dim");
            else
                throw ConfigError("truncations." + key, "unknown field");
        }
    }
    if (j.contains("analyses")) {
        if (!j["analyses"].is_array()) throw ConfigError("analyses", "expected an array");
        for (const auto& a : j["analyses"]) {
            if (!a.is_string()) throw ConfigError("analyses", "entries must be strings");
            const std::string name = a.get<std::string>();
            if (!known_analyses().count(name))
                throw ConfigError("analyses", "unknown analysis '" + name + "'");
            cfg.analyses.insert(name);
        }
    }
    if (j.contains("herald")) cfg.herald = herald_from_json(j["herald"]);
    if (j.contains("wigner_grid")) cfg.wigner_grid = wigner_grid_from_json(j["wigner_grid"]);
    if (j.contains("wigner_target_mode"))
        cfg.wigner_target_mode = integer_from_json(j["wigner_target_mode"], "wigner_target_mode");
    return cfg;
}

json ScenarioConfig::to_json() const {
    json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["kind"] = to_string(kind);
    j["alpha"] = complex_to_json(alpha);
    j["lambda"] = lambda;
    j["truncations"] =
        json{{"idler_dim", resolved_idler_dim()}, {"signal_dim", resolved_signal_dim()}};
    json an = json::array();
    for (const auto& a : resolved_analyses()) an.push_back(a);
    j["analyses"] = an;
    switch (kind) {
        case ScenarioKind::single:
        case ScenarioKind::cascade: {
            j["n_amplifiers"] = kind == ScenarioKind::single ? 1 : n_amplifiers;
            HeraldPattern resolved = herald.value_or(kind == ScenarioKind::single
                                                         ? HeraldPattern::exact({1})
                                                         : HeraldPattern::single_click());
            j["herald"] = herald_to_json(resolved);
            break;
        }
        case ScenarioKind::ecs_dual:
            j["beta"] = complex_to_json(beta);
            j["upper_n"] = upper_n;
            j["lower_n"] = lower_n;
            break;
        case ScenarioKind::thermal:
            j["nbar"] = nbar;
            break;
    }
    if (resolved_analyses().count("wigner")) j["wigner_grid"] = wigner_grid_to_json(wigner_grid);
    if (wigner_target_mode) j["wigner_target_mode"] = *wigner_target_mode;
    return j;
}

json ScenarioReport::to_json() const {
    json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["config"] = config_echo;
    j["probabilities"] = probabilities;
    j["references"] = references;
    j["fidelities"] = fidelities;
    j["analyses"] = analysis_values;
    j["distributions"] = distributions;
    j["diagnostics"] = diagnostics;
    j["flags"] = flags;
    return j;
}

namespace {

struct Evolved {
    FockVector state;
    double leakage;
    double unitarity;
};

Evolved evolve_chain(const ScenarioConfig& cfg) {
    const int ds = cfg.resolved_signal_dim();
    const int di = cfg.resolved_idler_dim();
    const int n = cfg.kind == ScenarioKind::single ? 1 : cfg.n_amplifiers;
    std::vector<FockVector> parts{coherent(ds, cfg.alpha)};
    for (int k = 0; k < n; ++k) parts.push_back(fock_state(di, 0));
    const CascadeLayout layout = CascadeLayout::uniform(ds, n, cfg.lambda, di);
    CascadeResult res = evolve_cascade(tensor(parts), layout);
    const double ur = amplifier_unitary(ds, di, cfg.lambda).unitarity_residual();
    return {std::move(res.state), res.norm_leakage, ur};
}

void add_common_signal_analyses(ScenarioReport& rep, const ScenarioConfig& cfg,
                                const HeraldResult& hr) {
    const auto analyses = cfg.resolved_analyses();
    if (!hr.states_defined) return;
    if (analyses.count("mandel-q")) {
        if (auto q = mandel_q(hr.signal_state))
            rep.analysis_values["mandel_q_heralded_signal"] = *q;
        else
            rep.flags["mandel_q_defined"] = false;
    }
    if (analyses.count("distribution")) {
        const Eigen::VectorXd pn = photon_distribution(hr.signal_state);
        rep.distributions["heralded_signal_pn"] = {pn.data(), pn.data() + pn.size()};
    }
    if (analyses.count("wigner")) {
        const WignerGrid grid = wigner(hr.signal_state, cfg.wigner_grid);
        rep.analysis_values["wigner_origin"] = wigner_at(hr.signal_state, 0.0, 0.0);
        rep.analysis_values["wigner_min"] = grid.minimum();
        rep.analysis_values["wigner_integral"] = grid.integral();
    }
}

ScenarioReport run_single(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    const Evolved ev = evolve_chain(cfg);
    const HeraldPattern pattern = cfg.herald.value_or(HeraldPattern::exact({1}));
    const HeraldResult hr = project(ev.state, pattern);
    rep.probabilities["herald"] = hr.probability;
    rep.references["p_1_1_first_order"] =
        herald_probability_reference(1, 1, cfg.alpha, cfg.lambda);
    rep.flags["herald_states_defined"] = hr.states_defined;
    const auto analyses = cfg.resolved_analyses();
    if (analyses.count("fidelity-targets") && hr.states_defined)
        rep.fidelities["signal_vs_pacs_m1"] =
            fidelity(hr.signal_state, pacs(cfg.resolved_signal_dim(), cfg.alpha, 1));
    if (analyses.count("entropy"))
        rep.analysis_values["entropy_signal_vs_idlers"] = entanglement_entropy(ev.state, {0});
    add_common_signal_analyses(rep, cfg, hr);
    rep.diagnostics["norm_leakage"] = ev.leakage;
    rep.diagnostics["unitarity_residual"] = ev.unitarity;
    return rep;
}

ScenarioReport run_cascade(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    const Evolved ev = evolve_chain(cfg);
    const int n = cfg.n_amplifiers;
    const int ds = cfg.resolved_signal_dim();
    const auto analyses = cfg.resolved_analyses();

    const HeraldResult any1 = click_class(ev.state, 1);
    rep.probabilities["any_single_click"] = any1.probability;
    rep.flags["herald_states_defined"] = any1.states_defined;
    rep.references["p_N_1_first_order"] =
        herald_probability_reference(n, 1, cfg.alpha, cfg.lambda);

    if (cfg.herald) {
        const HeraldResult hr = project(ev.state, *cfg.herald);
        rep.probabilities["herald"] = hr.probability;
        rep.flags["configured_herald_states_defined"] = hr.states_defined;
    }

    std::vector<FockVector> detector_signals;
    for (int k = 0; k < n; ++k) {
        std::vector<int> counts(n, 0);
        counts[k] = 1;
        const HeraldResult hk = project(ev.state, HeraldPattern::exact(counts));
        rep.probabilities["detector_" + std::to_string(k)] = hk.probability;
        if (hk.states_defined) detector_signals.push_back(hk.signal_state);
    }
    if (detector_signals.size() > 1) {
        double min_pair = 1.0;
        for (size_t i = 0; i < detector_signals.size(); ++i)
            for (size_t k = i + 1; k < detector_signals.size(); ++k)
                min_pair = std::min(min_pair, fidelity(detector_signals[i], detector_signals[k]));
        rep.fidelities["which_detector_min_pairwise"] = min_pair;
    }

    if (analyses.count("fidelity-targets") && any1.states_defined) {
        rep.fidelities["signal_vs_pacs_m1"] = fidelity(any1.signal_state, pacs(ds, cfg.alpha, 1));
        const FockVector w_target = n >= 2 ? w_state(n) : fock_state(2, 1);
        rep.fidelities["idlers_vs_w"] =
            fidelity(any1.idler_state, embed_modes(w_target, any1.idler_state.dims));
    }

    if (n >= 2) {
        const HeraldResult two = click_class(ev.state, 2);
        rep.probabilities["double_click_class"] = two.probability;
        rep.references["p_N_2_paper"] = herald_probability_reference(n, 2, cfg.alpha, cfg.lambda);
        rep.references["p_N_2_combinatorial"] =
            herald_probability_combinatorial(n, 2, cfg.alpha, cfg.lambda);
        const HeraldResult pair01 = coincidence_select(ev.state, {0, 1});
        rep.probabilities["coincidence_0_1"] = pair01.probability;
        if (analyses.count("fidelity-targets") && pair01.states_defined)
            rep.fidelities["coincidence_signal_vs_pacs_m2"] =
                fidelity(pair01.signal_state, pacs(ds, cfg.alpha, 2));
        if (n == 3 && analyses.count("fidelity-targets") && two.states_defined)
            rep.fidelities["double_click_idlers_vs_ii3"] =
                fidelity(two.idler_state, embed_modes(ii3_state(), two.idler_state.dims));
    }

    if (analyses.count("entropy"))
        rep.analysis_values["entropy_signal_vs_idlers"] = entanglement_entropy(ev.state, {0});
    add_common_signal_analyses(rep, cfg, any1);
    rep.diagnostics["norm_leakage"] = ev.leakage;
    rep.diagnostics["unitarity_residual"] = ev.unitarity;
    return rep;
}

struct EcsDualEvolved {
    FockVector state;
    double leakage;
    double unitarity;
    HeraldResult upper;
    HeraldResult lower;
};

EcsDualEvolved evolve_ecs_dual(const ScenarioConfig& cfg) {
    const int ds = cfg.resolved_signal_dim();
    const int di = cfg.resolved_idler_dim();
    const int nu = cfg.upper_n;
    const int nl = cfg.lower_n;
    FockVector psi = build_ecs_dual_input(cfg);
    const ModeOperator u = amplifier_unitary(ds, di, cfg.lambda);
    for (int j = 0; j < nu; ++j) psi = apply_two_mode(u, psi, 0, 2 + j);
    for (int j = 0; j < nl; ++j) psi = apply_two_mode(u, psi, 1, 2 + nu + j);
    const double leakage = std::abs(1.0 - psi.amplitudes.squaredNorm());
    if (leakage > tol::norm_leakage)
        throw NormLeakageError("ecs-dual: norm leakage " + std::to_string(leakage) +
                               " exceeds budget");
    psi = psi.normalized();

    const int n_idl = nu + nl;
    std::vector<std::vector<int>> upper_patterns, lower_patterns;
    for (int k = 0; k < nu; ++k) {
        std::vector<int> counts(n_idl, 0);
        counts[k] = 1;
        upper_patterns.push_back(std::move(counts));
    }
    for (int k = 0; k < nl; ++k) {
        std::vector<int> counts(n_idl, 0);
        counts[nu + k] = 1;
        lower_patterns.push_back(std::move(counts));
    }
    EcsDualEvolved out{std::move(psi), leakage, u.unitarity_residual(), {}, {}};
    out.upper = project_class(out.state, 2, upper_patterns);
    out.lower = project_class(out.state, 2, lower_patterns);
    return out;
}

ScenarioReport run_ecs_dual(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    const int ds = cfg.resolved_signal_dim();
    const int di = cfg.resolved_idler_dim();
    const auto analyses = cfg.resolved_analyses();
    EcsDualEvolved ev = evolve_ecs_dual(cfg);

    rep.probabilities["upper_click"] = ev.upper.probability;
    rep.probabilities["lower_click"] = ev.lower.probability;
    rep.references["upper_over_lower_expected"] =
        static_cast<double>(cfg.upper_n) / static_cast<double>(cfg.lower_n);
    if (ev.lower.probability > 0.0)
        rep.analysis_values["upper_over_lower_measured"] =
            ev.upper.probability / ev.lower.probability;
    rep.flags["upper_states_defined"] = ev.upper.states_defined;
    rep.flags["lower_states_defined"] = ev.lower.states_defined;

    if (analyses.count("fidelity-targets")) {
        if (ev.upper.states_defined) {
            rep.fidelities["upper_signals_vs_espacs_upper"] =
                fidelity(ev.upper.signal_state, espacs(ds, cfg.alpha, cfg.beta, EcsChannel::upper));
            const FockVector w_target = cfg.upper_n >= 2 ? w_state(cfg.upper_n) : fock_state(2, 1);
            std::vector<FockVector> target_parts{
                embed_modes(w_target, std::vector<int>(cfg.upper_n, di))};
            for (int k = 0; k < cfg.lower_n; ++k) target_parts.push_back(fock_state(di, 0));
            rep.fidelities["upper_idlers_vs_w"] =
                fidelity(ev.upper.idler_state, tensor(target_parts));
        }
        if (ev.lower.states_defined)
            rep.fidelities["lower_signals_vs_espacs_lower"] =
                fidelity(ev.lower.signal_state, espacs(ds, cfg.alpha, cfg.beta, EcsChannel::lower));
    }
    if (analyses.count("entropy")) {
        if (ev.upper.states_defined)
            rep.analysis_values["entropy_upper_heralded_signals"] =
                entanglement_entropy(ev.upper.signal_state, {0});
        if (ev.lower.states_defined)
            rep.analysis_values["entropy_lower_heralded_signals"] =
                entanglement_entropy(ev.lower.signal_state, {0});
    }
    rep.diagnostics["norm_leakage"] = ev.leakage;
    rep.diagnostics["unitarity_residual"] = ev.unitarity;
    return rep;
}

ScenarioReport run_thermal(const ScenarioConfig& cfg) {
    ScenarioReport rep;
    const int ds = cfg.resolved_signal_dim();
    const int di = cfg.resolved_idler_dim();
    const auto analyses = cfg.resolved_analyses();

    const DensityMatrix rho_in = thermal_coherent_input(ds, cfg.alpha, cfg.nbar);
    DensityMatrix rho_out = evolve_thermal(rho_in, cfg.lambda, di);
    const double trace_leak = std::abs(1.0 - rho_out.trace());
    if (trace_leak > tol::norm_leakage)
        throw NormLeakageError("thermal: trace leakage exceeds budget");
    rho_out = rho_out.normalized();
    const HeraldedMixed her = heralded_thermal_spacs(rho_out);

    rep.probabilities["idler_one_click"] = her.probability;
    rep.references["p_1_1_zero_temperature"] =
        herald_probability_reference(1, 1, cfg.alpha, cfg.lambda);
    const auto [u, v] = bogoliubov_coeffs(cfg.nbar);
    rep.references["bogoliubov_u"] = u;
    rep.references["bogoliubov_u_squared"] = u * u;
    rep.flags["herald_states_defined"] = her.state_defined;

    if (her.state_defined) {
        if (analyses.count("fidelity-targets"))
            rep.fidelities["signal_vs_ideal_pacs_m1"] =
                fidelity(her.signal, pacs(ds, cfg.alpha, 1));
        if (analyses.count("mandel-q")) {
            if (auto q = mandel_q(her.signal))
                rep.analysis_values["mandel_q_heralded_signal"] = *q;
            else
                rep.flags["mandel_q_defined"] = false;
        }
        if (analyses.count("distribution")) {
            const Eigen::VectorXd pn = photon_distribution(her.signal);
            rep.distributions["heralded_signal_pn"] = {pn.data(), pn.data() + pn.size()};
        }
        if (analyses.count("wigner"))
            rep.analysis_values["wigner_origin"] = wigner_at(her.signal, 0.0, 0.0);
    }
    rep.analysis_values["input_mean_photon_number"] = mean_photon_number(rho_in);
    rep.diagnostics["trace_leakage"] = trace_leak;
    rep.diagnostics["hermiticity_residual"] = rho_out.hermiticity_residual();
    rep.diagnostics["unitarity_residual"] =
        amplifier_unitary(ds, di, cfg.lambda).unitarity_residual();
    return rep;
}

}  // namespace

FockVector build_ecs_dual_input(const ScenarioConfig& cfg) {
    const int ds = cfg.resolved_signal_dim();
    const int di = cfg.resolved_idler_dim();
    std::vector<FockVector> parts{ecs(ds, cfg.alpha, cfg.beta)};
    for (int k = 0; k < cfg.upper_n + cfg.lower_n; ++k) parts.push_back(fock_state(di, 0));
    return tensor(parts);
}

ScenarioReport run(const ScenarioConfig& cfg) {
    cfg.validate();
    ScenarioReport rep;
    switch (cfg.kind) {
        case ScenarioKind::single: rep = run_single(cfg); break;
        case ScenarioKind::cascade: rep = run_cascade(cfg); break;
        case ScenarioKind::ecs_dual: rep = run_ecs_dual(cfg); break;
        case ScenarioKind::thermal: rep = run_thermal(cfg); break;
    }
    rep.config_echo = cfg.to_json();
    return rep;
}

std::vector<ScenarioReport> sweep(const ScenarioConfig& config, const std::string& parameter,
                                  const std::vector<double>& values) {
    if (parameter != "lambda" && parameter != "alpha" && parameter != "nbar" &&
        parameter != "n_amplifiers")
        throw ConfigError("param",
                          "unknown sweep parameter '" + parameter +
                              "' (expected lambda, alpha, nbar or n_amplifiers)");
    if (values.empty()) throw ConfigError("values", "sweep needs at least one value");
    std::vector<ScenarioReport> reports;
    reports.reserve(values.size());
    for (double v : values) {
        ScenarioConfig cfg = config;
        if (parameter == "lambda") {
            cfg.lambda = v;
        } else if (parameter == "alpha") {
            cfg.alpha = Complex(v, 0.0);
        } else if (parameter == "nbar") {
            cfg.nbar = v;
        } else {
            if (v != std::floor(v) || v < 1.0)
                throw ConfigError("values", "n_amplifiers values must be positive integers");
            cfg.n_amplifiers = static_cast<int>(v);
        }
        reports.push_back(run(cfg));
    }
    return reports;
}

WignerTarget wigner_target(const ScenarioConfig& cfg) {
    cfg.validate();
    WignerTarget target;
    switch (cfg.kind) {
        case ScenarioKind::single:
        case ScenarioKind::cascade: {
            const Evolved ev = evolve_chain(cfg);
            const HeraldPattern pattern =
                cfg.herald.value_or(cfg.kind == ScenarioKind::single
                                        ? HeraldPattern::exact({1})
                                        : HeraldPattern::single_click());
            const HeraldResult hr = project(ev.state, pattern);
            if (!hr.states_defined)
                throw InvalidArgumentError("wigner target: herald has zero probability");
            target.pure = hr.signal_state;
            return target;
        }
        case ScenarioKind::ecs_dual: {
            EcsDualEvolved ev = evolve_ecs_dual(cfg);
            if (!ev.upper.states_defined)
                throw InvalidArgumentError("wigner target: herald has zero probability");
            if (!cfg.wigner_target_mode)
                throw ShapeError(
                    "wigner target: two-signal state needs wigner_target_mode (0 or 1)");
            const int mode = *cfg.wigner_target_mode;
            if (mode < 0 || mode > 1)
                throw InvalidArgumentError("wigner_target_mode: must be 0 or 1");
            target.mixed = true;
            target.dm = partial_trace(ev.upper.signal_state, {mode});
            return target;
        }
        case ScenarioKind::thermal: {
            const DensityMatrix rho_in =
                thermal_coherent_input(cfg.resolved_signal_dim(), cfg.alpha, cfg.nbar);
            const DensityMatrix rho_out =
                evolve_thermal(rho_in, cfg.lambda, cfg.resolved_idler_dim());
            const HeraldedMixed her = heralded_thermal_spacs(rho_out.normalized());
            if (!her.state_defined)
                throw InvalidArgumentError("wigner target: herald has zero probability");
            target.mixed = true;
            target.dm = her.signal;
            return target;
        }
    }
    throw InvalidArgumentError("unknown scenario kind");
}

json config_schema() {
    json pattern_schema = {
        {"type", "object"},
        {"properties",
         {{"kind",
           {{"enum", json::array({"exact-counts", "any-single-click", "coincidence-pair"})}}},
          {"counts", {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 0}}}}},
          {"pair",
           {{"type", "array"},
            {"items", {{"type", "integer"}, {"minimum", 0}}},
            {"minItems", 2},
            {"maxItems", 2}}}}},
        {"required", json::array({"kind"})}};
    json complex_schema = {
        {"oneOf", json::array({json{{"type", "number"}},
                               json{{"type", "array"},
                                    {"items", {{"type", "number"}}},
                                    {"minItems", 2},
                                    {"maxItems", 2}}})}};
    json schema = {
        {"$schema", "http://json-schema.org/draft-07/schema#"},
        {"title", "focksim scenario config"},
        {"type", "object"},
        {"required", json::array({"kind"})},
        {"additionalProperties", false},
        {"properties",
         {{"schema_version", {{"const", kConfigSchemaVersion}}},
          {"kind", {{"enum", json::array({"single", "cascade", "ecs-dual", "thermal"})}}},
          {"alpha", complex_schema},
          {"beta", complex_schema},
          {"lambda", {{"type", "number"}, {"minimum", 0.0}, {"exclusiveMaximum", 0.5}}},
          {"n_amplifiers", {{"type", "integer"}, {"minimum", 1}}},
          {"upper_n", {{"type", "integer"}, {"minimum", 1}}},
          {"lower_n", {{"type", "integer"}, {"minimum", 1}}},
          {"nbar", {{"type", "number"}, {"minimum", 0.0}}},
          {"truncations",
           {{"type", "object"},
            {"additionalProperties", false},
            {"properties",
             {{"signal_dim", {{"type", "integer"}, {"minimum", 2}}},
              {"idler_dim", {{"type", "integer"}, {"minimum", 2}}}}}}},
          {"analyses",
           {{"type", "array"},
            {"items",
             {{"enum", json::array({"fidelity-targets", "wigner", "mandel-q", "entropy",
                                    "distribution"})}}}}},
          {"herald", pattern_schema},
          {"wigner_grid",
           {{"type", "object"},
            {"additionalProperties", false},
            {"properties",
             {{"x_min", {{"type", "number"}}},
              {"x_max", {{"type", "number"}}},
              {"p_min", {{"type", "number"}}},
              {"p_max", {{"type", "number"}}},
              {"resolution", {{"type", "integer"}, {"minimum", 1}}}}}}},
          {"wigner_target_mode", {{"type", "integer"}, {"minimum", 0}}}}},
        {"description",
         "Declarative description of one parametric-amplifier experiment: input state, "
         "chain geometry, coupling, truncations, herald pattern and requested analyses. "
         "Kind-specific fields: n_amplifiers and herald (single/cascade), beta, upper_n, "
         "lower_n (ecs-dual), nbar (thermal)."}};
    return schema;
}

}  // namespace focksim
