#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "focksim/amplifier.hpp"
#include "focksim/analysis.hpp"
#include "focksim/canonical_json.hpp"
#include "focksim/scenario.hpp"
#include "focksim/states.hpp"

using namespace focksim;
using nlohmann::json;

namespace {

ScenarioConfig make_config(ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.kind = kind;
    cfg.alpha = Complex(1.0, 0.0);
    cfg.beta = Complex(1.0, 0.0);
    cfg.lambda = 0.01;
    if (kind == ScenarioKind::cascade) cfg.n_amplifiers = 3;
    if (kind == ScenarioKind::thermal) cfg.nbar = 0.1;
    return cfg;
}

}  // namespace

TEST_CASE("reports are deterministic") {
    for (ScenarioKind kind : {ScenarioKind::single, ScenarioKind::cascade, ScenarioKind::ecs_dual,
                              ScenarioKind::thermal}) {
        const ScenarioConfig cfg = make_config(kind);
        const std::string a = canonical_dump(run(cfg).to_json());
        const std::string b = canonical_dump(run(cfg).to_json());
        CHECK(a == b);
    }
}

TEST_CASE("config round-trip is canonical") {
    for (ScenarioKind kind : {ScenarioKind::single, ScenarioKind::cascade, ScenarioKind::ecs_dual,
                              ScenarioKind::thermal}) {
        const ScenarioConfig cfg = make_config(kind);
        const json echo = cfg.to_json();
        const json twice = ScenarioConfig::from_json(echo).to_json();
        CHECK(canonical_dump(echo) == canonical_dump(twice));
    }
}

TEST_CASE("single-amplifier report") {
    const ScenarioReport rep = run(make_config(ScenarioKind::single));
    CHECK(rep.probabilities.at("herald") == doctest::Approx(2e-4).epsilon(1e-3));
    CHECK(rep.fidelities.at("signal_vs_pacs_m1") >= 0.9999);
    CHECK(rep.diagnostics.at("norm_leakage") <= 1e-6);
    CHECK(rep.diagnostics.at("unitarity_residual") <= 1e-8);
    CHECK(rep.flags.at("herald_states_defined"));
    CHECK(rep.analysis_values.at("mandel_q_heralded_signal") < 0.0);
    CHECK(rep.distributions.at("heralded_signal_pn")[0] <= 1e-12);
}

TEST_CASE("cascade report shows the N-fold enhancement") {
    const ScenarioReport single = run(make_config(ScenarioKind::single));
    const ScenarioReport rep = run(make_config(ScenarioKind::cascade));
    CHECK(rep.probabilities.at("any_single_click") /
              (3.0 * single.probabilities.at("herald")) ==
          doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.fidelities.at("idlers_vs_w") >= 0.9999);
    CHECK(rep.fidelities.at("which_detector_min_pairwise") >= 0.9999);
    CHECK(rep.fidelities.at("coincidence_signal_vs_pacs_m2") >= 0.999);
    CHECK(rep.fidelities.at("double_click_idlers_vs_ii3") >= 0.999);
    CHECK(rep.references.at("p_N_1_first_order") == doctest::Approx(6e-4).epsilon(1e-12));
}

TEST_CASE("ecs-dual report") {
    const ScenarioReport rep = run(make_config(ScenarioKind::ecs_dual));
    CHECK(rep.fidelities.at("upper_signals_vs_espacs_upper") >= 0.999);
    CHECK(rep.fidelities.at("lower_signals_vs_espacs_lower") >= 0.999);
    CHECK(rep.fidelities.at("upper_idlers_vs_w") >= 0.999);

    // branch non-orthogonality reweights the channels: the measured ratio
    // follows 2(2 - e^-2)/(2 + e^-2) at alpha = beta = 1 ...
    const double predicted = 2.0 * (2.0 - std::exp(-2.0)) / (2.0 + std::exp(-2.0));
    CHECK(rep.analysis_values.at("upper_over_lower_measured") ==
          doctest::Approx(predicted).epsilon(1e-3));

    // ... and approaches the channel-count ratio once the branches are
    // effectively orthogonal
    ScenarioConfig big = make_config(ScenarioKind::ecs_dual);
    big.alpha = big.beta = Complex(2.0, 0.0);
    const ScenarioReport rep2 = run(big);
    CHECK(rep2.analysis_values.at("upper_over_lower_measured") ==
          doctest::Approx(2.0).epsilon(1e-2));

    // entanglement of the heralded two-signal state
    CHECK(rep.analysis_values.at("entropy_upper_heralded_signals") > 0.0);
}

TEST_CASE("ecs-dual heralded sector factorizes") {
    const ScenarioConfig cfg = make_config(ScenarioKind::ecs_dual);
    const int ds = cfg.resolved_signal_dim();
    const int di = cfg.resolved_idler_dim();
    FockVector psi = build_ecs_dual_input(cfg);
    const ModeOperator u = amplifier_unitary(ds, di, cfg.lambda);
    psi = apply_two_mode(u, psi, 0, 2);
    psi = apply_two_mode(u, psi, 0, 3);
    psi = apply_two_mode(u, psi, 1, 4);

    // project onto the upper single-click sector by hand
    Vec sector = Vec::Zero(psi.size());
    const long idler_size = di * di * di;
    const long off100 = 1L * di * di;
    const long off010 = 1L * di;
    for (long s = 0; s < ds * ds; ++s) {
        sector(s * idler_size + off100) = psi.amplitudes(s * idler_size + off100);
        sector(s * idler_size + off010) = psi.amplitudes(s * idler_size + off010);
    }
    const FockVector joint(psi.dims, sector / sector.norm());

    const HeraldResult upper = project_class(psi, 2, {{1, 0, 0}, {0, 1, 0}});
    const FockVector factorized = tensor({upper.signal_state, upper.idler_state});
    CHECK(fidelity(joint, factorized) >= 1.0 - 10.0 * cfg.lambda * cfg.lambda);
}

TEST_CASE("ecs-dual supports other channel geometries") {
    ScenarioConfig cfg = make_config(ScenarioKind::ecs_dual);
    cfg.upper_n = 1;
    cfg.lower_n = 1;
    const ScenarioReport rep = run(cfg);
    CHECK(rep.references.at("upper_over_lower_expected") == 1.0);
    CHECK(rep.fidelities.at("upper_signals_vs_espacs_upper") >= 0.999);
    CHECK(rep.fidelities.at("upper_idlers_vs_w") >= 0.999);
}

TEST_CASE("build_ecs_dual_input") {
    ScenarioConfig cfg = make_config(ScenarioKind::ecs_dual);
    const FockVector input = build_ecs_dual_input(cfg);
    CHECK(input.is_normalized(1e-8));
    CHECK(input.dims == std::vector<int>{21, 21, 4, 4, 4});
    // with idlers in vacuum the two-signal reduction is the ECS itself
    const HeraldResult vacuum_sector = project_class(input, 2, {{0, 0, 0}});
    CHECK(fidelity(vacuum_sector.signal_state, ecs(21, cfg.alpha, cfg.beta)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    cfg.alpha = cfg.beta = Complex(0.0, 0.0);
    cfg.truncations.signal_dim = 12;
    const FockVector vac = build_ecs_dual_input(cfg);
    CHECK(std::abs(vac.amplitudes(0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("thermal report") {
    const ScenarioReport rep = run(make_config(ScenarioKind::thermal));
    CHECK(rep.probabilities.at("idler_one_click") > 2e-4);  // amplified above the cold value
    CHECK(rep.fidelities.at("signal_vs_ideal_pacs_m1") < 1.0);
    CHECK(rep.references.at("bogoliubov_u") == doctest::Approx(std::sqrt(1.1)).epsilon(1e-12));
    CHECK(rep.analysis_values.at("input_mean_photon_number") ==
          doctest::Approx(1.1).epsilon(1e-6));
}

TEST_CASE("lambda sweep scales as the coupling squared") {
    ScenarioConfig cfg = make_config(ScenarioKind::single);
    const auto reports = sweep(cfg, "lambda", {0.02, 0.01, 0.005});
    const double p0 = reports[0].probabilities.at("herald");
    const double p1 = reports[1].probabilities.at("herald");
    const double p2 = reports[2].probabilities.at("herald");
    CHECK(p0 / p1 == doctest::Approx(4.0).epsilon(0.01));
    CHECK(p1 / p2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("amplifier-count sweep scales linearly") {
    ScenarioConfig cfg = make_config(ScenarioKind::cascade);
    const auto reports = sweep(cfg, "n_amplifiers", {1.0, 2.0, 3.0, 4.0});
    const double p1 = reports[0].probabilities.at("any_single_click");
    for (int n = 2; n <= 4; ++n)
        CHECK(reports[n - 1].probabilities.at("any_single_click") / (n * p1) ==
              doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("alpha sweep follows the 1 + |alpha|^2 law") {
    ScenarioConfig cfg = make_config(ScenarioKind::single);
    cfg.truncations.signal_dim = 33;  // one truncation for every swept amplitude
    const auto reports = sweep(cfg, "alpha", {0.0, 1.0, 2.0});
    const double p0 = reports[0].probabilities.at("herald");
    CHECK(reports[1].probabilities.at("herald") / p0 == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(reports[2].probabilities.at("herald") / p0 == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("canonical json rendering") {
    const json doc{{"zeta", 1.0}, {"alpha", json::array({0.5, json{{"k", true}}})},
                   {"count", 3}, {"name", "x"}};
    const std::string text = canonical_dump(doc);
    // keys sorted, floats in fixed 17-significant-digit lowercase-exponent form
    CHECK(text.find("\"alpha\"") < text.find("\"count\""));
    CHECK(text.find("\"count\"") < text.find("\"name\""));
    CHECK(text.find("\"name\"") < text.find("\"zeta\""));
    CHECK(text.find("1.0000000000000000e+00") != std::string::npos);
    CHECK(text.find("5.0000000000000000e-01") != std::string::npos);
    CHECK(text.find("\"count\": 3") != std::string::npos);
    CHECK(text.find("E+") == std::string::npos);
    CHECK(canonical_dump(doc) == canonical_dump(doc));

    CHECK(canonical_double(-0.0) == "-0.0000000000000000e+00");
    CHECK_THROWS_AS(canonical_dump(json{{"bad", std::nan("")}}), InvalidArgumentError);
    CHECK(canonical_dump(json::object()) == "{}\n");
    CHECK(canonical_dump(json::array()) == "[]\n");
}

TEST_CASE("nbar sweep is strictly increasing") {
    ScenarioConfig cfg = make_config(ScenarioKind::thermal);
    const auto reports = sweep(cfg, "nbar", {0.0, 0.1, 0.2});
    CHECK(reports[0].probabilities.at("idler_one_click") <
          reports[1].probabilities.at("idler_one_click"));
    CHECK(reports[1].probabilities.at("idler_one_click") <
          reports[2].probabilities.at("idler_one_click"));
}

TEST_CASE("sweep validation") {
    ScenarioConfig cfg = make_config(ScenarioKind::single);
    CHECK_THROWS_AS(sweep(cfg, "frequency", {1.0}), ConfigError);
    CHECK_THROWS_AS(sweep(cfg, "lambda", {}), ConfigError);
    ScenarioConfig cascade_cfg = make_config(ScenarioKind::cascade);
    CHECK_THROWS_AS(sweep(cascade_cfg, "n_amplifiers", {1.5}), ConfigError);
}

TEST_CASE("zero coupling produces flagged empty heralds") {
    ScenarioConfig cfg = make_config(ScenarioKind::single);
    cfg.lambda = 0.0;
    const ScenarioReport rep = run(cfg);
    CHECK(rep.probabilities.at("herald") == 0.0);
    CHECK_FALSE(rep.flags.at("herald_states_defined"));
    CHECK(rep.fidelities.count("signal_vs_pacs_m1") == 0);
}

TEST_CASE("config parsing errors name the offending field") {
    CHECK_THROWS_AS(ScenarioConfig::from_json(json::parse("[]")), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json(json{{"alpha", 1.0}}), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json(json{{"kind", "exotic"}}), ConfigError);

    try {
        ScenarioConfig::from_json(json{{"kind", "single"}, {"alpa", 1.0}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "alpa");
    }
    try {
        ScenarioConfig::from_json(json{{"kind", "single"}, {"nbar", 0.1}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "nbar");  // thermal-only field rejected for kind single
    }
    try {
        ScenarioConfig::from_json(json{{"kind", "single"}, {"alpha", "one"}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "alpha");
    }
    CHECK_THROWS_AS(
        ScenarioConfig::from_json(json{{"kind", "single"}, {"analyses", json::array({"spin"})}}),
        ConfigError);
    CHECK_THROWS_AS(
        ScenarioConfig::from_json(json{{"kind", "single"}, {"schema_version", 2}}),
        ConfigError);
}

TEST_CASE("guard violations surface as guard errors, not config errors") {
    ScenarioConfig cfg = make_config(ScenarioKind::single);
    cfg.lambda = 0.7;
    CHECK_THROWS_AS(run(cfg), InvalidArgumentError);
    cfg = make_config(ScenarioKind::single);
    cfg.truncations.signal_dim = 10;
    CHECK_THROWS_AS(run(cfg), TruncationError);
    cfg = make_config(ScenarioKind::single);
    cfg.herald = HeraldPattern::exact({1, 0});
    CHECK_THROWS_AS(run(cfg), InvalidArgumentError);
    cfg = make_config(ScenarioKind::thermal);
    cfg.nbar = -0.5;
    CHECK_THROWS_AS(run(cfg), InvalidArgumentError);
    cfg = make_config(ScenarioKind::cascade);
    cfg.n_amplifiers = 20;  // joint dimension far beyond the budget
    CHECK_THROWS_AS(run(cfg), InvalidArgumentError);
}

TEST_CASE("config schema lists every field") {
    const json schema = config_schema();
    for (const char* field :
         {"kind", "alpha", "beta", "lambda", "n_amplifiers", "upper_n", "lower_n", "nbar",
          "truncations", "analyses", "herald", "wigner_grid", "wigner_target_mode"})
        CHECK(schema["properties"].contains(field));
    CHECK(schema["required"] == json::array({"kind"}));
}
