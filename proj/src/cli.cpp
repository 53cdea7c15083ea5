#include "focksim/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "focksim/canonical_json.hpp"
#include "focksim/errors.hpp"
#include "focksim/scenario.hpp"
#include "focksim/verification.hpp"

namespace focksim {

namespace {

using nlohmann::json;

json error_object(const std::string& kind, const std::string& message,
                  const std::string& field = "") {
    json e{{"error", {{"kind", kind}, {"message", message}}}};
    if (!field.empty()) e["error"]["field"] = field;
    return e;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return ScenarioConfig::from_json(j);
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty() || out_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw SimError("cannot open output file '" + out_path + "'");
    f << text;
}

std::vector<double> parse_values_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            values.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("values", "not a number: '" + item + "'");
        }
    }
    if (values.empty()) throw ConfigError("values", "empty value list");
    return values;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"truncated-Fock-space simulator for cascaded parametric amplifiers"};
    app.require_subcommand(1);

    std::string config_path, out_path, param, values_csv;

    CLI::App* simulate = app.add_subcommand("simulate", "run one scenario, emit a JSON report");
    simulate->add_option("--config", config_path, "scenario config file")->required();
    simulate->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep, emit a JSON array");
    sweep_cmd->add_option("--config", config_path, "scenario config file")->required();
    sweep_cmd->add_option("--param", param, "lambda | alpha | nbar | n_amplifiers")->required();
    sweep_cmd->add_option("--values", values_csv, "comma-separated values")->required();
    sweep_cmd->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* wigner_cmd =
        app.add_subcommand("wigner", "sample the heralded state's Wigner function to CSV");
    wigner_cmd->add_option("--config", config_path, "scenario config file")->required();
    wigner_cmd->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the built-in verification suite");
    CLI::App* schema_cmd = app.add_subcommand("schema", "print the config schema");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << canonical_dump(error_object("cli-parse", e.what()));
        return exit_code::parse_error;
    }

    if (simulate->parsed()) {
        ScenarioConfig cfg = load_config(config_path);
        write_output(canonical_dump(run(cfg).to_json()), out_path, out);
        return exit_code::ok;
    }
    if (sweep_cmd->parsed()) {
        ScenarioConfig cfg = load_config(config_path);
        const std::vector<double> values = parse_values_list(values_csv);
        json arr = json::array();
        for (const ScenarioReport& rep : sweep(cfg, param, values)) arr.push_back(rep.to_json());
        write_output(canonical_dump(arr), out_path, out);
        return exit_code::ok;
    }
    if (wigner_cmd->parsed()) {
        ScenarioConfig cfg = load_config(config_path);
        const WignerTarget target = wigner_target(cfg);
        const WignerGrid grid = target.mixed ? wigner(target.dm, cfg.wigner_grid)
                                             : wigner(target.pure, cfg.wigner_grid);
        std::ostringstream csv;
        grid.write_csv(csv);
        write_output(csv.str(), out_path, out);
        return exit_code::ok;
    }
    if (verify_cmd->parsed()) {
        const VerificationSummary summary = run_verification();
        out << format_verification_table(summary);
        return summary.all_passed() ? exit_code::ok : exit_code::failure;
    }
    if (schema_cmd->parsed()) {
        out << canonical_dump(config_schema());
        return exit_code::ok;
    }
    err << canonical_dump(error_object("cli-parse", "no command given"));
    return exit_code::parse_error;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const ConfigError& e) {
        err << canonical_dump(error_object("config", e.what(), e.field()));
        return exit_code::parse_error;
    } catch (const NormLeakageError& e) {
        err << canonical_dump(error_object("norm-leakage", e.what()));
        return exit_code::norm_leakage;
    } catch (const InvalidArgumentError& e) {
        err << canonical_dump(error_object("guard", e.what()));
        return exit_code::guard_error;
    } catch (const TruncationError& e) {
        err << canonical_dump(error_object("guard", e.what()));
        return exit_code::guard_error;
    } catch (const ShapeError& e) {
        err << canonical_dump(error_object("guard", e.what()));
        return exit_code::guard_error;
    } catch (const SimError& e) {
        err << canonical_dump(error_object("internal", e.what()));
        return exit_code::failure;
    }
}

}  // namespace focksim
