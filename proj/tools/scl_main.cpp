#include <iostream>

#include <CLI11.hpp>

#include "scl/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"scl - symplectic connection induction workbench"};
    std::string command;
    std::string config_path;
    std::string format = "text";
    std::optional<uint64_t> seed;
    std::optional<int> samples;
    std::optional<double> tol;

    app.add_option("command", command, "check | induce | lift | reduce | roundtrip | all")
        ->required();
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--format", format, "report format: json | text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "override the sample seed");
    app.add_option("--samples", samples, "override the sample count");
    app.add_option("--tol", tol, "override the generic absolute tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const scl::Command cmd = scl::parse_command(command);
        scl::ManifoldConfig cfg = scl::load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (samples) cfg.samples = *samples;
        if (tol) cfg.tol = *tol;
        const scl::VerificationReport report = scl::run(cmd, cfg);
        std::cout << scl::emit_report(report, format);
        return scl::exit_code(report);
    } catch (const scl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
