// Batch verifier: loads scenes, runs the selected suites, prints a report.
// Exit 0 all checks pass, 1 a check fails, 2 a scene does not load.

#include <iostream>

#include <CLI11.hpp>

#include "ecd/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact Einstein-Cartan-Dirac checks on frame-bundle scenes"};
    ecd::RunConfig cfg;
    std::string suite = "all", format = "text";
    app.add_option("scenes", cfg.scenes, "scene files")->required();
    app.add_option("--suite", suite, "identities | gfb | residuals | base | all")
        ->check(CLI::IsMember({"identities", "gfb", "residuals", "base", "all"}));
    app.add_option("--format", format, "text | structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--trials", cfg.trials, "random instances per randomised check")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--golden", cfg.golden, "golden file (default: golden.json beside each scene)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.suite = ecd::parse_suite(suite);
    cfg.format = ecd::parse_format(format);

    auto result = ecd::run(cfg);
    std::cout << ecd::render(result, cfg);
    return result.exit_code;
}
