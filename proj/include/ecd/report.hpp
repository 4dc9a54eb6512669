#pragma once

// Check suites over scenes and their text / structured reports.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecd/scene.hpp"

namespace ecd {

enum class Suite { Identities, Gfb, Residuals, Base, All };
enum class Format { Text, Structured };
enum class Status { Pass, Fail, Skip };

struct RunConfig {
    std::vector<std::string> scenes;
    Suite suite = Suite::All;
    Format format = Format::Text;
    int trials = 20;
    std::uint64_t seed = 1;
    std::string golden;  // empty: golden.json next to each scene, if present
};

struct CheckRecord {
    std::string scene;
    std::string id;
    std::string paper_anchor;
    Status status = Status::Pass;
    double norm = 0;
    bool exact_zero = true;
    std::string note;
};

struct RunResult {
    std::vector<CheckRecord> records;
    int exit_code = 0;
};

Suite parse_suite(const std::string& s);
Format parse_format(const std::string& s);
std::string status_name(Status s);

/// Runs the selected suites on one loaded scene.  rng draws are private to
/// the scene so that results do not depend on scene order.
std::vector<CheckRecord> check_scene(const Scene& scene, Suite suite, int trials, std::uint64_t seed,
                                     const nlohmann::json* golden);

/// Exit code 2 if a scene fails to load, else 1 if any check fails, else 0.
RunResult run(const RunConfig& config);

std::string render(const RunResult& result, const RunConfig& config);

}  // namespace ecd
