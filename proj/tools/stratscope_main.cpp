// stratscope CLI: orchestrates dataset validation, the three analysis stages
// and report generation through the C API. Results go to stdout, diagnostics
// to stderr; exit code 0 = success, 1 = data/validation problems, 2 = I/O or
// usage errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratscope/stratscope.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kAnalysisStages[] = {"validate",    "prevalence", "standout", "stratify",
                                           "consolidate", "align",      "patterns"};

struct Options {
    std::string data_dir;
    std::string out_dir;
    double partial_weight = 1.0;
    std::string std_mode;
    std::string standout_threshold;
    int min_axis_coverage = 3;
    bool as_json = false;

    bool partial_weight_set = false;
    bool std_mode_set = false;
    bool threshold_set = false;
    bool coverage_set = false;
};

int status_to_exit(ss_status_t status) {
    switch (status) {
        case SS_OK: return 0;
        case SS_ERROR_DATA: return 1;
        case SS_ERROR_IO:
        case SS_ERROR_USAGE: return 2;
    }
    return 2;
}

void print_diag(char* diag) {
    if (diag != nullptr) {
        std::cerr << diag;
        ss_string_free(diag);
    }
}

// Flags the user actually set become config overrides; everything else keeps
// config.json / default precedence.
std::string overrides_json(const Options& options, std::string& error) {
    json overrides = json::object();
    if (options.partial_weight_set) {
        overrides["partial_weight"] = options.partial_weight;
    }
    if (options.std_mode_set) {
        overrides["std_mode"] = options.std_mode;
    }
    if (options.threshold_set) {
        if (options.standout_threshold == "auto") {
            overrides["standout_threshold"] = "auto";
        } else {
            try {
                std::size_t used = 0;
                const int value = std::stoi(options.standout_threshold, &used);
                if (used != options.standout_threshold.size()) {
                    throw std::invalid_argument("trailing characters");
                }
                overrides["standout_threshold"] = value;
            } catch (const std::exception&) {
                error = "--standout-threshold must be an integer or \"auto\"";
                return {};
            }
        }
    }
    if (options.coverage_set) {
        overrides["min_axis_coverage"] = options.min_axis_coverage;
    }
    return overrides.empty() ? std::string() : overrides.dump();
}

int open_bundle(const Options& options, ss_bundle_t** bundle) {
    if (options.data_dir.empty()) {
        std::cerr << "error: no dataset directory (use --data-dir or STRATSCOPE_DATA_DIR)\n";
        return 2;
    }
    std::string override_error;
    const std::string overrides = overrides_json(options, override_error);
    if (!override_error.empty()) {
        std::cerr << "error: " << override_error << "\n";
        return 2;
    }
    char* diag = nullptr;
    const ss_status_t status = ss_bundle_open(
        options.data_dir.c_str(), overrides.empty() ? nullptr : overrides.c_str(), bundle, &diag);
    print_diag(diag);
    return status_to_exit(status);
}

int write_stage_cache(const Options& options, const char* stage, const char* json_text) {
    if (options.out_dir.empty()) {
        return 0;
    }
    const fs::path cache_dir = fs::path(options.out_dir) / "cache";
    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    std::ofstream out(cache_dir / (std::string(stage) + ".json"), std::ios::binary);
    out << json_text;
    if (!out.good()) {
        std::cerr << "error: unable to write stage cache in " << cache_dir.string() << "\n";
        return 2;
    }
    return 0;
}

int run_stage_command(const Options& options, const char* stage) {
    ss_bundle_t* bundle = nullptr;
    if (int code = open_bundle(options, &bundle); code != 0) {
        return code;
    }
    char* diag = nullptr;
    ss_result_t* result = nullptr;
    const ss_status_t status = ss_run_stage(bundle, stage, &result, &diag);
    print_diag(diag);
    int code = status_to_exit(status);
    if (status == SS_OK) {
        std::cout << (options.as_json ? ss_result_json(result) : ss_result_text(result));
        code = write_stage_cache(options, stage, ss_result_json(result));
    }
    ss_result_close(result);
    ss_bundle_close(bundle);
    return code;
}

int run_reports(const Options& options, bool with_stage_caches) {
    if (options.out_dir.empty()) {
        std::cerr << "error: --out-dir is required for this subcommand\n";
        return 2;
    }
    ss_bundle_t* bundle = nullptr;
    if (int code = open_bundle(options, &bundle); code != 0) {
        return code;
    }
    int code = 0;
    if (with_stage_caches) {
        for (const char* stage : kAnalysisStages) {
            char* diag = nullptr;
            ss_result_t* result = nullptr;
            const ss_status_t status = ss_run_stage(bundle, stage, &result, &diag);
            print_diag(diag);
            if (status != SS_OK) {
                code = status_to_exit(status);
            } else {
                code = write_stage_cache(options, stage, ss_result_json(result));
            }
            ss_result_close(result);
            if (code != 0) {
                break;
            }
        }
    }
    if (code == 0) {
        char* diag = nullptr;
        char* manifest_text = nullptr;
        const ss_status_t status =
            ss_write_reports(bundle, options.out_dir.c_str(), &manifest_text, &diag);
        print_diag(diag);
        code = status_to_exit(status);
        if (status == SS_OK && manifest_text != nullptr) {
            if (options.as_json) {
                std::cout << manifest_text;
            } else {
                const json manifest = json::parse(manifest_text);
                for (const auto& entry : manifest) {
                    std::cout << "wrote "
                              << (fs::path(options.out_dir) / entry.at("file").get<std::string>())
                                     .string()
                              << "\n";
                }
                std::cout << "wrote " << (fs::path(options.out_dir) / "manifest.json").string()
                          << "\n";
            }
        }
        ss_string_free(manifest_text);
    }
    ss_bundle_close(bundle);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stratscope - national AI strategy indicator monitoring"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.set_version_flag("--version", std::string(ss_version()));

    Options options;
    app.add_option("--data-dir", options.data_dir, "Dataset directory")
        ->envname("STRATSCOPE_DATA_DIR");
    app.add_option("--out-dir", options.out_dir, "Output directory for reports and stage caches");
    auto* weight =
        app.add_option("--partial-weight", options.partial_weight,
                       "Weight of partial matches in frequencies, in [0, 1]")
            ->check(CLI::Range(0.0, 1.0));
    auto* mode = app.add_option("--std-mode", options.std_mode,
                                "Standard deviation mode: population or sample")
                     ->check(CLI::IsMember({"population", "sample"}));
    auto* threshold = app.add_option("--standout-threshold", options.standout_threshold,
                                     "Standout threshold: integer or \"auto\"");
    auto* coverage = app.add_option("--min-axis-coverage", options.min_axis_coverage,
                                    "Minimum indicators per axis before flagging")
                         ->check(CLI::PositiveNumber);
    app.add_flag("--json", options.as_json, "Emit machine-readable JSON on stdout");

    app.add_subcommand("validate", "Parse and validate the dataset");
    app.add_subcommand("prevalence", "Frequencies, statistics and prevalence labels");
    app.add_subcommand("standout", "Standout strategy detection");
    app.add_subcommand("stratify", "Country strata");
    app.add_subcommand("consolidate", "Consolidated indicator set with code assignment");
    app.add_subcommand("align", "Extended matrix and frequency table");
    app.add_subcommand("patterns", "Blind spot, overflow ratios and coverage flags");
    app.add_subcommand("report", "Write the report artifacts to --out-dir");
    app.add_subcommand("all", "Run every stage, cache intermediates and write reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    options.partial_weight_set = weight->count() > 0;
    options.std_mode_set = mode->count() > 0;
    options.threshold_set = threshold->count() > 0;
    options.coverage_set = coverage->count() > 0;

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "report") {
        return run_reports(options, /*with_stage_caches=*/false);
    }
    if (command == "all") {
        return run_reports(options, /*with_stage_caches=*/true);
    }
    return run_stage_command(options, command.c_str());
}
