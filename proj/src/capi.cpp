#include "stratscope/stratscope.h"

#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "stratscope/ingest.hpp"
#include "stratscope/pipeline.hpp"
#include "stratscope/report.hpp"

using nlohmann::json;

struct ss_bundle_t {
    stratscope::DatasetBundle bundle;
    std::optional<stratscope::AnalysisResults> results;  // computed on demand

    const stratscope::AnalysisResults& analysis() {
        if (!results) {
            results = stratscope::run_analysis(bundle);
        }
        return *results;
    }
};

struct ss_result_t {
    std::string json_text;
    std::string table_text;
};

namespace {

char* dup_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void set_diag(char** out, const std::string& text) {
    if (out != nullptr) {
        *out = text.empty() ? nullptr : dup_string(text);
    }
}

std::string diagnostics_text(const std::vector<stratscope::Diagnostic>& diagnostics) {
    std::string out;
    for (const auto& d : diagnostics) {
        out += d.to_string() + "\n";
    }
    return out;
}

// Shared failure mapping: dataset errors keep their io/data kind, analysis
// precondition failures count as data problems.
template <typename Fn>
ss_status_t guarded(char** out_diagnostics, Fn&& fn) {
    try {
        return fn();
    } catch (const stratscope::DatasetError& e) {
        set_diag(out_diagnostics, diagnostics_text(e.diagnostics()));
        return e.kind() == stratscope::DatasetError::Kind::io ? SS_ERROR_IO : SS_ERROR_DATA;
    } catch (const std::invalid_argument& e) {
        set_diag(out_diagnostics, std::string("error: ") + e.what() + "\n");
        return SS_ERROR_DATA;
    } catch (const std::exception& e) {
        set_diag(out_diagnostics, std::string("error: ") + e.what() + "\n");
        return SS_ERROR_IO;
    }
}

ss_status_t apply_overrides(stratscope::RunConfig& config, const char* overrides_json,
                            char** out_diagnostics) {
    if (overrides_json == nullptr || *overrides_json == '\0') {
        return SS_OK;
    }
    json doc = json::parse(overrides_json, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        set_diag(out_diagnostics, "error: config overrides must be a JSON object\n");
        return SS_ERROR_USAGE;
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "partial_weight" && value.is_number() && value.get<double>() >= 0.0 &&
            value.get<double>() <= 1.0) {
            config.partial_weight = value.get<double>();
        } else if (key == "std_mode" && value.is_string() &&
                   (value == "population" || value == "sample")) {
            config.std_mode = stratscope::std_mode_from_string(value.get<std::string>());
        } else if (key == "standout_threshold" &&
                   (value.is_number_integer() || value == "auto")) {
            if (value.is_number_integer()) {
                config.standout_threshold = value.get<int>();
            } else {
                config.standout_threshold.reset();
            }
        } else if (key == "min_axis_coverage" && value.is_number_integer() &&
                   value.get<int>() >= 1) {
            config.min_axis_coverage = value.get<int>();
        } else {
            set_diag(out_diagnostics, "error: invalid override \"" + key + "\"\n");
            return SS_ERROR_USAGE;
        }
    }
    return SS_OK;
}

}  // namespace

extern "C" {

const char* ss_version(void) { return "0.1.0"; }

ss_status_t ss_bundle_open(const char* data_dir, const char* config_overrides_json,
                           ss_bundle_t** out_bundle, char** out_diagnostics) {
    if (out_diagnostics != nullptr) {
        *out_diagnostics = nullptr;
    }
    if (out_bundle == nullptr || data_dir == nullptr) {
        set_diag(out_diagnostics, "error: data_dir and out_bundle are required\n");
        return SS_ERROR_USAGE;
    }
    *out_bundle = nullptr;
    return guarded(out_diagnostics, [&]() -> ss_status_t {
        auto handle = std::make_unique<ss_bundle_t>();
        handle->bundle = stratscope::load_bundle(data_dir);
        const ss_status_t status =
            apply_overrides(handle->bundle.config, config_overrides_json, out_diagnostics);
        if (status != SS_OK) {
            return status;
        }
        set_diag(out_diagnostics, diagnostics_text(handle->bundle.warnings));
        *out_bundle = handle.release();
        return SS_OK;
    });
}

void ss_bundle_close(ss_bundle_t* bundle) { delete bundle; }

ss_status_t ss_run_stage(ss_bundle_t* bundle, const char* stage, ss_result_t** out_result,
                         char** out_diagnostics) {
    if (out_diagnostics != nullptr) {
        *out_diagnostics = nullptr;
    }
    if (bundle == nullptr || stage == nullptr || out_result == nullptr) {
        set_diag(out_diagnostics, "error: bundle, stage and out_result are required\n");
        return SS_ERROR_USAGE;
    }
    *out_result = nullptr;
    const auto parsed = stratscope::stage_from_name(stage);
    if (!parsed) {
        set_diag(out_diagnostics, std::string("error: unknown stage \"") + stage + "\"\n");
        return SS_ERROR_USAGE;
    }
    return guarded(out_diagnostics, [&]() -> ss_status_t {
        const auto& results = bundle->analysis();
        auto result = std::make_unique<ss_result_t>();
        result->json_text = stratscope::stage_json(*parsed, bundle->bundle, results).dump(2) + "\n";
        result->table_text = stratscope::stage_text(*parsed, bundle->bundle, results);
        *out_result = result.release();
        return SS_OK;
    });
}

const char* ss_result_json(const ss_result_t* result) {
    return result == nullptr ? nullptr : result->json_text.c_str();
}

const char* ss_result_text(const ss_result_t* result) {
    return result == nullptr ? nullptr : result->table_text.c_str();
}

void ss_result_close(ss_result_t* result) { delete result; }

ss_status_t ss_write_reports(ss_bundle_t* bundle, const char* out_dir, char** out_manifest_json,
                             char** out_diagnostics) {
    if (out_diagnostics != nullptr) {
        *out_diagnostics = nullptr;
    }
    if (out_manifest_json != nullptr) {
        *out_manifest_json = nullptr;
    }
    if (bundle == nullptr || out_dir == nullptr) {
        set_diag(out_diagnostics, "error: bundle and out_dir are required\n");
        return SS_ERROR_USAGE;
    }
    return guarded(out_diagnostics, [&]() -> ss_status_t {
        const auto manifest =
            stratscope::write_reports(bundle->bundle, bundle->analysis(), out_dir);
        if (out_manifest_json != nullptr) {
            *out_manifest_json = dup_string(manifest.dump(2) + "\n");
        }
        return SS_OK;
    });
}

ss_status_t ss_export_bundle(ss_bundle_t* bundle, const char* out_dir, char** out_diagnostics) {
    if (out_diagnostics != nullptr) {
        *out_diagnostics = nullptr;
    }
    if (bundle == nullptr || out_dir == nullptr) {
        set_diag(out_diagnostics, "error: bundle and out_dir are required\n");
        return SS_ERROR_USAGE;
    }
    return guarded(out_diagnostics, [&]() -> ss_status_t {
        stratscope::export_bundle(bundle->bundle, out_dir);
        return SS_OK;
    });
}

void ss_string_free(char* text) { delete[] text; }

}  // extern "C"
