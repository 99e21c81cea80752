#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "adawm/attacks.hpp"
#include "adawm/codec.hpp"

namespace adawm {

struct NamedAttack {
    std::string name;
    AttackSpec spec;
};

struct ImageEntry {
    std::string name;
    std::string path;
};

struct BenchSettings {
    int trials = 20;
    std::uint64_t seed = 20230417;
    std::vector<ImageEntry> images;
    bool synthetic_fixtures = false;
    // Calibration grid, used by `bench --calibrate`.
    std::string calibrate_image = "Lena";
    int calibrate_trials = 5;
    double calibrate_min_psnr = 45.0;
};

struct ReportPaths {
    std::string csv = "bench_report.csv";
    std::string json = "bench_report.json";
};

struct ToolkitConfig {
    EmbedParams embed;
    std::vector<NamedAttack> attacks = default_attack_battery();
    BenchSettings bench;
    ReportPaths report;

    /// none, MF 3x3, S&P 0.01, HE, GN 0.003/0.005, JPEG 30/50/70/90.
    static std::vector<NamedAttack> default_attack_battery();
    void validate() const;
};

void to_json(nlohmann::json& j, const PsychovisualParams& p);
void from_json(const nlohmann::json& j, PsychovisualParams& p);
void to_json(nlohmann::json& j, const EmbedParams& p);
void from_json(const nlohmann::json& j, EmbedParams& p);
void to_json(nlohmann::json& j, const AttackSpec& a);
void from_json(const nlohmann::json& j, AttackSpec& a);
void to_json(nlohmann::json& j, const ToolkitConfig& c);
void from_json(const nlohmann::json& j, ToolkitConfig& c);

/// Missing keys keep their defaults; unknown keys are rejected.
ToolkitConfig load_config(const std::filesystem::path& path);
ToolkitConfig parse_config(const std::string& text);

}  // namespace adawm
