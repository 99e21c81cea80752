#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "adawm/config.hpp"
#include "adawm/fixtures.hpp"

namespace adawm {

enum class Scheme { adaptive, non_adaptive };
const char* to_string(Scheme s) noexcept;

struct QualityRow {
    std::string image;
    Scheme scheme = Scheme::adaptive;
    int trials = 0;
    double psnr = 0.0;  // mean over trials
    double ssim = 0.0;
};

struct RobustnessCell {
    std::string image;
    Scheme scheme = Scheme::adaptive;
    std::string attack;
    AttackSpec spec;
    int trials = 0;
    double mean_nc = 0.0;
    double mean_ber = 0.0;
};

struct BenchReport {
    std::vector<QualityRow> quality;
    std::vector<RobustnessCell> cells;
    nlohmann::json config;
    std::uint64_t seed = 0;
    std::optional<std::string> timestamp;

    const RobustnessCell* find(const std::string& image, Scheme scheme, const std::string& attack) const;
    const QualityRow* find(const std::string& image, Scheme scheme) const;
};

/// Deterministic 64-bit mix of a base seed and stream coordinates.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Random payload for one trial; identical across images and schemes.
Payload trial_payload(std::uint64_t seed, int trial);

/// Images named in the config, plus synthetic fixtures when enabled.
std::vector<NamedImage> load_bench_images(const ToolkitConfig& config);

/// For every image x scheme x attack: embed `trials` random payloads, attack, extract, average.
BenchReport run_bench(const ToolkitConfig& config, const std::vector<NamedImage>& images);

std::string report_csv(const BenchReport& report);
std::string report_json(const BenchReport& report);
void write_report(const BenchReport& report, const ReportPaths& paths);

struct CalibrationPoint {
    double alpha = 0.0;
    double beta = 0.0;  // both zero for fixed-SF points
    double fixed_sf = 0.0;
    double psnr = 0.0;
    double mean_nc = 0.0;
};

struct CalibrationResult {
    std::vector<CalibrationPoint> adaptive_grid;
    std::vector<CalibrationPoint> fixed_grid;
    CalibrationPoint best_adaptive;
    CalibrationPoint best_fixed;
    bool adaptive_constraint_met = false;
    bool fixed_constraint_met = false;
};

// Grid search: alpha in {0.1..1.0}, beta in {0.05..0.5}, fixed_sf in {0.01..0.12}.
// Maximizes mean NC under the first median-filter attack of the battery (3x3 if
// none) subject to PSNR >= bench.calibrate_min_psnr. When no point satisfies the
// constraint, the highest-NC point is chosen and the flag says so.
CalibrationResult calibrate(const ToolkitConfig& config, const GrayImage& cover);
nlohmann::json calibration_json(const CalibrationResult& result);

}  // namespace adawm
