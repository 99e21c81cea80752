// adawm: embed / extract / attack / bench front end.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "adawm/attacks.hpp"
#include "adawm/bench.hpp"
#include "adawm/codec.hpp"
#include "adawm/config.hpp"
#include "adawm/image.hpp"
#include "adawm/metrics.hpp"

namespace {

using namespace adawm;

struct EmbedOverrides {
    std::optional<bool> adaptive;
    std::optional<double> alpha, beta, fixed_sf, floor;
    std::optional<int> repair_rounds;

    void attach(CLI::App* cmd) {
        cmd->add_flag_function(
            "--adaptive,!--non-adaptive", [this](std::int64_t n) { adaptive = n > 0; },
            "Adaptive (edge/brightness) strength factor or a fixed one");
        cmd->add_option("--alpha", alpha, "Edge weight in the strength factor");
        cmd->add_option("--beta", beta, "Brightness weight in the strength factor");
        cmd->add_option("--fixed-sf", fixed_sf, "Strength factor for the non-adaptive scheme");
        cmd->add_option("--floor", floor, "Minimum coefficient margin after embedding");
        cmd->add_option("--repair-rounds", repair_rounds, "Verify-and-repair passes (0 disables)");
    }

    void apply(EmbedParams& p) const {
        if (adaptive) p.adaptive = *adaptive;
        if (alpha) p.psychovisual.alpha = *alpha;
        if (beta) p.psychovisual.beta = *beta;
        if (fixed_sf) p.fixed_sf = *fixed_sf;
        if (floor) p.magnitude_floor = *floor;
        if (repair_rounds) p.repair_rounds = *repair_rounds;
    }
};

ToolkitConfig config_from(const std::string& path) { return path.empty() ? ToolkitConfig{} : load_config(path); }

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive blind DWT-DCT image watermarking toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "Embed a 256-bit payload into a cover image");
    std::string cover_path, out_path, payload_hex, payload_file;
    embed_cmd->add_option("-i,--cover", cover_path, "Cover image (PGM or PNG)")->required();
    auto* hex_opt = embed_cmd->add_option("-p,--payload", payload_hex, "Payload as 64 hex digits");
    auto* file_opt = embed_cmd->add_option("--payload-file", payload_file, "Payload as a raw 32-byte file");
    hex_opt->excludes(file_opt);
    embed_cmd->add_option("-o,--out", out_path, "Watermarked image (.png or .pgm)")->required();
    EmbedOverrides embed_over;
    embed_over.attach(embed_cmd);

    // extract
    auto* extract_cmd = app.add_subcommand("extract", "Blindly extract the payload from an image");
    std::string extract_path;
    bool extract_json = false;
    extract_cmd->add_option("-i,--image", extract_path, "Watermarked image")->required();
    extract_cmd->add_flag("--json", extract_json, "Emit a JSON object instead of text");
    EmbedOverrides extract_over;
    extract_over.attach(extract_cmd);

    // attack
    auto* attack_cmd = app.add_subcommand("attack", "Apply one attack to an image");
    std::string attack_in, attack_out, kind;
    AttackSpec spec;
    attack_cmd->add_option("-i,--in", attack_in, "Input image")->required();
    attack_cmd->add_option("-o,--out", attack_out, "Output image")->required();
    attack_cmd->add_option("--kind", kind, "Attack kind")
        ->required()
        ->check(CLI::IsMember({"none", "median", "median_filter", "salt_pepper", "sp", "gaussian", "gaussian_noise",
                               "histeq", "hist_equalize", "jpeg"}));
    attack_cmd->add_option("--kernel", spec.kernel, "Median kernel size (odd)")->capture_default_str();
    attack_cmd->add_option("--density", spec.density, "Salt & pepper density")->capture_default_str();
    attack_cmd->add_option("--variance", spec.variance, "Gaussian variance on the [0,1] scale")->capture_default_str();
    attack_cmd->add_option("--quality", spec.quality, "JPEG quality 1-100")->capture_default_str();
    attack_cmd->add_option("--seed", spec.seed, "Seed for stochastic attacks")->capture_default_str();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the robustness benchmark");
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> image_args;
    std::optional<std::string> csv_path, json_path;
    bool fixtures = false, calibrate_mode = false, stamp = false;
    std::string calibration_out, write_config;
    bench_cmd->add_option("--trials", trials, "Random payloads per cell");
    bench_cmd->add_option("--seed", seed, "Base RNG seed");
    bench_cmd->add_option("--image", image_args, "Extra image as NAME=PATH (repeatable)");
    bench_cmd->add_flag("--fixtures", fixtures, "Include the built-in synthetic covers");
    bench_cmd->add_option("--csv", csv_path, "CSV report path");
    bench_cmd->add_option("--json", json_path, "JSON report path");
    bench_cmd->add_flag("--timestamp", stamp, "Record the run time in the JSON report");
    bench_cmd->add_flag("--calibrate", calibrate_mode, "Grid-search alpha/beta and fixed_sf instead");
    bench_cmd->add_option("--calibration-out", calibration_out, "Write the calibration grid as JSON");
    bench_cmd->add_option("--write-config", write_config, "Write the config with calibrated values");
    EmbedOverrides bench_over;
    bench_over.attach(bench_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        ToolkitConfig config = config_from(config_path);

        if (*embed_cmd) {
            embed_over.apply(config.embed);
            if (payload_hex.empty() && payload_file.empty())
                throw std::invalid_argument("payload must be 256 bits: pass --payload or --payload-file");
            const Payload payload =
                payload_file.empty() ? Payload::from_hex(payload_hex) : Payload::from_file(payload_file);
            const GrayImage cover = load_image(cover_path);
            const GrayImage marked = embed(cover, payload, config.embed);
            save_image(marked, out_path);
            std::printf("psnr %.4f\nssim %.6f\n", psnr(cover, marked), ssim(cover, marked));
            return 0;
        }

        if (*extract_cmd) {
            extract_over.apply(config.embed);
            const Extraction ex = extract_detailed(load_image(extract_path), config.embed);
            double mean = 0.0;
            for (double c : ex.confidence) mean += c;
            mean /= static_cast<double>(ex.confidence.size());
            if (extract_json) {
                nlohmann::json j{{"payload", ex.payload.to_hex()}, {"mean_confidence", mean},
                                 {"confidence", ex.confidence}};
                std::cout << j.dump() << "\n";
            } else {
                std::printf("%s\nmean_confidence %.4f\nconfidence", ex.payload.to_hex().c_str(), mean);
                for (double c : ex.confidence) std::printf(" %.3f", c);
                std::printf("\n");
            }
            return 0;
        }

        if (*attack_cmd) {
            spec.kind = attack_kind_from_string(kind);
            save_image(apply_attack(load_image(attack_in), spec), attack_out);
            return 0;
        }

        if (*bench_cmd) {
            bench_over.apply(config.embed);
            if (trials) config.bench.trials = *trials;
            if (seed) config.bench.seed = *seed;
            if (fixtures) config.bench.synthetic_fixtures = true;
            if (csv_path) config.report.csv = *csv_path;
            if (json_path) config.report.json = *json_path;
            for (const std::string& arg : image_args) {
                const auto eq = arg.find('=');
                if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--image expects NAME=PATH");
                config.bench.images.push_back({arg.substr(0, eq), arg.substr(eq + 1)});
            }
            config.validate();

            if (calibrate_mode) {
                const ImageEntry* target = nullptr;
                for (const ImageEntry& e : config.bench.images)
                    if (e.name == config.bench.calibrate_image) target = &e;
                if (!target && !config.bench.images.empty()) target = &config.bench.images.front();
                if (!target) throw std::invalid_argument("bench --calibrate needs at least one image");
                const CalibrationResult cal = calibrate(config, load_image(target->path));
                const nlohmann::json j = calibration_json(cal);
                if (!calibration_out.empty()) {
                    std::ofstream(calibration_out) << j.dump(2) << "\n";
                }
                std::printf("calibrated on %s\n", target->name.c_str());
                std::printf("adaptive: alpha %.2f beta %.2f  psnr %.3f  mean_nc %.4f  (psnr constraint %s)\n",
                            cal.best_adaptive.alpha, cal.best_adaptive.beta, cal.best_adaptive.psnr,
                            cal.best_adaptive.mean_nc, cal.adaptive_constraint_met ? "met" : "NOT met");
                std::printf("fixed:    sf %.2f  psnr %.3f  mean_nc %.4f  (psnr constraint %s)\n",
                            cal.best_fixed.fixed_sf, cal.best_fixed.psnr, cal.best_fixed.mean_nc,
                            cal.fixed_constraint_met ? "met" : "NOT met");
                if (!write_config.empty()) {
                    config.embed.psychovisual.alpha = cal.best_adaptive.alpha;
                    config.embed.psychovisual.beta = cal.best_adaptive.beta;
                    config.embed.fixed_sf = cal.best_fixed.fixed_sf;
                    std::ofstream(write_config) << nlohmann::json(config).dump(2) << "\n";
                }
                return 0;
            }

            BenchReport report = run_bench(config, load_bench_images(config));
            if (stamp) report.timestamp = utc_now();
            write_report(report, config.report);
            for (const QualityRow& q : report.quality)
                std::printf("%-12s %-12s psnr %.3f ssim %.4f\n", q.image.c_str(), to_string(q.scheme), q.psnr,
                            q.ssim);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "adawm: error: %s\n", e.what());
        return 1;
    }
    return 1;
}
