#include "adawm/bench.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "adawm/metrics.hpp"
#include "adawm/psychovisual.hpp"

namespace adawm {

using nlohmann::json;

const char* to_string(Scheme s) noexcept { return s == Scheme::adaptive ? "adaptive" : "non_adaptive"; }

const RobustnessCell* BenchReport::find(const std::string& image, Scheme scheme, const std::string& attack) const {
    for (const RobustnessCell& c : cells)
        if (c.image == image && c.scheme == scheme && c.attack == attack) return &c;
    return nullptr;
}

const QualityRow* BenchReport::find(const std::string& image, Scheme scheme) const {
    for (const QualityRow& q : quality)
        if (q.image == image && q.scheme == scheme) return &q;
    return nullptr;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // splitmix64 finalizer applied over the coordinates in turn
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(base);
    for (std::uint64_t v : {a, b, c}) h = mix(h ^ v);
    return h;
}

Payload trial_payload(std::uint64_t seed, int trial) {
    std::mt19937_64 rng(derive_seed(seed, 0x5041594cULL, static_cast<std::uint64_t>(trial)));
    std::vector<std::uint8_t> bits(kPayloadBits);
    for (int i = 0; i < kPayloadBits; i += 64) {
        const std::uint64_t word = rng();
        for (int b = 0; b < 64; ++b) bits[i + b] = static_cast<std::uint8_t>((word >> b) & 1u);
    }
    return Payload(bits);
}

std::vector<NamedImage> load_bench_images(const ToolkitConfig& config) {
    std::vector<NamedImage> out;
    for (const ImageEntry& e : config.bench.images) out.push_back({e.name, load_image(e.path)});
    if (config.bench.synthetic_fixtures)
        for (NamedImage& f : synthetic_fixtures()) out.push_back(std::move(f));
    if (out.empty()) throw std::invalid_argument("bench: no images configured");
    return out;
}

namespace {

std::vector<double> scheme_strength(const GrayImage& cover, Scheme scheme, const EmbedParams& params) {
    if (scheme == Scheme::adaptive) return adaptive_strength(cover, params.psychovisual);
    return std::vector<double>(static_cast<std::size_t>(grid_for(cover.width(), cover.height()).count()),
                               params.fixed_sf);
}

}  // namespace

BenchReport run_bench(const ToolkitConfig& config, const std::vector<NamedImage>& images) {
    config.validate();
    BenchReport report;
    report.config = config;
    report.seed = config.bench.seed;
    const int trials = config.bench.trials;

    for (const NamedImage& img : images) {
        for (Scheme scheme : {Scheme::adaptive, Scheme::non_adaptive}) {
            EmbedParams params = config.embed;
            params.adaptive = scheme == Scheme::adaptive;
            const std::vector<double> sf = scheme_strength(img.image, scheme, params);

            QualityRow q{img.name, scheme, trials, 0.0, 0.0};
            std::vector<RobustnessCell> cells;
            for (const NamedAttack& a : config.attacks) cells.push_back({img.name, scheme, a.name, a.spec, trials, 0, 0});

            for (int t = 0; t < trials; ++t) {
                const Payload payload = trial_payload(config.bench.seed, t);
                const GrayImage marked = embed_with_strength(img.image, payload, params, sf);
                q.psnr += psnr(img.image, marked);
                q.ssim += ssim(img.image, marked);
                for (std::size_t k = 0; k < config.attacks.size(); ++k) {
                    AttackSpec spec = config.attacks[k].spec;
                    spec.seed = derive_seed(config.bench.seed, static_cast<std::uint64_t>(t), k, spec.seed);
                    const Payload got = extract(apply_attack(marked, spec), params);
                    cells[k].mean_nc += nc(payload, got);
                    cells[k].mean_ber += ber(payload, got);
                }
            }
            q.psnr /= trials;
            q.ssim /= trials;
            report.quality.push_back(q);
            for (RobustnessCell& c : cells) {
                c.mean_nc /= trials;
                c.mean_ber /= trials;
                report.cells.push_back(std::move(c));
            }
        }
    }
    return report;
}

std::string report_csv(const BenchReport& report) {
    std::string out = "image,scheme,attack,attack_params,trials,psnr,ssim,mean_nc,mean_ber\n";
    char line[512];
    for (const QualityRow& q : report.quality) {
        std::snprintf(line, sizeof line, "%s,%s,,,%d,%.6f,%.6f,,\n", q.image.c_str(), to_string(q.scheme), q.trials,
                      q.psnr, q.ssim);
        out += line;
    }
    for (const RobustnessCell& c : report.cells) {
        std::snprintf(line, sizeof line, "%s,%s,%s,\"%s\",%d,,,%.6f,%.6f\n", c.image.c_str(), to_string(c.scheme),
                      c.attack.c_str(), c.spec.label().c_str(), c.trials, c.mean_nc, c.mean_ber);
        out += line;
    }
    return out;
}

std::string report_json(const BenchReport& report) {
    json j;
    j["seed"] = report.seed;
    if (report.timestamp) j["timestamp"] = *report.timestamp;
    j["config"] = report.config;
    json images = json::object();
    for (const QualityRow& q : report.quality) {
        images[q.image][to_string(q.scheme)]["imperceptibility"] = {
            {"trials", q.trials}, {"psnr", q.psnr}, {"ssim", q.ssim}};
    }
    for (const RobustnessCell& c : report.cells) {
        json cell = {{"trials", c.trials}, {"mean_nc", c.mean_nc}, {"mean_ber", c.mean_ber}};
        cell["attack"] = c.spec;
        images[c.image][to_string(c.scheme)]["attacks"][c.attack] = std::move(cell);
    }
    j["images"] = std::move(images);
    return j.dump(2) + "\n";
}

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report " + path);
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

}  // namespace

void write_report(const BenchReport& report, const ReportPaths& paths) {
    if (!paths.csv.empty()) write_text(paths.csv, report_csv(report));
    if (!paths.json.empty()) write_text(paths.json, report_json(report));
}

CalibrationResult calibrate(const ToolkitConfig& config, const GrayImage& cover) {
    config.validate();
    AttackSpec probe;
    probe.kind = AttackKind::median_filter;
    probe.kernel = 3;
    for (const NamedAttack& a : config.attacks)
        if (a.spec.kind == AttackKind::median_filter) {
            probe = a.spec;
            break;
        }

    const MacroBlockGrid grid = grid_for(cover.width(), cover.height());
    const EdgeMap edges = canny_edges(cover, config.embed.psychovisual);
    const std::vector<BlockStats> stats = block_stats(cover, edges, grid, config.embed.psychovisual);
    const int trials = config.bench.calibrate_trials;

    auto evaluate = [&](const EmbedParams& params, const std::vector<double>& sf) {
        CalibrationPoint pt;
        for (int t = 0; t < trials; ++t) {
            const Payload payload = trial_payload(config.bench.seed, t);
            const GrayImage marked = embed_with_strength(cover, payload, params, sf);
            pt.psnr += psnr(cover, marked);
            pt.mean_nc += nc(payload, extract(median_filter(marked, probe.kernel), params));
        }
        pt.psnr /= trials;
        pt.mean_nc /= trials;
        return pt;
    };
    const double min_psnr = config.bench.calibrate_min_psnr;
    auto pick = [&](const std::vector<CalibrationPoint>& grid_pts, bool& met) {
        const CalibrationPoint* best = nullptr;
        met = false;
        for (const CalibrationPoint& p : grid_pts) {
            const bool feasible = p.psnr >= min_psnr;
            if (feasible && !met) {
                best = &p;
                met = true;
            } else if (feasible == met && (!best || p.mean_nc > best->mean_nc)) {
                best = &p;
            }
        }
        return *best;
    };

    CalibrationResult result;
    EmbedParams params = config.embed;
    params.adaptive = true;
    for (int ai = 1; ai <= 10; ++ai)
        for (int bi = 1; bi <= 10; ++bi) {
            params.psychovisual.alpha = ai * 0.1;
            params.psychovisual.beta = bi * 0.05;
            std::vector<double> sf;
            for (const BlockStats& s : stats) sf.push_back(strength_factor(s, params.psychovisual));
            CalibrationPoint pt = evaluate(params, sf);
            pt.alpha = params.psychovisual.alpha;
            pt.beta = params.psychovisual.beta;
            result.adaptive_grid.push_back(pt);
        }
    result.best_adaptive = pick(result.adaptive_grid, result.adaptive_constraint_met);

    params = config.embed;
    params.adaptive = false;
    for (int k = 1; k <= 12; ++k) {
        params.fixed_sf = k * 0.01;
        CalibrationPoint pt = evaluate(params, std::vector<double>(grid.count(), params.fixed_sf));
        pt.fixed_sf = params.fixed_sf;
        result.fixed_grid.push_back(pt);
    }
    result.best_fixed = pick(result.fixed_grid, result.fixed_constraint_met);
    return result;
}

json calibration_json(const CalibrationResult& r) {
    auto point = [](const CalibrationPoint& p) {
        return json{{"alpha", p.alpha}, {"beta", p.beta}, {"fixed_sf", p.fixed_sf}, {"psnr", p.psnr},
                    {"mean_nc", p.mean_nc}};
    };
    json adaptive = json::array();
    for (const auto& p : r.adaptive_grid) adaptive.push_back(point(p));
    json fixed = json::array();
    for (const auto& p : r.fixed_grid) fixed.push_back(point(p));
    return json{{"best_adaptive", point(r.best_adaptive)},
                {"adaptive_constraint_met", r.adaptive_constraint_met},
                {"best_fixed", point(r.best_fixed)},
                {"fixed_constraint_met", r.fixed_constraint_met},
                {"adaptive_grid", std::move(adaptive)},
                {"fixed_grid", std::move(fixed)}};
}

}  // namespace adawm
