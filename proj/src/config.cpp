#include "adawm/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

namespace adawm {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const char* where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw std::invalid_argument(std::string(where) + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known) throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

DctPos pos_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("DCT position must be [row, col]");
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

void to_json(json& j, const PsychovisualParams& p) {
    j = json{{"alpha", p.alpha},         {"beta", p.beta},           {"sf_min", p.sf_min},
             {"sf_max", p.sf_max},       {"canny_sigma", p.canny_sigma}, {"canny_low", p.canny_low},
             {"canny_high", p.canny_high}};
}

void from_json(const json& j, PsychovisualParams& p) {
    reject_unknown(j, "psychovisual", {"alpha", "beta", "sf_min", "sf_max", "canny_sigma", "canny_low", "canny_high"});
    read_opt(j, "alpha", p.alpha);
    read_opt(j, "beta", p.beta);
    read_opt(j, "sf_min", p.sf_min);
    read_opt(j, "sf_max", p.sf_max);
    read_opt(j, "canny_sigma", p.canny_sigma);
    read_opt(j, "canny_low", p.canny_low);
    read_opt(j, "canny_high", p.canny_high);
}

void to_json(json& j, const EmbedParams& p) {
    j = json{{"pos_a", {p.pos_a.row, p.pos_a.col}},
             {"pos_b", {p.pos_b.row, p.pos_b.col}},
             {"index_base", 0},
             {"redundancy", p.redundancy},
             {"magnitude_floor", p.magnitude_floor},
             {"repair_rounds", p.repair_rounds},
             {"adaptive", p.adaptive},
             {"fixed_sf", p.fixed_sf}};
}

void from_json(const json& j, EmbedParams& p) {
    reject_unknown(j, "embed",
                   {"pos_a", "pos_b", "index_base", "redundancy", "magnitude_floor", "repair_rounds", "adaptive",
                    "fixed_sf"});
    if (auto it = j.find("index_base"); it != j.end() && it->get<int>() != 0)
        throw std::invalid_argument("embed.index_base must be 0 (positions are zero-based)");
    if (auto it = j.find("pos_a"); it != j.end()) p.pos_a = pos_from_json(*it);
    if (auto it = j.find("pos_b"); it != j.end()) p.pos_b = pos_from_json(*it);
    read_opt(j, "redundancy", p.redundancy);
    read_opt(j, "magnitude_floor", p.magnitude_floor);
    read_opt(j, "repair_rounds", p.repair_rounds);
    read_opt(j, "adaptive", p.adaptive);
    read_opt(j, "fixed_sf", p.fixed_sf);
}

void to_json(json& j, const AttackSpec& a) {
    j = json{{"kind", to_string(a.kind)}};
    switch (a.kind) {
        case AttackKind::median_filter: j["kernel"] = a.kernel; break;
        case AttackKind::salt_pepper: j["density"] = a.density; break;
        case AttackKind::gaussian_noise: j["variance"] = a.variance; break;
        case AttackKind::jpeg: j["quality"] = a.quality; break;
        default: break;
    }
}

void from_json(const json& j, AttackSpec& a) {
    reject_unknown(j, "attack", {"name", "kind", "kernel", "density", "variance", "quality", "seed"});
    a.kind = attack_kind_from_string(j.at("kind").get<std::string>());
    read_opt(j, "kernel", a.kernel);
    read_opt(j, "density", a.density);
    read_opt(j, "variance", a.variance);
    read_opt(j, "quality", a.quality);
    read_opt(j, "seed", a.seed);
}

std::vector<NamedAttack> ToolkitConfig::default_attack_battery() {
    auto make = [](std::string name, AttackKind kind) {
        NamedAttack a{std::move(name), {}};
        a.spec.kind = kind;
        return a;
    };
    std::vector<NamedAttack> out;
    out.push_back(make("none", AttackKind::none));
    out.push_back(make("MF", AttackKind::median_filter));
    out.back().spec.kernel = 3;
    out.push_back(make("S&P", AttackKind::salt_pepper));
    out.back().spec.density = 0.01;
    out.push_back(make("HE", AttackKind::hist_equalize));
    for (double var : {0.003, 0.005}) {
        char name[32];
        std::snprintf(name, sizeof name, "GN%g", var);
        out.push_back(make(name, AttackKind::gaussian_noise));
        out.back().spec.variance = var;
    }
    for (int q : {30, 50, 70, 90}) {
        out.push_back(make("JPEG" + std::to_string(q), AttackKind::jpeg));
        out.back().spec.quality = q;
    }
    return out;
}

void ToolkitConfig::validate() const {
    embed.validate();
    for (const NamedAttack& a : attacks) {
        if (a.name.empty()) throw std::invalid_argument("every attack needs a name");
        a.spec.validate();
    }
    if (bench.trials < 1) throw std::invalid_argument("bench.trials must be at least 1");
    if (bench.calibrate_trials < 1) throw std::invalid_argument("bench.calibrate_trials must be at least 1");
}

void to_json(json& j, const ToolkitConfig& c) {
    json attacks = json::array();
    for (const NamedAttack& a : c.attacks) {
        json entry = a.spec;
        entry["name"] = a.name;
        attacks.push_back(std::move(entry));
    }
    json images = json::array();
    for (const ImageEntry& e : c.bench.images) images.push_back({{"name", e.name}, {"path", e.path}});
    j = json{{"psychovisual", c.embed.psychovisual},
             {"embed", c.embed},
             {"attacks", std::move(attacks)},
             {"bench",
              {{"trials", c.bench.trials},
               {"seed", c.bench.seed},
               {"images", std::move(images)},
               {"synthetic_fixtures", c.bench.synthetic_fixtures},
               {"calibrate_image", c.bench.calibrate_image},
               {"calibrate_trials", c.bench.calibrate_trials},
               {"calibrate_min_psnr", c.bench.calibrate_min_psnr}}},
             {"report", {{"csv", c.report.csv}, {"json", c.report.json}}}};
}

void from_json(const json& j, ToolkitConfig& c) {
    reject_unknown(j, "config", {"psychovisual", "embed", "attacks", "bench", "report"});
    if (auto it = j.find("psychovisual"); it != j.end()) from_json(*it, c.embed.psychovisual);
    if (auto it = j.find("embed"); it != j.end()) from_json(*it, c.embed);
    if (auto it = j.find("attacks"); it != j.end()) {
        if (!it->is_array()) throw std::invalid_argument("attacks must be an array");
        c.attacks.clear();
        for (const json& entry : *it) {
            NamedAttack a;
            from_json(entry, a.spec);
            a.name = entry.value("name", a.spec.label());
            c.attacks.push_back(std::move(a));
        }
    }
    if (auto it = j.find("bench"); it != j.end()) {
        const json& b = *it;
        reject_unknown(b, "bench",
                       {"trials", "seed", "images", "synthetic_fixtures", "calibrate_image", "calibrate_trials",
                        "calibrate_min_psnr"});
        read_opt(b, "trials", c.bench.trials);
        read_opt(b, "seed", c.bench.seed);
        read_opt(b, "synthetic_fixtures", c.bench.synthetic_fixtures);
        read_opt(b, "calibrate_image", c.bench.calibrate_image);
        read_opt(b, "calibrate_trials", c.bench.calibrate_trials);
        read_opt(b, "calibrate_min_psnr", c.bench.calibrate_min_psnr);
        if (auto im = b.find("images"); im != b.end()) {
            c.bench.images.clear();
            for (const json& e : *im) {
                reject_unknown(e, "bench.images[]", {"name", "path"});
                c.bench.images.push_back({e.at("name").get<std::string>(), e.at("path").get<std::string>()});
            }
        }
    }
    if (auto it = j.find("report"); it != j.end()) {
        reject_unknown(*it, "report", {"csv", "json"});
        read_opt(*it, "csv", c.report.csv);
        read_opt(*it, "json", c.report.json);
    }
}

ToolkitConfig parse_config(const std::string& text) {
    ToolkitConfig c;
    try {
        from_json(json::parse(text), c);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ToolkitConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ToolkitConfig c = parse_config(buf.str());
    // Relative image paths resolve against the config file's directory.
    for (ImageEntry& e : c.bench.images) {
        const std::filesystem::path p(e.path);
        if (p.is_relative()) e.path = (path.parent_path() / p).lexically_normal().string();
    }
    return c;
}

}  // namespace adawm
