// anisoq command-line front end. Talks to the library only through the C API.

#include "anisoq/anisoq.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kAnalysis = 3 };

class CommandError : public std::runtime_error {
public:
    CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

int exit_code_for(anisoq_status status) {
    switch (status) {
        case ANISOQ_OK: return kOk;
        case ANISOQ_ERR_INVALID_ARGUMENT: return kUsage;
        case ANISOQ_ERR_IO:
        case ANISOQ_ERR_FORMAT: return kIo;
        default: return kAnalysis;
    }
}

void check(anisoq_status status, const std::string& context) {
    if (status != ANISOQ_OK) {
        throw CommandError(exit_code_for(status), context + ": " + anisoq_last_error());
    }
}

struct ImageDeleter {
    void operator()(anisoq_image* p) const noexcept { anisoq_image_destroy(p); }
};
struct ProfileDeleter {
    void operator()(anisoq_profile* p) const noexcept { anisoq_profile_destroy(p); }
};
using ImagePtr = std::unique_ptr<anisoq_image, ImageDeleter>;
using ProfilePtr = std::unique_ptr<anisoq_profile, ProfileDeleter>;

ImagePtr load(const std::string& path) {
    anisoq_image* raw = nullptr;
    check(anisoq_image_load_pgm(path.c_str(), &raw), "cannot load '" + path + "'");
    return ImagePtr(raw);
}

void save(const anisoq_image* image, const std::string& path) {
    check(anisoq_image_save_pgm(image, path.c_str()), "cannot save '" + path + "'");
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::vector<double> parse_orientations(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw CommandError(kUsage, "cannot parse orientation '" + token + "'");
        }
    }
    if (out.empty() || (!csv.empty() && csv.back() == ',')) {
        throw CommandError(kUsage, "orientation list is empty or malformed");
    }
    return out;
}

struct AnalysisFlags {
    int kernel_size = 9;
    double alpha = 3.0;
    std::string orientations = "0,30,60,90,120,150";
    std::optional<unsigned> threads;
    std::string normalize;

    void attach(CLI::App* cmd) {
        cmd->add_option("--d", kernel_size, "Directional kernel size (odd, >= 3)")->capture_default_str();
        cmd->add_option("--alpha", alpha, "Renyi entropy order (1 = Shannon)")->capture_default_str();
        cmd->add_option("--orientations", orientations, "Comma-separated angles in degrees")
            ->capture_default_str();
        cmd->add_option("--threads", threads, "Worker threads (default: $ANISOQ_THREADS or all cores)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--normalize", normalize, "Also report the global index divided by the level count")
            ->check(CLI::IsMember({"levels"}));
    }

    bool per_level() const { return normalize == "levels"; }
};

struct AnalysisSetup {
    std::vector<double> angles;
    anisoq_analysis_config config{};
};

unsigned resolve_threads(const std::optional<unsigned>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ANISOQ_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long n = std::strtoul(env, &end, 10);
        if (*end != '\0' || n == 0) throw CommandError(kUsage, "ANISOQ_THREADS must be a positive integer");
        return static_cast<unsigned>(n);
    }
    return 0;
}

AnalysisSetup make_setup(const AnalysisFlags& flags) {
    AnalysisSetup s;
    s.angles = parse_orientations(flags.orientations);
    anisoq_analysis_config_init(&s.config);
    s.config.kernel_size = flags.kernel_size;
    s.config.alpha = flags.alpha;
    s.config.orientations = s.angles.data();
    s.config.orientation_count = s.angles.size();
    s.config.threads = resolve_threads(flags.threads);
    return s;
}

json config_json(const AnalysisSetup& s) {
    return json{{"kernel_size", s.config.kernel_size},
                {"alpha", s.config.alpha},
                {"orientations", s.angles},
                {"border_policy", "valid-only"}};
}

json report(const std::string& command) {
    return json{{"command", command}, {"tool_version", anisoq_version_string()}};
}

ProfilePtr run_analysis(const anisoq_image* image, const AnalysisSetup& setup, const std::string& path) {
    anisoq_profile* raw = nullptr;
    check(anisoq_analyze(image, &setup.config, &raw), "cannot analyze '" + path + "'");
    return ProfilePtr(raw);
}

// Output is assembled in memory and written only once the command succeeded.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw CommandError(kIo, "cannot write to standard output");
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) throw CommandError(kIo, "cannot write '" + out_path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string analyze_output(const std::string& path, const std::string& format, bool per_orientation,
                           const AnalysisFlags& flags) {
    const auto setup = make_setup(flags);
    const auto image = load(path);
    const auto profile = run_analysis(image.get(), setup, path);
    const double global = anisoq_profile_global(profile.get());
    const std::size_t levels = anisoq_profile_level_count(profile.get());
    const std::size_t orientations = anisoq_profile_orientation_count(profile.get());

    auto level_at = [&](std::size_t i) {
        int level = 0;
        double value = 0.0;
        check(anisoq_profile_level(profile.get(), i, &level, &value), "profile");
        return std::pair{level, value};
    };
    auto mean_at = [&](std::size_t i, std::size_t t) {
        double v = 0.0;
        check(anisoq_profile_mean_entropy(profile.get(), i, t, &v), "profile");
        return v;
    };

    if (format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < levels; ++i) {
            auto [level, value] = level_at(i);
            json row{{"level", level}, {"anisotropy", value}};
            if (per_orientation) {
                json means = json::array();
                for (std::size_t t = 0; t < orientations; ++t) means.push_back(mean_at(i, t));
                row["mean_entropy"] = means;
            }
            rows.push_back(row);
        }
        json j = report("analyze");
        j["config"] = config_json(setup);
        j["input"] = path;
        j["results"] = json{{"levels", rows}, {"global", global}};
        if (flags.per_level()) j["results"]["global_per_level"] = global / ANISOQ_LEVEL_COUNT;
        return dump(j);
    }

    std::string out = "level,anisotropy\n";
    for (std::size_t i = 0; i < levels; ++i) {
        auto [level, value] = level_at(i);
        out += std::to_string(level) + "," + fmt(value) + "\n";
    }
    out += "global," + fmt(global) + "\n";
    if (flags.per_level()) out += "global_per_level," + fmt(global / ANISOQ_LEVEL_COUNT) + "\n";
    if (per_orientation) {
        out += "level,theta_deg,mean_entropy\n";
        for (std::size_t i = 0; i < levels; ++i) {
            const int level = level_at(i).first;
            for (std::size_t t = 0; t < orientations; ++t) {
                double theta = 0.0;
                check(anisoq_profile_orientation(profile.get(), t, &theta), "profile");
                out += std::to_string(level) + "," + fmt(theta) + "," + fmt(mean_at(i, t)) + "\n";
            }
        }
    }
    return out;
}

std::string score_output(const std::string& path, const std::string& format, const AnalysisFlags& flags) {
    const auto setup = make_setup(flags);
    const auto image = load(path);
    const auto profile = run_analysis(image.get(), setup, path);
    const double global = anisoq_profile_global(profile.get());
    if (format == "json") {
        json j = report("score");
        j["config"] = config_json(setup);
        j["input"] = path;
        j["results"] = json{{"global", global}};
        if (flags.per_level()) j["results"]["global_per_level"] = global / ANISOQ_LEVEL_COUNT;
        return dump(j);
    }
    std::string out = "global," + fmt(global) + "\n";
    if (flags.per_level()) out += "global_per_level," + fmt(global / ANISOQ_LEVEL_COUNT) + "\n";
    return out;
}

std::string rank_output(const std::vector<std::string>& paths, const std::string& format,
                        const AnalysisFlags& flags) {
    if (paths.size() < 2) throw CommandError(kUsage, "rank needs at least two images");
    const auto setup = make_setup(flags);
    std::vector<ImagePtr> images;
    std::vector<const anisoq_image*> handles;
    for (const auto& p : paths) {
        images.push_back(load(p));
        handles.push_back(images.back().get());
    }
    for (std::size_t i = 1; i < handles.size(); ++i) {
        if (anisoq_image_width(handles[i]) != anisoq_image_width(handles[0]) ||
            anisoq_image_height(handles[i]) != anisoq_image_height(handles[0])) {
            std::cerr << "warning: '" << paths[i] << "' differs in size from '" << paths[0]
                      << "'; ranking assumes registered images of one scene\n";
        }
    }
    std::vector<std::size_t> order(handles.size());
    std::vector<double> scores(handles.size());
    check(anisoq_rank(handles.data(), handles.size(), &setup.config, order.data(), scores.data()), "rank");

    if (format == "json") {
        json rows = json::array();
        for (std::size_t r = 0; r < order.size(); ++r) {
            json row{{"rank", r + 1}, {"index", order[r]}, {"path", paths[order[r]]}, {"global", scores[r]}};
            if (flags.per_level()) row["global_per_level"] = scores[r] / ANISOQ_LEVEL_COUNT;
            rows.push_back(row);
        }
        json j = report("rank");
        j["config"] = config_json(setup);
        j["results"] = json{{"ranking", rows}};
        return dump(j);
    }
    std::string out = flags.per_level() ? "rank,index,path,global,global_per_level\n" : "rank,index,path,global\n";
    for (std::size_t r = 0; r < order.size(); ++r) {
        out += std::to_string(r + 1) + "," + std::to_string(order[r]) + "," + paths[order[r]] + "," + fmt(scores[r]);
        if (flags.per_level()) out += "," + fmt(scores[r] / ANISOQ_LEVEL_COUNT);
        out += "\n";
    }
    return out;
}

std::string psnr_output(const std::string& reference_path, const std::string& test_path, const std::string& format) {
    const auto reference = load(reference_path);
    const auto test = load(test_path);
    if (anisoq_image_width(reference.get()) != anisoq_image_width(test.get()) ||
        anisoq_image_height(reference.get()) != anisoq_image_height(test.get())) {
        throw CommandError(kAnalysis, "psnr: images differ in size");
    }
    double mse = 0.0;
    double psnr_db = 0.0;
    check(anisoq_psnr(reference.get(), test.get(), &mse, &psnr_db), "psnr");
    if (format == "json") {
        json j = report("psnr");
        j["inputs"] = json{reference_path, test_path};
        j["results"] = json{{"mse", mse}, {"psnr_db", json_number(psnr_db)}};
        return dump(j);
    }
    return "mse,psnr_db\n" + fmt(mse) + "," + fmt(psnr_db) + "\n";
}

struct DegradeFlags {
    std::string noise;
    std::optional<double> param;
    std::optional<double> target_psnr;
    std::uint64_t seed = 0;
    std::string out;
};

anisoq_noise_kind noise_kind(const std::string& name) {
    if (name == "gaussian") return ANISOQ_NOISE_GAUSSIAN;
    if (name == "speckle") return ANISOQ_NOISE_SPECKLE;
    return ANISOQ_NOISE_IMPULSIVE;
}

std::string degrade_output(const std::string& path, const std::string& format, const DegradeFlags& flags) {
    if (flags.param.has_value() == flags.target_psnr.has_value()) {
        throw CommandError(kUsage, "degrade needs exactly one of --param or --target-psnr");
    }
    const auto image = load(path);
    const auto kind = noise_kind(flags.noise);
    double param = flags.param.value_or(0.0);
    if (flags.target_psnr) {
        check(anisoq_calibrate(image.get(), kind, *flags.target_psnr, flags.seed, &param, nullptr), "calibration");
    }
    anisoq_image* raw = nullptr;
    check(anisoq_degrade(image.get(), kind, param, flags.seed, &raw), "degrade");
    const ImagePtr degraded(raw);
    double psnr_db = 0.0;
    check(anisoq_psnr(image.get(), degraded.get(), nullptr, &psnr_db), "psnr");
    save(degraded.get(), flags.out);

    if (format == "json") {
        json j = report("degrade");
        j["input"] = path;
        j["output"] = flags.out;
        j["results"] = json{{"kind", flags.noise},
                            {"param", param},
                            {"seed", flags.seed},
                            {"psnr_db", json_number(psnr_db)}};
        if (flags.target_psnr) j["results"]["target_psnr_db"] = *flags.target_psnr;
        return dump(j);
    }
    return "kind,param,seed,psnr_db\n" + flags.noise + "," + fmt(param) + "," + std::to_string(flags.seed) + "," +
           fmt(psnr_db) + "\n";
}

struct DenoiseFlags {
    std::string method = "median";
    int window = 3;
    int relax_rank = 1;
    std::string out;
};

std::string denoise_output(const std::string& path, const std::string& format, const DenoiseFlags& flags) {
    const auto image = load(path);
    const anisoq_denoise_method method = flags.method == "median"           ? ANISOQ_DENOISE_MEDIAN
                                         : flags.method == "relaxed-median" ? ANISOQ_DENOISE_RELAXED_MEDIAN
                                                                            : ANISOQ_DENOISE_MEAN;
    anisoq_image* raw = nullptr;
    check(anisoq_denoise(image.get(), method, flags.window, flags.relax_rank, &raw), "denoise");
    const ImagePtr result(raw);
    save(result.get(), flags.out);
    if (format == "json") {
        json j = report("denoise");
        j["input"] = path;
        j["output"] = flags.out;
        j["results"] = json{{"method", flags.method}, {"window", flags.window}, {"relax_rank", flags.relax_rank}};
        return dump(j);
    }
    return "method,window,relax_rank,output\n" + flags.method + "," + std::to_string(flags.window) + "," +
           std::to_string(flags.relax_rank) + "," + flags.out + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"No-reference image quality from the anisotropy of bit-plane directional entropy"};
    app.set_version_flag("--version", std::string("anisoq ") + anisoq_version_string());
    app.require_subcommand(1);

    std::string format = "csv";
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    std::string input;
    std::string report_path;
    AnalysisFlags analysis;
    bool per_orientation = false;

    auto* analyze = app.add_subcommand("analyze", "Per-level anisotropy profile and global index");
    analyze->add_option("image", input, "Input PGM")->required();
    analysis.attach(analyze);
    add_format(analyze);
    analyze->add_flag("--per-orientation", per_orientation, "Also emit per-level, per-angle mean entropies");
    analyze->add_option("--out", report_path, "Write the report here instead of stdout");

    auto* score = app.add_subcommand("score", "Global anisotropy index only");
    score->add_option("image", input, "Input PGM")->required();
    analysis.attach(score);
    add_format(score);
    score->add_option("--out", report_path, "Write the report here instead of stdout");

    std::vector<std::string> rank_inputs;
    auto* rank = app.add_subcommand("rank", "Order images of one scene from least to most noisy");
    rank->add_option("images", rank_inputs, "Input PGMs (at least two)")->required()->expected(2, -1);
    analysis.attach(rank);
    add_format(rank);
    rank->add_option("--out", report_path, "Write the report here instead of stdout");

    DegradeFlags degrade_flags;
    auto* degrade = app.add_subcommand("degrade", "Add seeded synthetic noise");
    degrade->add_option("image", input, "Input PGM")->required();
    degrade->add_option("--noise", degrade_flags.noise, "Noise model")
        ->required()
        ->check(CLI::IsMember({"gaussian", "speckle", "impulsive"}));
    degrade->add_option("--param", degrade_flags.param, "Noise strength (sigma or density)");
    degrade->add_option("--target-psnr", degrade_flags.target_psnr, "Calibrate the strength to this PSNR (dB)");
    degrade->add_option("--seed", degrade_flags.seed, "Random seed")->capture_default_str();
    degrade->add_option("--out", degrade_flags.out, "Output PGM")->required();
    add_format(degrade);

    DenoiseFlags denoise_flags;
    auto* denoise = app.add_subcommand("denoise", "Apply a reference denoising filter");
    denoise->add_option("image", input, "Input PGM")->required();
    denoise->add_option("--method", denoise_flags.method, "Filter")
        ->check(CLI::IsMember({"median", "relaxed-median", "mean"}))
        ->capture_default_str();
    denoise->add_option("--window", denoise_flags.window, "Odd window size")->capture_default_str();
    denoise->add_option("--relax-rank", denoise_flags.relax_rank, "Relaxed-median rank band half-width")
        ->capture_default_str();
    denoise->add_option("--out", denoise_flags.out, "Output PGM")->required();
    add_format(denoise);

    std::vector<std::string> psnr_inputs;
    auto* psnr = app.add_subcommand("psnr", "Full-reference MSE and PSNR");
    psnr->add_option("images", psnr_inputs, "Reference and test PGM")->required()->expected(2);
    add_format(psnr);
    psnr->add_option("--out", report_path, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        std::string text;
        if (analyze->parsed()) {
            text = analyze_output(input, format, per_orientation, analysis);
        } else if (score->parsed()) {
            text = score_output(input, format, analysis);
        } else if (rank->parsed()) {
            text = rank_output(rank_inputs, format, analysis);
        } else if (psnr->parsed()) {
            text = psnr_output(psnr_inputs[0], psnr_inputs[1], format);
        } else if (degrade->parsed()) {
            text = degrade_output(input, format, degrade_flags);
        } else if (denoise->parsed()) {
            text = denoise_output(input, format, denoise_flags);
        }
        emit(text, degrade->parsed() || denoise->parsed() ? std::string{} : report_path);
    } catch (const CommandError& e) {
        std::cerr << "anisoq: " << e.what() << "\n";
        return e.code();
    } catch (const std::exception& e) {
        std::cerr << "anisoq: " << e.what() << "\n";
        return kAnalysis;
    }
    return kOk;
}
