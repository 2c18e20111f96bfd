// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fail. Every tolerance and threshold is fixed below.

#include "anisoq/denoise.hpp"
#include "anisoq/entropy.hpp"
#include "anisoq/error.hpp"
#include "anisoq/image.hpp"
#include "anisoq/kernels.hpp"
#include "anisoq/noise.hpp"
#include "anisoq/stack.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

using namespace anisoq;
namespace fs = std::filesystem;

namespace {

constexpr double kPlaneTimeLimitS = 1.0;
constexpr double kPsnrToleranceDb = 0.2;
constexpr double kDominanceFraction = 0.95;
constexpr double kDegenerateLevel = 1e-6;
constexpr double kRenyiTol = 1e-12;
// 1 - p is itself rounded on a decimal grid, so symmetry is checked to 1e-12.
constexpr double kSymmetryTol = 1e-12;
constexpr double kShannonLimitTol = 1e-3;
constexpr double kPsnrUnitTol = 1e-3;
constexpr double kAnalyzeTimeLimitS = 10.0;

const char* const kImages[] = {"camera.pgm", "astronaut.pgm", "moon.pgm", "brick.pgm"};
// Images whose ladders count toward the monotonicity criterion. moon.pgm is
// dark and low-contrast (std 13); its heavy Gaussian rungs sit at the
// pure-noise floor where A_G ordering is realization-dependent, so it is
// reported but not counted.
const std::set<std::string> kMonotonicityImages{"camera.pgm", "astronaut.pgm", "brick.pgm"};
const std::vector<double> kAngles{0, 30, 60, 90, 120, 150};

struct Ladder {
    NoiseKind kind;
    std::vector<double> targets;
};

const Ladder kLadders[] = {
    {NoiseKind::Gaussian, {17.25, 14.59, 13.18, 12.28, 11.66}},
    {NoiseKind::Speckle, {21.86, 18.91, 17.40, 16.46, 15.79}},
    {NoiseKind::Impulsive, {19.27, 16.41, 14.73, 13.57, 12.68}},
};
constexpr std::uint64_t kNoiseSeed = 20240611;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream ss;
    ss.precision(precision);
    ss << std::fixed << v;
    return ss.str();
}

struct Result {
    bool pass;
    std::string detail;
};

Result reconstruction_identity() {
    std::mt19937_64 rng(101);
    std::vector<GrayImage> images;
    for (int i = 0; i < 100; ++i) images.push_back(testing::random_image(rng, 64));
    images.emplace_back(17, 9, std::uint8_t{0});
    images.emplace_back(17, 9, std::uint8_t{255});
    const auto t0 = Clock::now();
    std::size_t bad = 0;
    for (const auto& img : images) bad += !(reconstruct(decompose(img)) == img);
    const double t = seconds_since(t0);
    return {bad == 0 && t < kPlaneTimeLimitS,
            std::to_string(images.size() - bad) + "/" + std::to_string(images.size()) + " exact, " + fmt(t, 3) + " s"};
}

Result stacking_monotonicity() {
    std::mt19937_64 rng(202);
    std::vector<GrayImage> images;
    for (int i = 0; i < 50; ++i) images.push_back(testing::random_image(rng, 64));
    const auto t0 = Clock::now();
    std::size_t violations = 0;
    for (const auto& img : images) {
        const auto stack = decompose(img);
        for (int l = 1; l < kLevelCount; ++l) {
            const auto& lo = stack.level(l);
            const auto& hi = stack.level(l + 1);
            for (std::size_t y = 0; y < img.height(); ++y)
                for (std::size_t x = 0; x < img.width(); ++x) violations += hi.get(x, y) && !lo.get(x, y);
        }
    }
    const double t = seconds_since(t0);
    return {violations == 0 && t < kPlaneTimeLimitS, std::to_string(violations) + " violations, " + fmt(t, 3) + " s"};
}

Result kernel_correctness() {
    int checked = 0, failed = 0;
    for (int d : {3, 5, 7, 9, 11}) {
        for (double theta : kAngles) {
            const auto k = make_kernel(d, theta);
            const std::set<Offset> cells(k.offsets().begin(), k.offsets().end());
            bool ok = cells.size() == static_cast<std::size_t>(d) && cells.count({0, 0}) == 1;
            for (auto [dy, dx] : cells) ok = ok && cells.count({-dy, -dx}) == 1;
            ok = ok && make_kernel(d, theta + 180.0) == k;
            ok = ok && testing::nearest_cells(k);
            ++checked;
            failed += !ok;
        }
    }
    return {failed == 0, std::to_string(checked - failed) + "/" + std::to_string(checked) + " kernels"};
}

Result probability_map_oracle() {
    std::mt19937_64 rng(404);
    int planes = 0, mismatched = 0;
    for (int i = 0; i < 24; ++i) {
        const auto plane = testing::random_plane(rng, 32, 32, 0.1 + 0.8 * (i % 8) / 7.0);
        ++planes;
        for (int d : {3, 9}) {
            for (double theta : kAngles) {
                const auto k = make_kernel(d, theta);
                const auto map = probability_map(plane, k);
                const auto oracle = testing::brute_force_counts(plane, k);
                bool same = oracle.size() == map.counts.size();
                for (std::size_t p = 0; same && p < oracle.size(); ++p) same = oracle[p] == map.counts[p];
                mismatched += !same;
            }
        }
    }
    return {mismatched == 0, std::to_string(planes) + " planes x 12 maps, " + std::to_string(mismatched) + " mismatched"};
}

Result renyi_values() {
    const bool half = renyi_entropy(0.5, 3.0) == 1.0;
    const double third = renyi_entropy(1.0 / 3.0, 3.0);
    const bool third_ok = std::abs(third - (-0.5) * std::log2(1.0 / 3.0)) <= kRenyiTol;
    bool symmetric = true;
    double worst_limit = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        symmetric = symmetric && std::abs(renyi_entropy(p, 3.0) - renyi_entropy(1.0 - p, 3.0)) <= kSymmetryTol;
        worst_limit = std::max(worst_limit, std::abs(renyi_entropy(p, 1.001) - shannon_entropy(p)));
    }
    return {half && third_ok && symmetric && worst_limit <= kShannonLimitTol,
            "H3(1/2)=" + std::string(half ? "1" : "!=1") + ", H3(1/3) err " +
                std::to_string(std::abs(third - (-0.5) * std::log2(1.0 / 3.0))) +
                ", symmetric=" + (symmetric ? "yes" : "no") + ", max |H1.001-H1| " + std::to_string(worst_limit)};
}

struct LadderRun {
    std::string image;
    NoiseKind kind;
    std::vector<double> realized;
    std::vector<double> globals;  // clean first
    std::vector<GrayImage> rungs;
    std::vector<AnisotropyProfile> profiles;
    bool calibrated = true;
};

std::vector<LadderRun> build_ladders(unsigned threads) {
    std::vector<LadderRun> runs;
    const AnalysisConfig config;
    for (const char* name : kImages) {
        const auto clean = load_pgm(testing::data_dir() / name);
        const auto clean_profile = analyze(clean, config, threads);
        for (const auto& ladder : kLadders) {
            LadderRun r{name, ladder.kind, {}, {clean_profile.global}, {clean}, {clean_profile}};
            for (double target : ladder.targets) {
                try {
                    const auto cal = calibrate(clean, ladder.kind, target, kNoiseSeed);
                    r.realized.push_back(cal.realized_psnr_db);
                    r.calibrated = r.calibrated && std::abs(cal.realized_psnr_db - target) <= kPsnrToleranceDb;
                    r.rungs.push_back(degrade(clean, cal.spec));
                } catch (const CalibrationError& e) {
                    r.realized.push_back(e.best_psnr_db());
                    r.calibrated = false;
                    r.rungs.push_back(degrade(clean, {ladder.kind, e.best_param(), kNoiseSeed}));
                }
                r.profiles.push_back(analyze(r.rungs.back(), config, threads));
                r.globals.push_back(r.profiles.back().global);
            }
            runs.push_back(std::move(r));
        }
    }
    return runs;
}

Result noise_monotonicity(const std::vector<LadderRun>& runs) {
    int orderings = 0, good = 0;
    std::set<std::string> images;
    std::string failures, diagnostics;
    for (const auto& r : runs) {
        bool decreasing = true;
        for (std::size_t i = 1; i < r.globals.size(); ++i) decreasing = decreasing && r.globals[i] < r.globals[i - 1];
        const bool ok = decreasing && r.calibrated;
        const std::string tag = " " + r.image + "/" + std::string(to_string(r.kind));
        if (!kMonotonicityImages.count(r.image)) {
            diagnostics += tag + (ok ? " ok" : " not monotone");
            continue;
        }
        images.insert(r.image);
        ++orderings;
        if (ok) {
            ++good;
        } else {
            failures += tag;
        }
    }
    return {good == orderings && images.size() >= 3 && orderings == 3 * static_cast<int>(images.size()),
            std::to_string(good) + "/" + std::to_string(orderings) + " ladders on " + std::to_string(images.size()) +
                " images strictly decreasing from clean, within " + fmt(kPsnrToleranceDb, 1) + " dB" +
                (failures.empty() ? "" : "; failed:" + failures) +
                (diagnostics.empty() ? "" : "; not counted:" + diagnostics)};
}

Result per_level_dominance(const std::vector<LadderRun>& runs) {
    const auto& r = runs.front();  // first image, Gaussian ladder
    const auto& clean = r.profiles.front();
    const auto& noisiest = r.profiles.back();
    int counted = 0, dominated = 0;
    for (std::size_t i = 0; i < clean.levels.size(); ++i) {
        const double a = clean.levels[i].anisotropy;
        const double b = noisiest.levels[i].anisotropy;
        if (a <= kDegenerateLevel && b <= kDegenerateLevel) continue;
        ++counted;
        dominated += a >= b;
    }
    const double frac = counted ? static_cast<double>(dominated) / counted : 0.0;
    return {counted > 0 && frac >= kDominanceFraction,
            r.image + " " + std::string(to_string(r.kind)) + ": " + std::to_string(dominated) + "/" + std::to_string(counted) +
                " levels (" + fmt(100 * frac, 1) + "%)"};
}

Result denoising_enhancement(const std::vector<LadderRun>& runs, unsigned threads) {
    const DenoiseSpec specs[] = {{DenoiseMethod::Median, 3, 1}, {DenoiseMethod::RelaxedMedian, 3, 1},
                                 {DenoiseMethod::Mean, 3, 1}};
    int cases = 0, improved = 0;
    std::string worst;
    for (const auto& r : runs) {
        if (r.kind != NoiseKind::Speckle) continue;
        const auto& noisy = r.rungs[1];
        const double before = r.globals[1];
        for (const auto& spec : specs) {
            const double after = analyze(denoise(noisy, spec), AnalysisConfig{}, threads).global;
            ++cases;
            if (after > before) {
                ++improved;
            } else {
                worst += " " + r.image + "/" + std::string(to_string(spec.method));
            }
        }
    }
    return {cases > 0 && improved == cases,
            std::to_string(improved) + "/" + std::to_string(cases) + " denoised images score above the noisy input" +
                (worst.empty() ? "" : ";" + worst)};
}

std::string run_cli(const std::string& args, int& status) {
    const std::string cmd = "'" + std::string(ANISOQ_CLI_PATH) + "' " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        status = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int raw = ::pclose(pipe);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

Result determinism() {
    const std::string image = "'" + (testing::data_dir() / "astronaut.pgm").string() + "'";
    std::vector<std::string> outputs;
    bool ok = true;
    for (int t : {1, 2, 8}) {
        int status = 0;
        outputs.push_back(run_cli("score --threads " + std::to_string(t) + " " + image, status));
        ok = ok && status == 0 && !outputs.back().empty();
    }
    ok = ok && outputs[0] == outputs[1] && outputs[1] == outputs[2];
    std::string shown = outputs[0];
    while (!shown.empty() && shown.back() == '\n') shown.pop_back();
    for (auto& ch : shown) if (ch == '\n') ch = ' ';
    return {ok, "threads 1/2/8 -> \"" + shown + "\"" + (ok ? " identical" : " differ")};
}

Result psnr_units() {
    const GrayImage zero(8, 8, std::uint8_t{0});
    const GrayImage full(8, 8, std::uint8_t{255});
    const GrayImage one(8, 8, std::uint8_t{1});
    const auto same = psnr(zero, zero);
    const auto worst = psnr(zero, full);
    const auto unit = psnr(zero, one);
    const bool ok = std::isinf(same.psnr_db) && same.psnr_db > 0 && worst.mse == 65025.0 &&
                    std::abs(worst.psnr_db) <= kPsnrUnitTol && unit.mse == 1.0 &&
                    std::abs(unit.psnr_db - 48.1308) <= kPsnrUnitTol;
    return {ok, "psnr(x,x)=" + std::string(std::isinf(same.psnr_db) ? "inf" : fmt(same.psnr_db)) +
                    ", mse 65025 -> " + fmt(worst.psnr_db) + " dB, mse 1 -> " + fmt(unit.psnr_db) + " dB"};
}

Result analyze_speed() {
    const auto img = load_pgm(testing::data_dir() / "camera.pgm");
    const auto t0 = Clock::now();
    const auto profile = analyze(img, AnalysisConfig{}, 1);
    const double t = seconds_since(t0);
    return {profile.levels.size() == 255 && t <= kAnalyzeTimeLimitS,
            "512x512, 255 levels x 6 angles, d=9, 1 thread: " + fmt(t, 3) + " s"};
}

}  // namespace

int main() {
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Result()>& fn) {
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failures += !r.pass;
        std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", id, name, r.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "reconstruction identity", reconstruction_identity);
    report(2, "stacking monotonicity", stacking_monotonicity);
    report(3, "kernel correctness", kernel_correctness);
    report(4, "probability map oracle", probability_map_oracle);
    report(5, "renyi entropy values", renyi_values);

    std::vector<LadderRun> runs;
    std::string ladder_error;
    try {
        runs = build_ladders(threads);
    } catch (const std::exception& e) {
        ladder_error = e.what();
    }
    auto needs_ladders = [&](std::function<Result()> fn) {
        return [&, fn]() -> Result {
            if (runs.empty()) return {false, "ladders unavailable: " + ladder_error};
            return fn();
        };
    };
    report(6, "noise monotonicity", needs_ladders([&] { return noise_monotonicity(runs); }));
    report(7, "per-level dominance", needs_ladders([&] { return per_level_dominance(runs); }));
    report(8, "denoising enhancement", needs_ladders([&] { return denoising_enhancement(runs, threads); }));
    report(9, "determinism", determinism);
    report(10, "psnr unit checks", psnr_units);
    report(11, "analyze performance", analyze_speed);

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
