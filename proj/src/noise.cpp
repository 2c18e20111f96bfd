#include "anisoq/noise.hpp"

#include "anisoq/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace anisoq {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent 64-bit draw number `stream` for pixel `index`.
std::uint64_t draw(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) noexcept {
    return mix(mix(seed) ^ mix(index * 4 + stream));
}

// Uniform on (0, 1].
double unit_open_low(std::uint64_t bits) noexcept {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Uniform on [0, 1).
double unit(std::uint64_t bits) noexcept { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Box-Muller, cosine branch.
double standard_normal(std::uint64_t seed, std::uint64_t index) noexcept {
    const double u1 = unit_open_low(draw(seed, index, 0));
    const double u2 = unit(draw(seed, index, 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint8_t to_pixel(double v) noexcept { return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0)); }

double realized_psnr(const GrayImage& image, NoiseKind kind, double param, std::uint64_t seed) {
    return psnr(image, degrade(image, NoiseSpec{kind, param, seed})).psnr_db;
}

}  // namespace

std::string_view to_string(NoiseKind kind) noexcept {
    switch (kind) {
        case NoiseKind::Gaussian: return "gaussian";
        case NoiseKind::Speckle: return "speckle";
        case NoiseKind::Impulsive: return "impulsive";
    }
    return "unknown";
}

std::optional<NoiseKind> parse_noise_kind(std::string_view name) noexcept {
    if (name == "gaussian") return NoiseKind::Gaussian;
    if (name == "speckle") return NoiseKind::Speckle;
    if (name == "impulsive") return NoiseKind::Impulsive;
    return std::nullopt;
}

void NoiseSpec::validate() const {
    if (!std::isfinite(param) || param < 0.0) {
        throw InvalidArgument("noise parameter must be finite and >= 0, got " + std::to_string(param));
    }
    if (kind == NoiseKind::Impulsive && param > 1.0) {
        throw InvalidArgument("impulsive density must be <= 1, got " + std::to_string(param));
    }
}

GrayImage degrade(const GrayImage& image, const NoiseSpec& spec) {
    spec.validate();
    GrayImage out = image;
    auto src = image.pixels();
    auto dst = out.pixels();
    switch (spec.kind) {
        case NoiseKind::Gaussian:
            if (spec.param == 0.0) break;
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] = to_pixel(src[i] + spec.param * standard_normal(spec.seed, i));
            }
            break;
        case NoiseKind::Speckle:
            if (spec.param == 0.0) break;
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] = to_pixel(src[i] * (1.0 + spec.param * standard_normal(spec.seed, i)));
            }
            break;
        case NoiseKind::Impulsive:
            // Separate draws for "corrupted?" and "salt or pepper?" keep the
            // corrupted set growing monotonically with the density.
            for (std::size_t i = 0; i < src.size(); ++i) {
                if (unit(draw(spec.seed, i, 2)) < spec.param) {
                    dst[i] = unit(draw(spec.seed, i, 3)) < 0.5 ? 0 : 255;
                }
            }
            break;
    }
    return out;
}

Calibration calibrate(const GrayImage& image, NoiseKind kind, double target_psnr_db, std::uint64_t seed,
                      const CalibrationOptions& options) {
    if (!std::isfinite(target_psnr_db)) {
        throw InvalidArgument("target PSNR must be finite");
    }
    double best_param = 0.0;
    double best_psnr = std::numeric_limits<double>::infinity();
    double best_error = std::numeric_limits<double>::infinity();
    auto probe = [&](double param) {
        const double p = realized_psnr(image, kind, param, seed);
        const double err = std::abs(p - target_psnr_db);
        if (err < best_error) {
            best_error = err;
            best_param = param;
            best_psnr = p;
        }
        return p;
    };

    // Bracket: low end is noise-free (PSNR = inf); grow the high end until the
    // realized PSNR drops below the target.
    double lo = 0.0;
    double hi = 0.0;
    if (kind == NoiseKind::Impulsive) {
        hi = 1.0;
        probe(hi);
    } else {
        double ceiling = kind == NoiseKind::Gaussian ? 1e4 : 1e3;
        hi = kind == NoiseKind::Gaussian ? 1.0 : 0.05;
        while (probe(hi) >= target_psnr_db && hi < ceiling) {
            lo = hi;
            hi *= 2.0;
        }
    }

    if (best_error > options.tolerance_db / 20.0) {
        for (int iter = 0; iter < options.max_iterations; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double p = probe(mid);
            if (best_error <= options.tolerance_db / 20.0) break;
            if (p >= target_psnr_db) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    if (!(best_error <= options.tolerance_db)) {
        throw CalibrationError("cannot reach " + std::to_string(target_psnr_db) + " dB with " +
                                   std::string(to_string(kind)) + " noise; best was " + std::to_string(best_psnr) +
                                   " dB at param " + std::to_string(best_param),
                               best_param, best_psnr);
    }
    return Calibration{NoiseSpec{kind, best_param, seed}, best_psnr};
}

}  // namespace anisoq
