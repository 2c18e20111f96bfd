#pragma once

#include "anisoq/image.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace anisoq {

enum class NoiseKind { Gaussian, Speckle, Impulsive };

std::string_view to_string(NoiseKind kind) noexcept;
/// Accepts "gaussian", "speckle", "impulsive".
std::optional<NoiseKind> parse_noise_kind(std::string_view name) noexcept;

/// Seeded degradation. `param` is σ in gray levels for gaussian, σ of the
/// multiplicative factor for speckle and the corruption density for
/// impulsive noise.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::Gaussian;
    double param = 0.0;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument for a negative or non-finite param, or an
    /// impulsive density above 1.
    void validate() const;
};

/// gaussian:  y = clamp(round(x + σ·n))
/// speckle:   y = clamp(round(x·(1 + σ·n)))
/// impulsive: with probability p the pixel becomes 0 or 255 (even odds).
/// n ~ N(0, 1) is drawn from a stream keyed by (seed, pixel index), so the
/// output depends only on the image and the spec.
GrayImage degrade(const GrayImage& image, const NoiseSpec& spec);

struct CalibrationOptions {
    double tolerance_db = 0.2;
    int max_iterations = 64;
};

struct Calibration {
    NoiseSpec spec;
    double realized_psnr_db = 0.0;
};

/// Bisects `param` until the realized PSNR of degrade(image, spec) is within
/// tolerance of the target. Throws CalibrationError with the best attempt if
/// the target cannot be met, InvalidArgument for a non-finite target.
Calibration calibrate(const GrayImage& image, NoiseKind kind, double target_psnr_db, std::uint64_t seed,
                      const CalibrationOptions& options = {});

}  // namespace anisoq
