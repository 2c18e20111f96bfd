#pragma once

#include "anisoq/image.hpp"

#include <optional>
#include <string_view>

namespace anisoq {

enum class DenoiseMethod { Median, RelaxedMedian, Mean };

std::string_view to_string(DenoiseMethod method) noexcept;
/// Accepts "median", "relaxed-median", "mean".
std::optional<DenoiseMethod> parse_denoise_method(std::string_view name) noexcept;

struct DenoiseSpec {
    DenoiseMethod method = DenoiseMethod::Median;
    /// Odd side of the square window.
    int window = 3;
    /// Half-width of the accepted rank band around the median (relaxed
    /// median only).
    int relax_rank = 1;

    /// Throws InvalidArgument unless window is odd and >= 3 and
    /// 0 <= relax_rank <= (window² - 1) / 2.
    void validate() const;
};

/// Window filters with replicate padding; output has the input's size.
///  median:         window median
///  relaxed-median: keeps the pixel when it lies between the order statistics
///                  at ranks m - r and m + r (m the median rank), otherwise
///                  the median
///  mean:           window average rounded half up
/// Throws InvalidArgument if the window exceeds the image on either axis.
GrayImage denoise(const GrayImage& image, const DenoiseSpec& spec);

}  // namespace anisoq
