#include "anisoq/denoise.hpp"

#include "anisoq/error.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace anisoq {

std::string_view to_string(DenoiseMethod method) noexcept {
    switch (method) {
        case DenoiseMethod::Median: return "median";
        case DenoiseMethod::RelaxedMedian: return "relaxed-median";
        case DenoiseMethod::Mean: return "mean";
    }
    return "unknown";
}

std::optional<DenoiseMethod> parse_denoise_method(std::string_view name) noexcept {
    if (name == "median") return DenoiseMethod::Median;
    if (name == "relaxed-median") return DenoiseMethod::RelaxedMedian;
    if (name == "mean") return DenoiseMethod::Mean;
    return std::nullopt;
}

void DenoiseSpec::validate() const {
    if (window < 3 || window % 2 == 0) {
        throw InvalidArgument("denoise window must be odd and >= 3, got " + std::to_string(window));
    }
    const int max_rank = (window * window - 1) / 2;
    if (relax_rank < 0 || relax_rank > max_rank) {
        throw InvalidArgument("relax rank must be in [0, " + std::to_string(max_rank) + "], got " +
                              std::to_string(relax_rank));
    }
}

GrayImage denoise(const GrayImage& image, const DenoiseSpec& spec) {
    spec.validate();
    const auto w = static_cast<std::size_t>(spec.window);
    if (image.width() < w || image.height() < w) {
        throw InvalidArgument("window " + std::to_string(w) + " is larger than the " + std::to_string(image.width()) +
                              "x" + std::to_string(image.height()) + " image");
    }
    const long a = spec.window / 2;
    const long width = static_cast<long>(image.width());
    const long height = static_cast<long>(image.height());
    const std::size_t n = w * w;
    const std::size_t m = n / 2;
    const auto r = static_cast<std::size_t>(spec.relax_rank);

    GrayImage out(image.width(), image.height());
    std::vector<std::uint8_t> window(n);
    for (long y = 0; y < height; ++y) {
        for (long x = 0; x < width; ++x) {
            std::size_t k = 0;
            for (long dy = -a; dy <= a; ++dy) {
                const long yy = std::clamp(y + dy, 0L, height - 1);
                for (long dx = -a; dx <= a; ++dx) {
                    const long xx = std::clamp(x + dx, 0L, width - 1);
                    window[k++] = image.at(static_cast<std::size_t>(xx), static_cast<std::size_t>(yy));
                }
            }
            const auto center = image.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
            std::uint8_t value = 0;
            switch (spec.method) {
                case DenoiseMethod::Median:
                    std::nth_element(window.begin(), window.begin() + static_cast<long>(m), window.end());
                    value = window[m];
                    break;
                case DenoiseMethod::RelaxedMedian:
                    std::sort(window.begin(), window.end());
                    value = (window[m - r] <= center && center <= window[m + r]) ? center : window[m];
                    break;
                case DenoiseMethod::Mean: {
                    unsigned sum = 0;
                    for (auto v : window) sum += v;
                    value = static_cast<std::uint8_t>((sum + static_cast<unsigned>(n) / 2) / static_cast<unsigned>(n));
                    break;
                }
            }
            out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = value;
        }
    }
    return out;
}

}  // namespace anisoq
