#include "anisoq/entropy.hpp"

#include "anisoq/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace anisoq {

namespace {

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw InvalidArgument("alpha must be finite and > 0, got " + std::to_string(alpha));
    }
}

// Entropy of {p_lo, p_hi}; callers pass the smaller probability first so the
// floating-point evaluation does not depend on which outcome is "1".
double binary_entropy(double p_lo, double p_hi, double alpha) {
    double h = 0.0;
    if (alpha == 1.0) {
        if (p_lo > 0.0) h -= p_lo * std::log2(p_lo);
        if (p_hi > 0.0) h -= p_hi * std::log2(p_hi);
    } else {
        const double lo = p_lo > 0.0 ? std::pow(p_lo, alpha) : 0.0;
        const double hi = p_hi > 0.0 ? std::pow(p_hi, alpha) : 0.0;
        h = std::log2(lo + hi) / (1.0 - alpha);
    }
    // Rounding can leave -0.0 or 1 + ulp.
    return std::clamp(h, 0.0, 1.0) + 0.0;
}

// Extracts 64 bits of a packed row starting at bit `pos`; bits past the row
// end read as zero.
std::uint64_t bits_at(std::span<const std::uint64_t> row, std::size_t pos) {
    const std::size_t q = pos / 64;
    const unsigned r = static_cast<unsigned>(pos % 64);
    std::uint64_t out = q < row.size() ? row[q] >> r : 0;
    if (r != 0 && q + 1 < row.size()) out |= row[q + 1] << (64 - r);
    return out;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (kernel_size < 3 || kernel_size % 2 == 0) {
        throw InvalidArgument("kernel size must be odd and >= 3, got " + std::to_string(kernel_size));
    }
    check_alpha(alpha);
    if (orientations.size() < 2) {
        throw InvalidArgument("anisotropy needs at least two orientations");
    }
}

ProbabilityMap probability_map(const BinaryLevel& level, const DirectionalKernel& kernel) {
    const auto d = static_cast<std::size_t>(kernel.size());
    if (level.width() < d || level.height() < d) {
        throw AnalysisError("image " + std::to_string(level.width()) + "x" + std::to_string(level.height()) +
                            " is smaller than the " + std::to_string(d) + "x" + std::to_string(d) + " kernel");
    }
    const int a = kernel.radius();
    ProbabilityMap map;
    map.level = level.level();
    map.theta_deg = kernel.theta_deg();
    map.kernel_size = kernel.size();
    map.width = level.width() - d + 1;
    map.height = level.height() - d + 1;
    map.counts.assign(map.width * map.height, 0);

    for (auto [dy, dx] : kernel.offsets()) {
        for (std::size_t j = 0; j < map.height; ++j) {
            const auto src = level.row_words(static_cast<std::size_t>(static_cast<long>(j) + a + dy));
            auto* out = map.counts.data() + j * map.width;
            const std::size_t start = static_cast<std::size_t>(a + dx);
            for (std::size_t i0 = 0; i0 < map.width; i0 += 64) {
                std::uint64_t chunk = bits_at(src, start + i0);
                const std::size_t n = std::min<std::size_t>(64, map.width - i0);
                for (std::size_t k = 0; k < n; ++k) out[i0 + k] += static_cast<std::uint8_t>((chunk >> k) & 1u);
            }
        }
    }
    return map;
}

double renyi_entropy(double p1, double alpha) {
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw InvalidArgument("probability must be in [0, 1], got " + std::to_string(p1));
    }
    check_alpha(alpha);
    const double p0 = 1.0 - p1;
    return binary_entropy(std::min(p0, p1), std::max(p0, p1), alpha);
}

double shannon_entropy(double p1) { return renyi_entropy(p1, 1.0); }

std::vector<double> entropy_table(int kernel_size, double alpha) {
    if (kernel_size < 1) throw InvalidArgument("kernel size must be positive");
    check_alpha(alpha);
    const auto d = static_cast<std::size_t>(kernel_size);
    std::vector<double> table(d + 1, 0.0);
    for (std::size_t c = 0; c <= d / 2; ++c) {
        const double lo = static_cast<double>(c) / static_cast<double>(d);
        const double hi = static_cast<double>(d - c) / static_cast<double>(d);
        table[c] = binary_entropy(lo, hi, alpha);
        table[d - c] = table[c];
    }
    return table;
}

double mean_entropy_from_histogram(std::span<const std::uint64_t> histogram, std::span<const double> table) {
    if (histogram.size() != table.size() || histogram.empty()) {
        throw InvalidArgument("histogram and entropy table sizes differ");
    }
    const std::size_t d = histogram.size() - 1;
    std::uint64_t total = 0;
    for (auto n : histogram) total += n;
    if (total == 0) throw AnalysisError("empty valid region");

    double sum = 0.0;
    for (std::size_t c = 0; c < (d + 1) / 2; ++c) {
        sum += static_cast<double>(histogram[c] + histogram[d - c]) * table[c];
    }
    if (d % 2 == 0) sum += static_cast<double>(histogram[d / 2]) * table[d / 2];
    return sum / static_cast<double>(total);
}

double level_directional_entropy(const BinaryLevel& level, const DirectionalKernel& kernel,
                                 const AnalysisConfig& config) {
    check_alpha(config.alpha);
    const auto map = probability_map(level, kernel);
    std::vector<std::uint64_t> histogram(static_cast<std::size_t>(kernel.size()) + 1, 0);
    for (auto c : map.counts) ++histogram[c];
    return mean_entropy_from_histogram(histogram, entropy_table(kernel.size(), config.alpha));
}

double population_stddev(std::span<const double> values) {
    if (values.size() < 2) throw InvalidArgument("standard deviation needs at least two values");
    // Σ_i Σ_j (x_i - x_j)² = 2·T²·σ²
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            const double diff = values[i] - values[j];
            acc += diff * diff;
        }
    }
    const double t = static_cast<double>(values.size());
    return std::sqrt(acc / (t * t));
}

LevelAnisotropy level_anisotropy(const BinaryLevel& level, const AnalysisConfig& config) {
    config.validate();
    LevelAnisotropy out;
    out.level = level.level();
    out.mean_entropy.reserve(config.orientations.size());
    for (double theta : config.orientations.angles()) {
        out.mean_entropy.push_back(level_directional_entropy(level, make_kernel(config.kernel_size, theta), config));
    }
    out.anisotropy = population_stddev(out.mean_entropy);
    return out;
}

double global_anisotropy(std::span<const LevelAnisotropy> levels) {
    const std::size_t n = levels.size();
    double total = 0.0;
    for (std::size_t lo = 0, hi = n; lo < hi;) {
        --hi;
        total += lo == hi ? levels[lo].anisotropy : levels[lo].anisotropy + levels[hi].anisotropy;
        ++lo;
    }
    return total;
}

AnisotropyProfile analyze_by_levels(const GrayImage& image, const AnalysisConfig& config) {
    config.validate();
    AnisotropyProfile profile;
    profile.config = config;
    profile.levels.reserve(kLevelCount);
    for (int l = 1; l <= kLevelCount; ++l) profile.levels.push_back(level_anisotropy(threshold(image, l), config));
    profile.global = global_anisotropy(profile.levels);
    return profile;
}

std::vector<RankedImage> rank(std::span<const GrayImage> images, const AnalysisConfig& config, unsigned threads) {
    if (images.empty()) throw InvalidArgument("nothing to rank");
    std::vector<RankedImage> ranked;
    ranked.reserve(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) ranked.push_back({i, analyze(images[i], config, threads).global});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedImage& a, const RankedImage& b) { return a.score > b.score; });
    return ranked;
}

}  // namespace anisoq
