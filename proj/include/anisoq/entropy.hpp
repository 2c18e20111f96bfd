#pragma once

#include "anisoq/image.hpp"
#include "anisoq/kernels.hpp"
#include "anisoq/stack.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace anisoq {

/// Directional probabilities are only defined where the whole kernel fits
/// inside the image.
enum class BorderPolicy { ValidOnly };

struct AnalysisConfig {
    int kernel_size = 9;
    /// Rényi order; 1 selects the Shannon form.
    double alpha = 3.0;
    OrientationSet orientations;
    BorderPolicy border_policy = BorderPolicy::ValidOnly;

    /// Throws InvalidArgument on an even or sub-3 kernel, a non-positive or
    /// non-finite alpha, or fewer than two orientations.
    void validate() const;

    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

/// Fraction of set bits under one oriented kernel, evaluated over the valid
/// region. Stored as integer counts so every value is an exact multiple of 1/d.
struct ProbabilityMap {
    int level = 0;
    double theta_deg = 0.0;
    int kernel_size = 0;
    /// Valid-region extent; valid pixel (i, j) sits at image pixel
    /// (i + kernel_size/2, j + kernel_size/2).
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> counts;

    std::uint8_t count(std::size_t i, std::size_t j) const noexcept { return counts[j * width + i]; }
    double value(std::size_t i, std::size_t j) const noexcept {
        return static_cast<double>(count(i, j)) / kernel_size;
    }
};

/// Throws AnalysisError if the plane is smaller than the kernel on either axis.
ProbabilityMap probability_map(const BinaryLevel& level, const DirectionalKernel& kernel);

/// Binary Rényi entropy in bits of the distribution {1 - p1, p1}:
/// log2((1-p1)^α + p1^α) / (1 - α), with 0^α = 0. alpha == 1 gives the
/// Shannon entropy. Result lies in [0, 1].
double renyi_entropy(double p1, double alpha);

/// -p0·log2 p0 - p1·log2 p1 with 0·log2 0 = 0.
double shannon_entropy(double p1);

/// Entropy of p1 = c / kernel_size for c = 0..kernel_size. Entries c and
/// kernel_size - c are bit-identical.
std::vector<double> entropy_table(int kernel_size, double alpha);

/// Mean entropy given how many valid pixels saw each count c = 0..d.
/// Complementary counts are merged in integer arithmetic before weighting, so
/// complementing a plane leaves the result bit-identical.
double mean_entropy_from_histogram(std::span<const std::uint64_t> histogram, std::span<const double> table);

/// Mean of the per-pixel Rényi entropy over the valid region of one plane for
/// one orientation.
double level_directional_entropy(const BinaryLevel& level, const DirectionalKernel& kernel,
                                 const AnalysisConfig& config);

/// Population standard deviation, evaluated from all pairwise differences so
/// that equal inputs give exactly zero. Throws InvalidArgument for fewer than
/// two values.
double population_stddev(std::span<const double> values);

struct LevelAnisotropy {
    int level = 0;
    double anisotropy = 0.0;
    /// One mean entropy per configured orientation, in configuration order.
    std::vector<double> mean_entropy;

    friend bool operator==(const LevelAnisotropy&, const LevelAnisotropy&) = default;
};

LevelAnisotropy level_anisotropy(const BinaryLevel& level, const AnalysisConfig& config);

struct AnisotropyProfile {
    AnalysisConfig config;
    /// Levels 1..255 in order.
    std::vector<LevelAnisotropy> levels;
    /// Global index, the sum of all per-level anisotropies.
    double global = 0.0;

    /// Global index divided by the level count.
    double global_per_level() const noexcept { return global / kLevelCount; }

    friend bool operator==(const AnisotropyProfile&, const AnisotropyProfile&) = default;
};

/// Sums per-level anisotropies. Levels l and 256 - l are added as a pair
/// before accumulating in ascending l, which makes the result invariant
/// under image negation.
double global_anisotropy(std::span<const LevelAnisotropy> levels);

/// Full per-level profile. `threads` (0 = hardware concurrency) only changes
/// the schedule: the output is bit-identical for every value.
AnisotropyProfile analyze(const GrayImage& image, const AnalysisConfig& config, unsigned threads = 1);

/// Reference route for analyze(): decompose, then level_anisotropy() on each
/// plane. Orders of magnitude slower; used for cross-checking.
AnisotropyProfile analyze_by_levels(const GrayImage& image, const AnalysisConfig& config);

struct RankedImage {
    std::size_t index = 0;
    double score = 0.0;
};

/// Orders images by global anisotropy, highest first; ties keep input order.
std::vector<RankedImage> rank(std::span<const GrayImage> images, const AnalysisConfig& config,
                              unsigned threads = 1);

}  // namespace anisoq
