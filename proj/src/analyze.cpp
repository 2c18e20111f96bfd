// Order-statistics evaluation of the per-level directional entropies.
//
// For one pixel and one orientation the kernel covers d gray values. At level
// l the count of set bits under the kernel is #{v >= l}, a step function of l
// that drops by one at each sorted value. Sorting the d values therefore gives
// the count at all 255 levels at once, and the per-level histograms of counts
// are accumulated as difference arrays over l. No bit-plane is materialized;
// the histograms are exact integers, so the result matches the plane-by-plane
// route bit for bit and does not depend on the thread schedule.

#include "anisoq/entropy.hpp"
#include "anisoq/error.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace anisoq {

namespace {

constexpr std::size_t kLevelSlots = kLevelCount + 2;  // index 0 unused, 256 is the diff sentinel

struct CountDiffs {
    std::size_t counts;  // d + 1
    std::vector<std::int64_t> data;

    CountDiffs(std::size_t orientations, std::size_t kernel_size)
        : counts(kernel_size + 1), data(orientations * counts * kLevelSlots, 0) {}

    std::int64_t* slot(std::size_t orientation, std::size_t count) {
        return data.data() + (orientation * counts + count) * kLevelSlots;
    }
};

void insertion_sort(std::span<std::uint8_t> v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        const auto key = v[i];
        std::size_t j = i;
        for (; j > 0 && v[j - 1] > key; --j) v[j] = v[j - 1];
        v[j] = key;
    }
}

void accumulate_rows(const GrayImage& image, std::span<const std::vector<std::ptrdiff_t>> offsets, int radius,
                     std::size_t row_begin, std::size_t row_end, CountDiffs& diffs) {
    const auto d = static_cast<std::size_t>(2 * radius + 1);
    const auto a = static_cast<std::size_t>(radius);
    const std::size_t valid_width = image.width() - d + 1;
    const std::uint8_t* base = image.pixels().data();
    std::array<std::uint8_t, 256> scratch{};
    const std::span<std::uint8_t> values(scratch.data(), d);

    for (std::size_t t = 0; t < offsets.size(); ++t) {
        const auto& kernel = offsets[t];
        std::vector<std::int64_t*> rows(d + 1);
        for (std::size_t c = 0; c <= d; ++c) rows[c] = diffs.slot(t, c);

        for (std::size_t j = row_begin; j < row_end; ++j) {
            const std::uint8_t* center = base + (j + a) * image.width() + a;
            for (std::size_t i = 0; i < valid_width; ++i) {
                for (std::size_t k = 0; k < d; ++k) values[k] = center[i + kernel[k]];
                insertion_sort(values);
                // With ascending v_0..v_{d-1}, levels in (v_{k-1}, v_k] see
                // count d - k; v_{-1} = 0 and v_d = 255. Empty ranges cancel.
                std::size_t prev = 0;
                for (std::size_t k = 0; k <= d; ++k) {
                    const std::size_t cur = k < d ? values[k] : kLevelCount;
                    auto* row = rows[d - k];
                    row[prev + 1] += 1;
                    row[cur + 1] -= 1;
                    prev = cur;
                }
            }
        }
    }
}

}  // namespace

AnisotropyProfile analyze(const GrayImage& image, const AnalysisConfig& config, unsigned threads) {
    config.validate();
    const int radius = config.kernel_size / 2;
    const auto d = static_cast<std::size_t>(config.kernel_size);
    if (image.width() < d || image.height() < d) {
        throw AnalysisError("image " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                            " is smaller than the " + std::to_string(d) + "x" + std::to_string(d) + " kernel");
    }
    const std::size_t orientation_count = config.orientations.size();

    std::vector<std::vector<std::ptrdiff_t>> offsets;
    offsets.reserve(orientation_count);
    for (double theta : config.orientations.angles()) {
        const auto kernel = make_kernel(config.kernel_size, theta);
        std::vector<std::ptrdiff_t> linear;
        for (auto [dy, dx] : kernel.offsets()) {
            linear.push_back(static_cast<std::ptrdiff_t>(dy) * static_cast<std::ptrdiff_t>(image.width()) + dx);
        }
        offsets.push_back(std::move(linear));
    }

    const std::size_t valid_rows = image.height() - d + 1;
    const std::size_t valid_pixels = valid_rows * (image.width() - d + 1);
    const unsigned workers = detail::resolve_threads(threads);

    std::vector<CountDiffs> partial;
    const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(workers, valid_rows));
    partial.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) partial.emplace_back(orientation_count, d);
    detail::for_each_block(valid_rows, static_cast<unsigned>(blocks),
                           [&](std::size_t begin, std::size_t end, std::size_t block) {
                               accumulate_rows(image, offsets, radius, begin, end, partial[block]);
                           });
    // Integer merge: order-independent.
    CountDiffs& merged = partial.front();
    for (std::size_t b = 1; b < partial.size(); ++b) {
        for (std::size_t k = 0; k < merged.data.size(); ++k) merged.data[k] += partial[b].data[k];
    }

    const auto table = entropy_table(config.kernel_size, config.alpha);
    AnisotropyProfile profile;
    profile.config = config;
    profile.levels.resize(kLevelCount);
    for (int l = 1; l <= kLevelCount; ++l) {
        auto& rec = profile.levels[static_cast<std::size_t>(l - 1)];
        rec.level = l;
        rec.mean_entropy.resize(orientation_count);
    }

    std::vector<std::uint64_t> histogram(d + 1);
    std::vector<std::int64_t> running(d + 1);
    for (std::size_t t = 0; t < orientation_count; ++t) {
        std::fill(running.begin(), running.end(), 0);
        for (std::size_t l = 1; l <= static_cast<std::size_t>(kLevelCount); ++l) {
            std::uint64_t total = 0;
            for (std::size_t c = 0; c <= d; ++c) {
                running[c] += merged.slot(t, c)[l];
                histogram[c] = static_cast<std::uint64_t>(running[c]);
                total += histogram[c];
            }
            if (total != valid_pixels) {
                throw Error("internal: count histogram does not cover the valid region");
            }
            profile.levels[l - 1].mean_entropy[t] = mean_entropy_from_histogram(histogram, table);
        }
    }
    for (auto& rec : profile.levels) rec.anisotropy = population_stddev(rec.mean_entropy);
    profile.global = global_anisotropy(profile.levels);
    return profile;
}

}  // namespace anisoq
