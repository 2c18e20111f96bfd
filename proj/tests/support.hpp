// Test-only helpers: seeded generators and brute-force oracles that do not
// share code paths with the library internals they check.
#pragma once

#include "anisoq/entropy.hpp"
#include "anisoq/image.hpp"
#include "anisoq/kernels.hpp"
#include "anisoq/stack.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace anisoq::testing {

inline std::filesystem::path data_dir() { return ANISOQ_TEST_DATA_DIR; }

inline GrayImage random_image(std::mt19937_64& rng, std::size_t width, std::size_t height) {
    std::uniform_int_distribution<int> value(0, 255);
    std::vector<std::uint8_t> px(width * height);
    for (auto& p : px) p = static_cast<std::uint8_t>(value(rng));
    return GrayImage(width, height, std::move(px));
}

inline GrayImage random_image(std::mt19937_64& rng, std::size_t max_side) {
    std::uniform_int_distribution<std::size_t> side(1, max_side);
    const auto w = side(rng);
    const auto h = side(rng);
    return random_image(rng, w, h);
}

/// Random image with a few gray values arranged in blocks, so bit-planes
/// have structure instead of being white noise.
inline GrayImage blocky_image(std::mt19937_64& rng, std::size_t width, std::size_t height) {
    std::uniform_int_distribution<int> value(0, 255);
    std::uniform_int_distribution<int> block(1, 6);
    GrayImage img(width, height);
    const int bw = block(rng);
    const int bh = block(rng);
    std::vector<std::uint8_t> palette(64);
    for (auto& p : palette) p = static_cast<std::uint8_t>(value(rng));
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            img.at(x, y) = palette[((x / bw) * 7 + (y / bh) * 13) % palette.size()];
        }
    }
    return img;
}

inline BinaryLevel random_plane(std::mt19937_64& rng, std::size_t width, std::size_t height, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    BinaryLevel plane(1, width, height);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) plane.set(x, y, bit(rng));
    return plane;
}

/// Per-pixel count of set bits under the kernel, straight from the definition.
inline std::vector<int> brute_force_counts(const BinaryLevel& plane, const DirectionalKernel& kernel) {
    const int a = kernel.radius();
    const int w = static_cast<int>(plane.width());
    const int h = static_cast<int>(plane.height());
    std::vector<int> counts;
    for (int y = a; y < h - a; ++y) {
        for (int x = a; x < w - a; ++x) {
            int c = 0;
            for (auto off : kernel.offsets()) c += plane.get(static_cast<std::size_t>(x + off.dx), static_cast<std::size_t>(y + off.dy));
            counts.push_back(c);
        }
    }
    return counts;
}

/// Binary Rényi entropy evaluated directly from its closed form.
inline double reference_renyi(double p1, double alpha) {
    const double p0 = 1.0 - p1;
    if (alpha == 1.0) {
        double h = 0.0;
        if (p0 > 0) h -= p0 * std::log2(p0);
        if (p1 > 0) h -= p1 * std::log2(p1);
        return h;
    }
    const double s = (p0 > 0 ? std::pow(p0, alpha) : 0.0) + (p1 > 0 ? std::pow(p1, alpha) : 0.0);
    return std::log2(s) / (1.0 - alpha);
}

/// Mean entropy over the valid region, summed pixel by pixel in raster order.
inline double brute_force_mean_entropy(const BinaryLevel& plane, const DirectionalKernel& kernel, double alpha) {
    const auto counts = brute_force_counts(plane, kernel);
    double sum = 0.0;
    for (int c : counts) sum += reference_renyi(static_cast<double>(c) / kernel.size(), alpha);
    return sum / static_cast<double>(counts.size());
}

inline double brute_force_stddev(const std::vector<double>& v) {
    double mu = 0.0;
    for (double x : v) mu += x;
    mu /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mu) * (x - mu);
    return std::sqrt(var / static_cast<double>(v.size()));
}

// Brute force: in every column (shallow) or row (steep), the chosen cell must
// be among the cells of that column/row closest to the ideal line, measured
// as perpendicular Euclidean distance. Upward y = -dy.
inline bool nearest_cells(const DirectionalKernel& k) {
    const double rad = k.theta_deg() * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    auto dist = [&](int dy, int dx) { return std::abs(-dy * c - dx * s); };
    const int a = k.radius();
    const bool shallow = std::abs(s) <= std::abs(c) + 1e-9;
    for (auto [dy, dx] : k.offsets()) {
        double best = 1e300;
        for (int t = -a; t <= a; ++t) best = std::min(best, shallow ? dist(t, dx) : dist(dy, t));
        if (dist(dy, dx) > best + 1e-9) return false;
    }
    return true;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace anisoq::testing
