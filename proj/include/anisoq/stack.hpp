#pragma once

#include "anisoq/image.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace anisoq {

inline constexpr int kLevelCount = 255;

/// One thresholded bit-plane: bit (x, y) is set exactly when the source pixel
/// is >= level. Rows are packed into 64-bit words, least significant bit first.
class BinaryLevel {
public:
    BinaryLevel(int level, std::size_t width, std::size_t height);

    int level() const noexcept { return level_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t words_per_row() const noexcept { return stride_; }

    bool get(std::size_t x, std::size_t y) const noexcept {
        return (words_[y * stride_ + x / 64] >> (x % 64)) & 1u;
    }
    void set(std::size_t x, std::size_t y, bool value) noexcept {
        auto& word = words_[y * stride_ + x / 64];
        const std::uint64_t mask = std::uint64_t{1} << (x % 64);
        word = value ? (word | mask) : (word & ~mask);
    }

    std::span<const std::uint64_t> row_words(std::size_t y) const noexcept {
        return std::span<const std::uint64_t>(words_).subspan(y * stride_, stride_);
    }

    /// Number of set bits over the whole plane.
    std::size_t popcount() const noexcept;

    /// True if every bit of `other` is also set here (same dimensions required).
    bool contains(const BinaryLevel& other) const noexcept;

    friend bool operator==(const BinaryLevel&, const BinaryLevel&) = default;

private:
    int level_;
    std::size_t width_;
    std::size_t height_;
    std::size_t stride_;
    // Padding bits past `width_` in the last word of each row stay zero.
    std::vector<std::uint64_t> words_;
};

/// Bit-plane of `image` at threshold `level` (1..255).
BinaryLevel threshold(const GrayImage& image, int level);

/// The 255 nested bit-planes of an image, ordered by level 1..255.
class Stack {
public:
    /// Takes ownership of exactly 255 planes with levels 1..255 in order and
    /// shared dimensions. Nesting is not checked here; see reconstruct().
    explicit Stack(std::vector<BinaryLevel> levels);

    std::size_t width() const noexcept { return levels_.front().width(); }
    std::size_t height() const noexcept { return levels_.front().height(); }

    /// Plane for threshold `l` in 1..255.
    const BinaryLevel& level(int l) const;
    std::span<const BinaryLevel> levels() const noexcept { return levels_; }

    /// True if b^{l+1} <= b^l holds at every pixel for every l.
    bool is_nested() const noexcept;

private:
    std::vector<BinaryLevel> levels_;
};

Stack decompose(const GrayImage& image);

/// Sums the planes pixel-wise. Throws IntegrityError if the stack is not
/// nested.
GrayImage reconstruct(const Stack& stack);

}  // namespace anisoq
