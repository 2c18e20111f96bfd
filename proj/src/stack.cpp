#include "anisoq/stack.hpp"

#include "anisoq/error.hpp"

#include <bit>
#include <string>

namespace anisoq {

BinaryLevel::BinaryLevel(int level, std::size_t width, std::size_t height)
    : level_(level), width_(width), height_(height), stride_((width + 63) / 64) {
    if (level < 1 || level > kLevelCount) {
        throw InvalidArgument("level must be in [1, 255], got " + std::to_string(level));
    }
    if (width == 0 || height == 0) {
        throw InvalidArgument("bit-plane dimensions must be positive");
    }
    words_.assign(stride_ * height_, 0);
}

std::size_t BinaryLevel::popcount() const noexcept {
    std::size_t total = 0;
    for (auto word : words_) total += static_cast<std::size_t>(std::popcount(word));
    return total;
}

bool BinaryLevel::contains(const BinaryLevel& other) const noexcept {
    if (width_ != other.width_ || height_ != other.height_) return false;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((other.words_[i] & ~words_[i]) != 0) return false;
    }
    return true;
}

BinaryLevel threshold(const GrayImage& image, int level) {
    BinaryLevel plane(level, image.width(), image.height());
    for (std::size_t y = 0; y < image.height(); ++y) {
        auto row = image.row(y);
        for (std::size_t x = 0; x < row.size(); ++x) {
            if (row[x] >= level) plane.set(x, y, true);
        }
    }
    return plane;
}

Stack::Stack(std::vector<BinaryLevel> levels) : levels_(std::move(levels)) {
    if (levels_.size() != static_cast<std::size_t>(kLevelCount)) {
        throw InvalidArgument("a stack holds exactly 255 levels, got " + std::to_string(levels_.size()));
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i].level() != static_cast<int>(i) + 1) {
            throw InvalidArgument("stack levels must be ordered 1..255");
        }
        if (levels_[i].width() != levels_[0].width() || levels_[i].height() != levels_[0].height()) {
            throw InvalidArgument("stack levels must share dimensions");
        }
    }
}

const BinaryLevel& Stack::level(int l) const {
    if (l < 1 || l > kLevelCount) {
        throw InvalidArgument("level must be in [1, 255], got " + std::to_string(l));
    }
    return levels_[static_cast<std::size_t>(l - 1)];
}

bool Stack::is_nested() const noexcept {
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        if (!levels_[i - 1].contains(levels_[i])) return false;
    }
    return true;
}

Stack decompose(const GrayImage& image) {
    std::vector<BinaryLevel> levels;
    levels.reserve(kLevelCount);
    for (int l = 1; l <= kLevelCount; ++l) levels.push_back(BinaryLevel(l, image.width(), image.height()));

    // Pixel value v sets its bit in planes 1..v.
    for (std::size_t y = 0; y < image.height(); ++y) {
        auto row = image.row(y);
        for (std::size_t x = 0; x < row.size(); ++x) {
            for (int l = 1; l <= row[x]; ++l) levels[static_cast<std::size_t>(l - 1)].set(x, y, true);
        }
    }
    return Stack(std::move(levels));
}

GrayImage reconstruct(const Stack& stack) {
    if (!stack.is_nested()) {
        throw IntegrityError("stack violates the nesting property b^{l+1} <= b^l");
    }
    GrayImage image(stack.width(), stack.height());
    for (const auto& plane : stack.levels()) {
        for (std::size_t y = 0; y < image.height(); ++y) {
            for (std::size_t x = 0; x < image.width(); ++x) {
                if (plane.get(x, y)) ++image.at(x, y);
            }
        }
    }
    return image;
}

}  // namespace anisoq
