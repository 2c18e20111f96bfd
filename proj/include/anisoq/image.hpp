#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace anisoq {

/// 8-bit single-channel raster, row-major with a top-left origin.
class GrayImage {
public:
    /// Zero-filled image. Throws InvalidArgument when either side is 0.
    GrayImage(std::size_t width, std::size_t height);
    GrayImage(std::size_t width, std::size_t height, std::uint8_t fill);
    /// Throws InvalidArgument unless pixels.size() == width * height.
    GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    std::uint8_t at(std::size_t x, std::size_t y) const noexcept { return pixels_[y * width_ + x]; }
    std::uint8_t& at(std::size_t x, std::size_t y) noexcept { return pixels_[y * width_ + x]; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }
    std::span<const std::uint8_t> row(std::size_t y) const noexcept {
        return std::span<const std::uint8_t>(pixels_).subspan(y * width_, width_);
    }

    bool same_shape(const GrayImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> pixels_;
};

/// Reads a binary PGM (P5) with maxval 255. Header comments are skipped.
/// Throws IoError if the file cannot be opened and FormatError otherwise.
GrayImage load_pgm(const std::filesystem::path& path);

/// Writes "P5\n<w> <h>\n255\n" followed by the raw raster.
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

/// In-memory variants of the PGM codec.
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);

/// Full-reference quality of a test image against its reference.
struct QualityScore {
    double mse = 0.0;
    /// +infinity when mse == 0.
    double psnr_db = 0.0;

    bool is_lossless() const noexcept;
};

inline constexpr double kPeakValue = 255.0;

/// Mean squared error, normalized by pixel count. Throws InvalidArgument on
/// a dimension mismatch.
double mse(const GrayImage& reference, const GrayImage& test);

QualityScore psnr(const GrayImage& reference, const GrayImage& test);

/// 10·log10(255² / mse), or +infinity for mse == 0.
double psnr_from_mse(double mse_value);

}  // namespace anisoq
