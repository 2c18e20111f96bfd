#include "anisoq/image.hpp"

#include "anisoq/error.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace anisoq {

namespace {

void check_dims(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) {
        throw InvalidArgument("image dimensions must be positive, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
}

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and '#' comments, then reads an unsigned decimal token.
    std::uint64_t number(const char* field) {
        skip_separators();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw FormatError(FormatError::Kind::MalformedHeader,
                              std::string("malformed PGM header: expected ") + field);
        }
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
            if (value > std::numeric_limits<std::uint32_t>::max()) {
                throw FormatError(FormatError::Kind::MalformedHeader,
                                  std::string("malformed PGM header: ") + field + " out of range");
            }
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void raster_separator() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw FormatError(FormatError::Kind::MalformedHeader,
                              "malformed PGM header: missing separator before raster");
        }
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height) : GrayImage(width, height, std::uint8_t{0}) {}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(width * height, fill);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != width * height) {
        throw InvalidArgument("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') {
        throw FormatError(FormatError::Kind::MalformedHeader, "malformed PGM header: missing magic number");
    }
    if (bytes[1] != '5') {
        throw FormatError(FormatError::Kind::UnsupportedSubtype,
                          std::string("unsupported PNM subtype P") + static_cast<char>(bytes[1]));
    }
    HeaderReader reader(bytes.subspan(2));
    const auto width = reader.number("width");
    const auto height = reader.number("height");
    const auto maxval = reader.number("maxval");
    if (width == 0 || height == 0) {
        throw FormatError(FormatError::Kind::MalformedHeader, "malformed PGM header: zero dimension");
    }
    if (maxval != 255) {
        throw FormatError(FormatError::Kind::UnsupportedMaxval, "unsupported maxval " + std::to_string(maxval));
    }
    reader.raster_separator();

    const std::size_t offset = 2 + reader.position();
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - offset < count) {
        throw FormatError(FormatError::Kind::TruncatedRaster,
                          "truncated raster: expected " + std::to_string(count) + " bytes, found " +
                              std::to_string(bytes.size() - offset));
    }
    auto raster = bytes.subspan(offset, count);
    return GrayImage(width, height, std::vector<std::uint8_t>(raster.begin(), raster.end()));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
    const std::string header =
        "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + image.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    return out;
}

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed on '" + path.string() + "'");
    }
    return decode_pgm(bytes);
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        throw IoError("write failed on '" + path.string() + "'");
    }
}

bool QualityScore::is_lossless() const noexcept { return std::isinf(psnr_db); }

double mse(const GrayImage& reference, const GrayImage& test) {
    if (!reference.same_shape(test)) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(reference.width()) + "x" +
                              std::to_string(reference.height()) + " vs " + std::to_string(test.width()) + "x" +
                              std::to_string(test.height()));
    }
    // Exact integer accumulation; the only rounding is the final division.
    std::uint64_t sum = 0;
    auto a = reference.pixels();
    auto b = test.pixels();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int diff = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        sum += static_cast<std::uint64_t>(diff * diff);
    }
    return static_cast<double>(sum) / static_cast<double>(a.size());
}

double psnr_from_mse(double mse_value) {
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeakValue * kPeakValue / mse_value);
}

QualityScore psnr(const GrayImage& reference, const GrayImage& test) {
    QualityScore score;
    score.mse = mse(reference, test);
    score.psnr_db = psnr_from_mse(score.mse);
    return score;
}

}  // namespace anisoq
