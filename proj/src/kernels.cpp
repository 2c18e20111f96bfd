#include "anisoq/kernels.hpp"

#include "anisoq/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace anisoq {

namespace {

constexpr double kSlopeEpsilon = 1e-9;

// Round half away from zero. Values within kSlopeEpsilon of a half-integer
// are snapped first so that 0.49999999999999994-style artefacts of tan()
// resolve the same way on every platform.
int round_minor(double v) {
    const double snapped_half = std::round(v * 2.0) / 2.0;
    if (std::abs(v - snapped_half) < kSlopeEpsilon) v = snapped_half;
    return static_cast<int>(std::round(v));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

double normalize_angle(double theta_deg) {
    double t = std::fmod(theta_deg, 180.0);
    if (t < 0.0) t += 180.0;
    if (t >= 180.0) t = 0.0;
    return t;
}

DirectionalKernel make_kernel(int size, double theta_deg) {
    if (size < 3 || size % 2 == 0) {
        throw InvalidArgument("kernel size must be odd and >= 3, got " + std::to_string(size));
    }
    if (!std::isfinite(theta_deg)) {
        throw InvalidArgument("kernel angle must be finite");
    }
    DirectionalKernel k;
    k.size_ = size;
    k.theta_deg_ = normalize_angle(theta_deg);

    const int a = size / 2;
    const double rad = k.theta_deg_ * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    k.offsets_.reserve(static_cast<std::size_t>(size));
    if (std::abs(s) <= std::abs(c) + kSlopeEpsilon) {
        // Shallow: the line's upward rise y = x·tanθ maps to dy = -y in raster order.
        const double slope = s / c;
        for (int x = -a; x <= a; ++x) k.offsets_.push_back({-round_minor(x * slope), x});
    } else {
        const double run = c / s;
        for (int y = a; y >= -a; --y) k.offsets_.push_back({-y, round_minor(y * run)});
    }
    return k;
}

bool DirectionalKernel::contains(Offset cell) const noexcept {
    return std::find(offsets_.begin(), offsets_.end(), cell) != offsets_.end();
}

std::vector<std::vector<int>> DirectionalKernel::matrix() const {
    std::vector<std::vector<int>> m(static_cast<std::size_t>(size_), std::vector<int>(static_cast<std::size_t>(size_), 0));
    const int a = radius();
    for (auto [dy, dx] : offsets_) m[static_cast<std::size_t>(a + dy)][static_cast<std::size_t>(a + dx)] = 1;
    return m;
}

std::vector<std::vector<int>> kernel_matrix(const DirectionalKernel& kernel) { return kernel.matrix(); }

OrientationSet::OrientationSet() : angles_{0.0, 30.0, 60.0, 90.0, 120.0, 150.0} {}

OrientationSet::OrientationSet(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw InvalidArgument("orientation set is empty");
    for (std::size_t i = 0; i < angles_.size(); ++i) {
        const double t = angles_[i];
        if (!std::isfinite(t) || t < 0.0 || t >= 180.0) {
            throw InvalidArgument("orientation " + std::to_string(t) + " is outside [0, 180)");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (angles_[j] == t) throw InvalidArgument("duplicate orientation " + std::to_string(t));
        }
    }
}

OrientationSet OrientationSet::parse(std::string_view csv) {
    std::vector<double> angles;
    while (true) {
        const auto comma = csv.find(',');
        const auto token = trim(csv.substr(0, comma));
        double value = 0.0;
        const auto* end = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(token.data(), end, value);
        if (token.empty() || ec != std::errc{} || ptr != end) {
            throw InvalidArgument("cannot parse orientation '" + std::string(token) + "'");
        }
        angles.push_back(value);
        if (comma == std::string_view::npos) break;
        csv.remove_prefix(comma + 1);
    }
    return OrientationSet(std::move(angles));
}

}  // namespace anisoq
