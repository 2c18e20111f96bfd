#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace anisoq {

/// Cell offset relative to the kernel center. `dy` grows downward (raster
/// order), `dx` grows to the right.
struct Offset {
    int dy = 0;
    int dx = 0;

    friend bool operator==(const Offset&, const Offset&) = default;
    friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// d×d binary line mask: the d lattice cells nearest to the line of angle
/// theta (degrees, counter-clockwise from +x) through the center.
class DirectionalKernel {
public:
    int size() const noexcept { return size_; }
    int radius() const noexcept { return size_ / 2; }
    double theta_deg() const noexcept { return theta_deg_; }
    /// Exactly size() offsets, ordered along the dominant axis.
    std::span<const Offset> offsets() const noexcept { return offsets_; }
    bool contains(Offset cell) const noexcept;

    /// Dense view, row = radius + dy, col = radius + dx.
    std::vector<std::vector<int>> matrix() const;

    friend bool operator==(const DirectionalKernel&, const DirectionalKernel&) = default;

private:
    friend DirectionalKernel make_kernel(int size, double theta_deg);
    int size_ = 0;
    double theta_deg_ = 0.0;
    std::vector<Offset> offsets_;
};

/// Reduces any angle to [0, 180).
double normalize_angle(double theta_deg);

/// Shallow lines (|tan θ| <= 1) take one cell per column, steep lines one per
/// row; the minor coordinate is rounded half away from zero. Throws
/// InvalidArgument for even or sub-3 sizes and non-finite angles.
DirectionalKernel make_kernel(int size, double theta_deg);

/// Free-function spelling of DirectionalKernel::matrix().
std::vector<std::vector<int>> kernel_matrix(const DirectionalKernel& kernel);

/// Ordered list of distinct orientations in [0, 180).
class OrientationSet {
public:
    /// The six equally spaced angles 0, 30, ..., 150.
    OrientationSet();
    /// Throws InvalidArgument on empty input, angles outside [0, 180) or
    /// duplicates modulo 180.
    explicit OrientationSet(std::vector<double> angles);

    /// Parses "0,30,60". Whitespace around entries is allowed.
    static OrientationSet parse(std::string_view csv);

    std::span<const double> angles() const noexcept { return angles_; }
    std::size_t size() const noexcept { return angles_.size(); }

    friend bool operator==(const OrientationSet&, const OrientationSet&) = default;

private:
    std::vector<double> angles_;
};

}  // namespace anisoq
