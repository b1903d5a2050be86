#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "risbeam/errors.hpp"

namespace risbeam {

/// Point or direction in 3D space, meters.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline bool is_finite(const Vec3& a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& a)
{
    const double n = norm(a);
    if (!(n > 0.0) || !std::isfinite(n))
        throw GeometryError("cannot normalize a zero or non-finite vector");
    return a * (1.0 / n);
}

inline constexpr double kOrthoTolerance = 1e-9;

/// Modular RIS layout. Modules tile flush; cells are square-indexed per module.
struct RisLayout {
    int modules_across = 3;
    int modules_down = 2;
    int cells_per_module_side = 16;
    double module_width = 0.360;
    double module_height = 0.247;

    int columns() const { return modules_across * cells_per_module_side; }
    int rows() const { return modules_down * cells_per_module_side; }
    std::size_t element_count() const
    {
        return static_cast<std::size_t>(modules_across) * static_cast<std::size_t>(modules_down) *
               static_cast<std::size_t>(cells_per_module_side) * static_cast<std::size_t>(cells_per_module_side);
    }
    double pitch_u() const { return module_width / cells_per_module_side; }
    double pitch_v() const { return module_height / cells_per_module_side; }

    void validate() const
    {
        if (modules_across <= 0 || modules_down <= 0 || cells_per_module_side <= 0)
            throw GeometryError("RisLayout: module and cell counts must be positive");
        if (!(module_width > 0.0) || !(module_height > 0.0) || !std::isfinite(module_width) ||
            !std::isfinite(module_height))
            throw GeometryError("RisLayout: module dimensions must be positive and finite");
    }

    friend bool operator==(const RisLayout&, const RisLayout&) = default;
};

/// Panel placement: center plus a right-handed orthonormal triad.
struct Pose {
    Vec3 origin{};
    Vec3 right{1.0, 0.0, 0.0};
    Vec3 up{0.0, 1.0, 0.0};
    Vec3 normal{0.0, 0.0, 1.0};

    void validate() const
    {
        if (!is_finite(origin) || !is_finite(right) || !is_finite(up) || !is_finite(normal))
            throw GeometryError("Pose: non-finite component");
        for (const Vec3* axis : {&right, &up, &normal})
            if (std::abs(norm(*axis) - 1.0) > kOrthoTolerance)
                throw GeometryError("Pose: right/up/normal must be unit vectors");
        if (std::abs(dot(right, up)) > kOrthoTolerance || std::abs(dot(right, normal)) > kOrthoTolerance ||
            std::abs(dot(up, normal)) > kOrthoTolerance)
            throw GeometryError("Pose: axes are not mutually orthogonal");
        if (norm(cross(right, up) - normal) > kOrthoTolerance)
            throw GeometryError("Pose: right x up must equal normal (right-handed triad)");
    }

    friend bool operator==(const Pose&, const Pose&) = default;
};

/// Planar measurement grid. Point (i, j) sits at origin + i*spacing*axis_u + j*spacing*axis_v.
struct GridSpec {
    Vec3 origin{};
    Vec3 axis_u{1.0, 0.0, 0.0};
    Vec3 axis_v{0.0, 1.0, 0.0};
    int count_u = 1;
    int count_v = 1;
    double spacing = 0.1;

    std::size_t size() const { return static_cast<std::size_t>(count_u) * static_cast<std::size_t>(count_v); }
    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(count_u) + static_cast<std::size_t>(i);
    }
    Vec3 point(int i, int j) const { return origin + (i * spacing) * axis_u + (j * spacing) * axis_v; }

    void validate() const
    {
        if (count_u <= 0 || count_v <= 0)
            throw GeometryError("GridSpec: counts must be positive");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw GeometryError("GridSpec: spacing must be > 0");
        if (!is_finite(origin) || !is_finite(axis_u) || !is_finite(axis_v))
            throw GeometryError("GridSpec: non-finite component");
        if (std::abs(norm(axis_u) - 1.0) > kOrthoTolerance || std::abs(norm(axis_v) - 1.0) > kOrthoTolerance)
            throw GeometryError("GridSpec: axes must be unit vectors");
        if (std::abs(dot(axis_u, axis_v)) > kOrthoTolerance)
            throw GeometryError("GridSpec: axis_u and axis_v must be orthogonal");
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Element centers, row-major over (module row, module column, cell row, cell column).
/// Row 0 is the top edge (+up), column 0 the left edge (-right).
inline std::vector<Vec3> element_positions(const RisLayout& layout, const Pose& pose)
{
    layout.validate();
    pose.validate();

    const int cells = layout.cells_per_module_side;
    const double half_cols = (layout.columns() - 1) / 2.0;
    const double half_rows = (layout.rows() - 1) / 2.0;
    const double pu = layout.pitch_u();
    const double pv = layout.pitch_v();

    std::vector<Vec3> out;
    out.reserve(layout.element_count());
    for (int mr = 0; mr < layout.modules_down; ++mr)
        for (int mc = 0; mc < layout.modules_across; ++mc)
            for (int cr = 0; cr < cells; ++cr)
                for (int cc = 0; cc < cells; ++cc) {
                    const int col = mc * cells + cc;
                    const int row = mr * cells + cr;
                    const double u = (col - half_cols) * pu;
                    const double v = (half_rows - row) * pv;
                    out.push_back(pose.origin + u * pose.right + v * pose.up);
                }
    return out;
}

/// Four patch antennas collapse to one radiator at their mean position.
inline Vec3 equivalent_tx_position(std::span<const Vec3> patches)
{
    if (patches.size() != 4)
        throw GeometryError("equivalent_tx_position: expected exactly 4 patch positions, got " +
                            std::to_string(patches.size()));
    Vec3 sum{};
    for (const auto& p : patches) {
        if (!is_finite(p))
            throw GeometryError("equivalent_tx_position: non-finite patch position");
        sum += p;
    }
    return sum * 0.25;
}

inline std::vector<Vec3> generate_grid(const GridSpec& spec)
{
    spec.validate();
    std::vector<Vec3> out;
    out.reserve(spec.size());
    for (int j = 0; j < spec.count_v; ++j)
        for (int i = 0; i < spec.count_u; ++i)
            out.push_back(spec.point(i, j));
    return out;
}

} // namespace risbeam
