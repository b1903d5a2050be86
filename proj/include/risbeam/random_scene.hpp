#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "risbeam/geometry.hpp"
#include "risbeam/scenario.hpp"

namespace risbeam {

/// Portable uniform draws from mt19937_64 (whose output sequence is fully specified),
/// so generated scenes are identical on every platform for a given seed.
class SceneRng {
public:
    explicit SceneRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Vec3 unit_vector()
    {
        while (true) {
            const Vec3 v{uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
            const double n = norm(v);
            if (n > 0.1 && n <= 1.0)
                return v * (1.0 / n);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Random right-handed orthonormal triad.
inline Pose random_pose(SceneRng& rng, const Vec3& origin)
{
    const Vec3 normal = rng.unit_vector();
    Vec3 right;
    do {
        const Vec3 t = rng.unit_vector();
        right = t - dot(t, normal) * normal;
    } while (norm(right) < 0.1);
    right = normalized(right);
    const Vec3 up = cross(normal, right);
    return {origin, right, up, normal};
}

/// Point in the half-space in front of the panel, between min_range and max_range from its center.
inline Vec3 random_point_in_front(SceneRng& rng, const Pose& pose, double min_range, double max_range)
{
    Vec3 dir = rng.unit_vector();
    if (dot(dir, pose.normal) < 0.0)
        dir = dir - 2.0 * dot(dir, pose.normal) * pose.normal;
    dir = normalized(dir + 0.2 * pose.normal);
    return pose.origin + rng.uniform(min_range, max_range) * dir;
}

/// Random free-space scene with element count in [min_elements, max_elements].
inline Scenario random_scene(SceneRng& rng, std::size_t min_elements, std::size_t max_elements)
{
    Scenario s;
    s.name = "random";
    s.rf = RfParams::make(rng.uniform(2.0e9, 10.0e9), rng.uniform(0.0, 10.0), rng.uniform(0.0, 20.0),
                          rng.uniform(-10.0, 20.0));
    while (true) {
        s.layout.modules_across = rng.integer(1, 4);
        s.layout.modules_down = rng.integer(1, 4);
        s.layout.cells_per_module_side = rng.integer(1, 16);
        const auto n = s.layout.element_count();
        if (n >= min_elements && n <= max_elements)
            break;
    }
    s.layout.module_width = rng.uniform(0.05, 0.4);
    s.layout.module_height = rng.uniform(0.05, 0.4);
    s.pose = random_pose(rng, {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(0.0, 4.0)});
    s.tx = TxAtPosition{random_point_in_front(rng, s.pose, 0.3, 1.5)};
    s.rx = random_point_in_front(rng, s.pose, 1.0, 8.0);
    s.grid.origin = s.rx;
    s.grid.axis_u = s.pose.right;
    s.grid.axis_v = s.pose.up;
    return s;
}

} // namespace risbeam
