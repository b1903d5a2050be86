#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "risbeam/metrics.hpp"
#include "risbeam/random_scene.hpp"

using namespace risbeam;
using Catch::Approx;

namespace {

PowerMap make_map(int nu, int nv, double fill, double spacing = 0.1)
{
    PowerMap m;
    m.grid = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, nu, nv, spacing};
    m.values.assign(m.grid.size(), fill);
    m.sentinel_mask.assign(m.grid.size(), 0);
    return m;
}

PowerMap transpose(const PowerMap& m)
{
    PowerMap t = m;
    t.grid.count_u = m.grid.count_v;
    t.grid.count_v = m.grid.count_u;
    std::swap(t.grid.axis_u, t.grid.axis_v);
    for (int i = 0; i < m.grid.count_u; ++i)
        for (int j = 0; j < m.grid.count_v; ++j) {
            t.values[t.grid.index(j, i)] = m.at(i, j);
            t.sentinel_mask[t.grid.index(j, i)] = m.sentinel_mask[m.grid.index(i, j)];
        }
    return t;
}

PowerMap random_map(SceneRng& rng)
{
    PowerMap m = make_map(rng.integer(1, 25), rng.integer(1, 25), 0.0, rng.uniform(0.05, 0.2));
    for (auto& v : m.values)
        v = rng.uniform(-80, -20);
    return m;
}

} // namespace

TEST_CASE("analyze - constant map")
{
    const PowerMap m = make_map(30, 20, -42.0);
    const auto r = analyze(m, {1.0, 1.0, 0});
    CHECK(r.peak_value == -42.0);
    CHECK(r.peak_i == 0);
    CHECK(r.peak_j == 0);
    for (const auto& d : r.drop_at_radii) {
        CHECK(d.max_drop_db == 0.0);
        CHECK(d.mean_drop_db == 0.0);
    }
    CHECK(r.halfpower_extent_u == Approx(3.0));
    CHECK(r.halfpower_extent_v == Approx(2.0));
    for (const auto& [t, n] : r.area_above)
        CHECK(n == 600);
}

TEST_CASE("analyze - single spike")
{
    PowerMap m = make_map(21, 21, -40.0, 0.2);
    m.values[m.grid.index(7, 12)] = 0.0;
    const auto r = analyze(m, m.grid.point(7, 12));
    CHECK(r.peak_value == 0.0);
    CHECK(r.peak_i == 7);
    CHECK(r.peak_j == 12);
    CHECK(r.peak_offset_from_rx == 0.0);
    REQUIRE(r.drop_at_radii.size() == 4);
    for (const auto& d : r.drop_at_radii) {
        CHECK(d.cells > 0);
        CHECK(d.mean_drop_db == 40.0);
        CHECK(d.max_drop_db == 40.0);
    }
    CHECK(r.halfpower_extent_u == Approx(0.2));
    CHECK(r.halfpower_extent_v == Approx(0.2));
    CHECK(r.area_above.front().second == 1);
}

TEST_CASE("analyze - ties resolve to the lowest (i, j)")
{
    PowerMap m = make_map(5, 5, -10.0);
    m.values[m.grid.index(3, 1)] = 0.0;
    m.values[m.grid.index(1, 4)] = 0.0;
    m.values[m.grid.index(3, 0)] = 0.0;
    const auto r = analyze(m, {});
    CHECK(r.peak_i == 1);
    CHECK(r.peak_j == 4);
}

TEST_CASE("analyze - sentinel cells are excluded and break half-power runs")
{
    PowerMap m = make_map(5, 1, -10.0);
    m.sentinel_mask[m.grid.index(1, 0)] = 1;
    m.values[m.grid.index(1, 0)] = kFloorDbm;
    const auto r = analyze(m, {});
    CHECK(r.peak_i == 0);
    CHECK(r.halfpower_extent_u == Approx(0.1));
    CHECK(r.drop_at_radii[0].max_drop_db == 0.0);

    PowerMap dead = make_map(3, 3, kFloorDbm);
    dead.sentinel_mask.assign(9, 1);
    CHECK_THROWS_AS(analyze(dead, {}), MetricsError);
}

TEST_CASE("analyze - constant offset shifts only the peak value")
{
    SceneRng rng(61);
    for (int k = 0; k < 100; ++k) {
        const PowerMap m = random_map(rng);
        PowerMap shifted = m;
        const double c = rng.uniform(-30, 30);
        for (auto& v : shifted.values)
            v += c;
        const auto a = analyze(m, {0.5, 0.5, 0});
        const auto b = analyze(shifted, {0.5, 0.5, 0});
        CHECK(b.peak_value == Approx(a.peak_value + c).margin(1e-9));
        CHECK(b.peak_i == a.peak_i);
        CHECK(b.peak_j == a.peak_j);
        CHECK(b.halfpower_extent_u == a.halfpower_extent_u);
        CHECK(b.halfpower_extent_v == a.halfpower_extent_v);
        for (std::size_t r = 0; r < a.drop_at_radii.size(); ++r) {
            CHECK(b.drop_at_radii[r].mean_drop_db == Approx(a.drop_at_radii[r].mean_drop_db).margin(1e-9));
            CHECK(b.drop_at_radii[r].max_drop_db == Approx(a.drop_at_radii[r].max_drop_db).margin(1e-9));
        }
    }
}

TEST_CASE("analyze - transposing the map swaps the extents")
{
    SceneRng rng(67);
    for (int k = 0; k < 100; ++k) {
        PowerMap m = random_map(rng);
        // smooth bump so runs are longer than one cell
        const int ci = rng.integer(0, m.grid.count_u - 1), cj = rng.integer(0, m.grid.count_v - 1);
        for (int i = 0; i < m.grid.count_u; ++i)
            for (int j = 0; j < m.grid.count_v; ++j)
                m.values[m.grid.index(i, j)] = -0.7 * std::abs(i - ci) - 1.9 * std::abs(j - cj);
        const auto a = analyze(m, {});
        const auto b = analyze(transpose(m), {});
        CHECK(a.halfpower_extent_u == b.halfpower_extent_v);
        CHECK(a.halfpower_extent_v == b.halfpower_extent_u);
    }
}

TEST_CASE("analyze - deterministic and bounded")
{
    SceneRng rng(71);
    for (int k = 0; k < 50; ++k) {
        const PowerMap m = random_map(rng);
        const auto a = analyze(m, {});
        const auto b = analyze(m, {});
        CHECK(a == b);
        CHECK(a.halfpower_extent_u <= m.grid.count_u * m.grid.spacing + 1e-12);
        CHECK(a.halfpower_extent_v <= m.grid.count_v * m.grid.spacing + 1e-12);
        for (const auto& d : a.drop_at_radii) {
            CHECK(d.max_drop_db >= 0.0);
            CHECK(d.mean_drop_db >= 0.0);
        }
    }
}

TEST_CASE("analyze - axis roles follow the direction away from the surface")
{
    PowerMap m = make_map(5, 9, -10.0);
    m.grid.origin = {2.0, -0.2, 1.1};
    m.grid.axis_u = {0, 1, 0};
    m.grid.axis_v = {1, 0, 0};
    m.ris_center = Vec3{0, 0, 3.6};
    auto r = analyze(m, {});
    CHECK(r.axis_u_role == AxisRole::azimuth);
    CHECK(r.axis_v_role == AxisRole::elevation);

    m.grid.axis_u = {1, 0, 0};
    m.grid.axis_v = {0, 1, 0};
    m.grid.origin = {2.0, -0.2, 1.1};
    r = analyze(m, {});
    CHECK(r.axis_u_role == AxisRole::elevation);
    CHECK(r.axis_v_role == AxisRole::azimuth);

    m.ris_center.reset();
    CHECK(analyze(m, {}).axis_u_role == AxisRole::unknown);
}

TEST_CASE("compare_near_far - ratios and broadening flags")
{
    SelectivityReport near;
    near.halfpower_extent_u = 0.3;
    near.halfpower_extent_v = 0.3;
    near.axis_u_role = AxisRole::azimuth;
    near.axis_v_role = AxisRole::elevation;

    const auto same = compare_near_far(near, near);
    CHECK(same.ratio_u == 1.0);
    CHECK(same.ratio_v == 1.0);
    CHECK_FALSE(same.broadened_u);
    CHECK_FALSE(same.broadened_v);

    SelectivityReport far = near;
    far.halfpower_extent_v = 0.9;
    const auto v = compare_near_far(near, far);
    CHECK(v.ratio_v == Approx(3.0));
    CHECK(v.broadened_v);
    CHECK_FALSE(v.broadened_u);
    REQUIRE(v.depth_ratio.has_value());
    CHECK(*v.depth_ratio == Approx(3.0));
    CHECK(*v.lateral_ratio == 1.0);

    far.axis_u_role = AxisRole::unknown;
    CHECK_FALSE(compare_near_far(near, far).depth_ratio.has_value());
}
