#include "evsnn/scenarios.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "evsnn/harness.hpp"

namespace evsnn {

namespace {

// Pixels of a 3x3 patch centered on `center`, given as (row, col) cells.
PointSet cells(Pixel center, std::initializer_list<GridIndex> grid)
{
    const PatchMapping patch{center, 1};
    std::vector<Pixel> out;
    for (GridIndex g : grid) out.push_back(patch.unmap(g));
    return PointSet(std::move(out));
}

std::vector<std::string> labels(std::initializer_list<const char*> names)
{
    return {names.begin(), names.end()};
}

TableScenario speed_table(int table, std::string name, std::string title, std::vector<std::string> columns)
{
    const SpeedScene scene = speed_scene(table);
    TableScenario t;
    t.name = std::move(name);
    t.title = std::move(title);
    t.network = build_speed(scene.params);
    t.schedule = encode_speed(scene.prev, scene.cur, scene.event, scene.params);
    t.cycles = speed_layout(scene.params).cycles();
    t.columns = std::move(columns);
    return t;
}

TableScenario dbscan_table(const DbscanScene& scene, std::string name, std::string title,
                           std::vector<std::string> columns)
{
    const DbscanParams params{1, 3};
    TableScenario t;
    t.name = std::move(name);
    t.title = std::move(title);
    t.network = build_dbscan(params);
    t.schedule = encode_dbscan(scene.points, scene.event, params);
    t.cycles = dbscan_layout(params).cycles();
    t.columns = std::move(columns);
    return t;
}

// Uniform integer in [0, n) from raw 64-bit draws; identical on every platform.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n)
{
    return rng() % n;
}

}  // namespace

DbscanScene noise_scene()
{
    return {PointSet{{1, 1}}, {1, 1}};
}

DbscanScene core_scene()
{
    return {PointSet{{0, 0}, {2, 0}, {1, 1}, {0, 2}}, {1, 1}};
}

DbscanScene border_scene()
{
    // Event E, its neighbour N up-right, and two more points near N only.
    return {PointSet{{2, 2}, {3, 1}, {2, 0}, {4, 0}}, {2, 2}};
}

SpeedScene speed_scene(int table)
{
    const Pixel c{10, 10};
    SpeedScene s;
    s.event = c;
    s.prev.bin_index = 0;
    s.cur.bin_index = 1;
    switch (table) {
    case 1:
        s.params = {1, 10, SpeedVariant::FilterSlow};
        s.prev.active = cells(c, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 2}});
        s.cur.active = cells(c, {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
        break;
    case 2:
        s.params = {1, 10, SpeedVariant::FilterSlow};
        s.prev.active = cells(c, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
        s.cur.active = cells(c, {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}});
        break;
    case 3:
        s.params = {1, 7, SpeedVariant::FilterFast};
        s.prev.active = cells(c, {{1, 0}, {1, 2}, {2, 1}});
        s.cur.active = cells(c, {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}});
        break;
    case 4:
        s.params = {1, 7, SpeedVariant::FilterFast};
        s.prev.active = cells(c, {{1, 0}, {1, 2}, {2, 1}});
        s.cur.active = cells(c, {{1, 0}, {1, 1}, {1, 2}});
        break;
    default: throw std::out_of_range("speed scenes are numbered 1..4");
    }
    return s;
}

std::vector<TableScenario> table_scenarios()
{
    std::vector<TableScenario> out;
    out.push_back(speed_table(1, "speed-slow-keep", "slow speed filter, t_s=10: event kept",
                              labels({"I_0_1", "I_1_0", "I_1_1", "I_1_2", "I_2_0", "I_2_1", "I_2_2", "O"})));
    out.push_back(speed_table(2, "speed-slow-filter", "slow speed filter, t_s=10: event filtered",
                              labels({"I_0_1", "I_1_0", "I_1_1", "I_1_2", "I_2_0", "I_2_1", "I_2_2", "O"})));
    out.push_back(speed_table(3, "speed-fast-filter", "fast speed filter, t_s=7: event filtered",
                              labels({"I_b", "I_1_0", "I_1_1", "I_1_2", "I_2_0", "I_2_1", "O", "O_n"})));
    out.push_back(speed_table(4, "speed-fast-keep", "fast speed filter, t_s=7: event kept",
                              labels({"I_b", "I_1_0", "I_1_1", "I_1_2", "I_2_0", "I_2_1", "O", "O_n"})));
    out.push_back(dbscan_table(noise_scene(), "dbscan-noise", "DBSCAN noise event, bank I", labels({"I_1_1", "H0", "H1"})));
    out.push_back(dbscan_table(core_scene(), "dbscan-core-events", "DBSCAN core event, bank I",
                               labels({"I_0_0", "I_0_2", "I_1_1", "I_2_0", "H0", "H1", "H2", "O_c", "O_b"})));
    out.push_back(dbscan_table(core_scene(), "dbscan-core-neighbors", "DBSCAN core event, bank A",
                               labels({"A_0_0", "A_0_2", "A_1_1", "A_2_0", "A_2_2", "H3", "O_b"})));
    out.push_back(dbscan_table(border_scene(), "dbscan-border-events", "DBSCAN border event, bank I",
                               labels({"I_0_2", "I_1_1", "H0", "H2", "O_b"})));
    out.push_back(dbscan_table(border_scene(), "dbscan-border-neighbors", "DBSCAN border event, bank A",
                               labels({"A_0_0", "A_0_2", "A_1_1", "A_2_0", "H3", "O_b"})));
    return out;
}

SyntheticScene make_scene(const SceneConfig& config)
{
    if (config.extent.width <= 0 || config.extent.height <= 0) throw std::invalid_argument("scene extent must be positive");
    if (config.us_per_pixel <= 0 || config.duration_us <= 0) throw std::invalid_argument("scene timing must be positive");

    std::mt19937_64 rng(config.seed);
    std::vector<std::pair<Event, bool>> tagged;

    const std::int64_t steps = config.duration_us / config.us_per_pixel;
    for (std::int64_t k = 0; k < steps; ++k) {
        const std::int64_t t0 = k * config.us_per_pixel;
        for (std::int32_t dy = 0; dy < config.bar_height; ++dy) {
            for (std::int32_t dx = 0; dx < config.bar_width; ++dx) {
                const std::int64_t x = (config.bar_x0 + k + dx) % config.extent.width;
                const std::int64_t y = config.bar_y0 + dy;
                const bool fires = draw(rng, 100) < static_cast<std::uint64_t>(config.bar_fill_percent);
                const auto jitter = static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(config.us_per_pixel)));
                const auto polarity = static_cast<std::int8_t>(draw(rng, 2) == 0 ? 1 : -1);
                if (!fires || x >= config.extent.width || y >= config.extent.height) continue;
                tagged.push_back({{t0 + jitter, static_cast<std::int32_t>(x), static_cast<std::int32_t>(y), polarity}, false});
            }
        }
    }
    for (std::size_t i = 0; i < config.salt_events; ++i) {
        Event e;
        e.t_us = static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(config.duration_us)));
        e.x = static_cast<std::int32_t>(draw(rng, static_cast<std::uint64_t>(config.extent.width)));
        e.y = static_cast<std::int32_t>(draw(rng, static_cast<std::uint64_t>(config.extent.height)));
        e.polarity = static_cast<std::int8_t>(draw(rng, 2) == 0 ? 1 : -1);
        tagged.push_back({e, true});
    }
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first.t_us < b.first.t_us; });

    SyntheticScene scene;
    for (const auto& [e, salt] : tagged) {
        scene.events.push_back(e);
        scene.salt.push_back(salt);
    }
    return scene;
}

PointSet random_points(std::int32_t width, std::int32_t height, double density, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const auto cutoff = static_cast<std::uint64_t>(density * 1'000'000.0);
    std::vector<Pixel> out;
    for (std::int32_t y = 0; y < height; ++y) {
        for (std::int32_t x = 0; x < width; ++x) {
            if (draw(rng, 1'000'000) < cutoff) out.push_back({x, y});
        }
    }
    return PointSet(std::move(out));
}

}  // namespace evsnn
