#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "evsnn/oracle.hpp"
#include "evsnn/scenarios.hpp"

using namespace evsnn;
using namespace evsnn::oracle;

namespace {

PointSet shifted(const PointSet& pts, int dx, int dy)
{
    std::vector<Pixel> out;
    for (Pixel p : pts) out.push_back({p.x + dx, p.y + dy});
    return PointSet(std::move(out));
}

std::set<Pixel> with_label(const LabelMap& m, Classification c)
{
    std::set<Pixel> out;
    for (const auto& [p, l] : m) {
        if (l == c) out.insert(p);
    }
    return out;
}

}  // namespace

TEST_CASE("chebyshev")
{
    CHECK(chebyshev({0, 0}, {3, -2}) == 3);
    CHECK(chebyshev({5, 5}, {5, 5}) == 0);
}

TEST_CASE("oracle_speed")
{
    const SpeedScene one = speed_scene(1);
    CHECK(oracle_speed(one.prev.active, one.cur.active, one.event, 1, 10, SpeedVariant::FilterSlow) == SpeedDecision::Keep);
    CHECK(oracle_speed(one.prev.active, one.cur.active, one.event, 1, 11, SpeedVariant::FilterSlow) == SpeedDecision::Filter);

    const SpeedScene four = speed_scene(4);
    CHECK(oracle_speed(four.prev.active, four.cur.active, four.event, 1, 7, SpeedVariant::FilterFast) == SpeedDecision::Keep);
    CHECK(oracle_speed(four.prev.active, four.cur.active, four.event, 1, 5, SpeedVariant::FilterFast) == SpeedDecision::Filter);

    CHECK(oracle_speed({}, PointSet{{3, 3}}, {3, 3}, 1, 0, SpeedVariant::FilterSlow) == SpeedDecision::Keep);
}

TEST_CASE("oracle_dbscan_label")
{
    const LabelMap core = oracle_dbscan_label(core_scene().points, 1, 3);
    CHECK(core.at({1, 1}) == Classification::Core);
    CHECK(core.at({0, 0}) == Classification::Border);
    CHECK(core.at({0, 2}) == Classification::Border);
    CHECK(core.at({2, 0}) == Classification::Border);

    CHECK(oracle_dbscan_label(PointSet{{4, 4}}, 1, 3).at({4, 4}) == Classification::Noise);

    for (const auto& [p, l] : oracle_dbscan_label(random_points(20, 20, 0.1, 4), 1, 1)) CHECK(l == Classification::Core);

    const LabelMap border = oracle_dbscan_label(border_scene().points, 1, 3);
    CHECK(border.at({2, 2}) == Classification::Border);
    CHECK(border.at({3, 1}) == Classification::Core);
}

TEST_CASE("oracle_dbscan_label properties")
{
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        const PointSet pts = random_points(24, 24, 0.05 + 0.01 * (trial % 15), rng());
        const int eps = 1 + trial % 3;
        const int m = 2 + trial % 6;
        const LabelMap base = oracle_dbscan_label(pts, eps, m);

        // partition
        CHECK(base.size() == pts.size());
        const auto core = with_label(base, Classification::Core);
        const auto border = with_label(base, Classification::Border);
        const auto noise = with_label(base, Classification::Noise);
        CHECK(core.size() + border.size() + noise.size() == pts.size());

        // translation
        const int dx = static_cast<int>(rng() % 50) - 25;
        const int dy = static_cast<int>(rng() % 50) - 25;
        for (const auto& [p, l] : oracle_dbscan_label(shifted(pts, dx, dy), eps, m)) {
            CHECK(base.at({p.x - dx, p.y - dy}) == l);
        }

        // monotonicity of the core set
        const auto core_more_points = with_label(oracle_dbscan_label(pts, eps, m + 1), Classification::Core);
        CHECK(std::includes(core.begin(), core.end(), core_more_points.begin(), core_more_points.end()));
        const auto core_wider = with_label(oracle_dbscan_label(pts, eps + 1, m), Classification::Core);
        CHECK(std::includes(core_wider.begin(), core_wider.end(), core.begin(), core.end()));
    }
}

TEST_CASE("oracle_dbscan_label ignores input order")
{
    std::vector<Pixel> pts(random_points(16, 16, 0.3, 8).pixels());
    const LabelMap reference = oracle_dbscan_label(PointSet(pts), 1, 3);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(pts.begin(), pts.end(), rng);
        CHECK(oracle_dbscan_label(PointSet(pts), 1, 3) == reference);
    }
}

TEST_CASE("compare_labels")
{
    const LabelMap a = oracle_dbscan_label(core_scene().points, 1, 3);
    CHECK(compare_labels(a, a).empty());

    LabelMap b = a;
    b[{0, 0}] = Classification::Noise;
    const MismatchReport r = compare_labels(a, b);
    REQUIRE(r.size() == 1);
    CHECK(r.mismatches[0].point == Pixel{0, 0});
    CHECK(r.mismatches[0].a == Classification::Border);
    CHECK(r.mismatches[0].b == Classification::Noise);
    CHECK(r.to_string().find("0,0") != std::string::npos);

    LabelMap c = a;
    c.erase({0, 0});
    CHECK_THROWS_AS(compare_labels(a, c), StructuralMismatch);
}

TEST_CASE("compare_label_windows treats absent rows as noise")
{
    const std::vector<LabeledWindow> a{{0, 10, {{{1, 1}, Classification::Core}}}};
    const std::vector<LabeledWindow> b{{0, 10, {{{1, 1}, Classification::Core}, {{5, 5}, Classification::Noise}}}};
    CHECK(compare_label_windows(a, b).empty());
    const std::vector<LabeledWindow> c{{0, 10, {}}};
    CHECK(compare_label_windows(a, c).size() == 1);
    CHECK_THROWS_AS(compare_label_windows(a, {}), StructuralMismatch);
    CHECK_THROWS_AS(compare_label_windows(a, {{0, 20, {}}}), StructuralMismatch);
}

TEST_CASE("oracle streams")
{
    CHECK(oracle_classify_stream({}, 1, 3, 1000).empty());
    const std::vector<Event> events{{0, 0, 0, 1}, {1, 1, 0, 1}, {2, 2, 0, 1}, {1500, 9, 9, 1}, {3100, 0, 0, 1}};
    const auto windows = oracle_classify_stream(events, 1, 3, 1000);
    REQUIRE(windows.size() == 4);
    CHECK(windows[0].labels.size() == 3);
    CHECK(windows[0].labels.at({1, 0}) == Classification::Core);
    CHECK(windows[1].labels.empty());
    CHECK(windows[2].labels.empty());
    CHECK(windows[3].t_start_us == 3000);
}
