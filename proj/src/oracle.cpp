#include "evsnn/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace evsnn::oracle {

int chebyshev(Pixel a, Pixel b)
{
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

SpeedDecision oracle_speed(const PointSet& prev, const PointSet& cur, Pixel center, int epsilon, int threshold,
                           SpeedVariant variant)
{
    int count = 0;
    for (Pixel p : prev) count += chebyshev(p, center) <= epsilon ? 1 : 0;
    for (Pixel p : cur) count += chebyshev(p, center) <= epsilon ? 1 : 0;
    const bool fast = count > threshold;
    if (variant == SpeedVariant::FilterSlow) return fast ? SpeedDecision::Keep : SpeedDecision::Filter;
    return fast ? SpeedDecision::Filter : SpeedDecision::Keep;
}

LabelMap oracle_dbscan_label(const PointSet& points, int epsilon, int min_points)
{
    const auto& pts = points.pixels();
    std::vector<bool> core(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int count = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) count += chebyshev(pts[i], pts[j]) <= epsilon ? 1 : 0;
        core[i] = count >= min_points;
    }
    LabelMap out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Classification label = Classification::Noise;
        if (core[i]) {
            label = Classification::Core;
        } else {
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (core[j] && chebyshev(pts[i], pts[j]) <= epsilon) {
                    label = Classification::Border;
                    break;
                }
            }
        }
        out.emplace(pts[i], label);
    }
    return out;
}

std::string MismatchReport::to_string() const
{
    std::ostringstream out;
    for (const auto& m : mismatches) {
        out << "window " << m.window << " (" << m.point.x << "," << m.point.y << "): " << evsnn::to_string(m.a)
            << " vs " << evsnn::to_string(m.b) << '\n';
    }
    return out.str();
}

MismatchReport compare_labels(const LabelMap& a, const LabelMap& b)
{
    if (a.size() != b.size()) throw StructuralMismatch("label maps cover different points");
    MismatchReport report;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first) throw StructuralMismatch("label maps cover different points");
        if (ia->second != ib->second) report.mismatches.push_back({0, ia->first, ia->second, ib->second});
    }
    return report;
}

MismatchReport compare_label_windows(const std::vector<LabeledWindow>& a, const std::vector<LabeledWindow>& b)
{
    if (a.size() != b.size()) {
        throw StructuralMismatch("window counts differ: " + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
    }
    MismatchReport report;
    for (std::size_t w = 0; w < a.size(); ++w) {
        if (a[w].t_start_us != b[w].t_start_us || a[w].duration_us != b[w].duration_us) {
            throw StructuralMismatch("window " + std::to_string(w) + " bounds differ");
        }
        std::set<Pixel> keys;
        for (const auto& [p, c] : a[w].labels) keys.insert(p);
        for (const auto& [p, c] : b[w].labels) keys.insert(p);
        for (Pixel p : keys) {
            const auto la = a[w].labels.find(p);
            const auto lb = b[w].labels.find(p);
            const Classification ca = la == a[w].labels.end() ? Classification::Noise : la->second;
            const Classification cb = lb == b[w].labels.end() ? Classification::Noise : lb->second;
            if (ca != cb) report.mismatches.push_back({w, p, ca, cb});
        }
    }
    return report;
}

namespace {

struct WindowGroups {
    std::int64_t first = 0;
    std::vector<std::vector<const Event*>> events;
};

WindowGroups group_windows(const std::vector<Event>& events, std::int64_t window_us)
{
    WindowGroups g;
    if (events.empty()) return g;
    std::int64_t lo = events.front().t_us / window_us;
    std::int64_t hi = lo;
    for (const auto& e : events) {
        lo = std::min(lo, e.t_us / window_us);
        hi = std::max(hi, e.t_us / window_us);
    }
    g.first = lo;
    g.events.resize(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& e : events) g.events[static_cast<std::size_t>(e.t_us / window_us - lo)].push_back(&e);
    return g;
}

LabeledWindow label_window(std::int64_t start, std::int64_t duration, const std::set<Pixel>& pixels, int epsilon,
                           int min_points)
{
    LabeledWindow out{start, duration, {}};
    for (const auto& [p, c] : oracle_dbscan_label(PointSet(std::vector<Pixel>(pixels.begin(), pixels.end())),
                                                  epsilon, min_points)) {
        if (c != Classification::Noise) out.labels.emplace(p, c);
    }
    return out;
}

}  // namespace

std::vector<LabeledWindow> oracle_classify_stream(const std::vector<Event>& events, int epsilon, int min_points,
                                                  std::int64_t window_us)
{
    const WindowGroups groups = group_windows(events, window_us);
    std::vector<LabeledWindow> out;
    for (std::size_t k = 0; k < groups.events.size(); ++k) {
        std::set<Pixel> pixels;
        for (const Event* e : groups.events[k]) pixels.insert({e->x, e->y});
        out.push_back(label_window((groups.first + static_cast<std::int64_t>(k)) * window_us, window_us, pixels,
                                   epsilon, min_points));
    }
    return out;
}

std::vector<LabeledWindow> oracle_pipeline(const std::vector<Event>& events, const SpeedFilterParams& speed,
                                           const DbscanParams& dbscan, std::int64_t bin_us, std::int64_t window_us)
{
    std::map<std::int64_t, std::set<Pixel>> bins;
    for (const auto& e : events) bins[e.t_us / bin_us].insert({e.x, e.y});

    auto as_set = [](const std::set<Pixel>& s) { return PointSet(std::vector<Pixel>(s.begin(), s.end())); };
    std::map<std::int64_t, PointSet> bin_sets;
    for (const auto& [b, s] : bins) bin_sets.emplace(b, as_set(s));

    std::map<std::pair<std::int64_t, Pixel>, SpeedDecision> decision;
    const PointSet none;
    for (const auto& [b, cur] : bin_sets) {
        const auto prev_it = bin_sets.find(b - 1);
        const PointSet& prev = prev_it == bin_sets.end() ? none : prev_it->second;
        for (Pixel p : cur) {
            decision[{b, p}] = oracle_speed(prev, cur, p, speed.epsilon, speed.threshold, speed.variant);
        }
    }

    const WindowGroups groups = group_windows(events, window_us);
    std::vector<LabeledWindow> out;
    for (std::size_t k = 0; k < groups.events.size(); ++k) {
        std::set<Pixel> survivors;
        for (const Event* e : groups.events[k]) {
            const Pixel p{e->x, e->y};
            if (decision.at({e->t_us / bin_us, p}) == SpeedDecision::Keep) survivors.insert(p);
        }
        out.push_back(label_window((groups.first + static_cast<std::int64_t>(k)) * window_us, window_us, survivors,
                                   dbscan.epsilon, dbscan.min_points));
    }
    return out;
}

}  // namespace evsnn::oracle
