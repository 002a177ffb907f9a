#include "evsnn/harness.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "evsnn/parallel.hpp"

namespace evsnn {

PointIndex::PointIndex(const PointSet& points)
{
    if (points.empty()) return;
    std::int32_t min_x = std::numeric_limits<std::int32_t>::max();
    std::int32_t max_x = std::numeric_limits<std::int32_t>::min();
    for (Pixel p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
    }
    // PointSet is row-major, so the y range is at the ends.
    origin_ = {min_x, points[0].y};
    width_ = std::int64_t{max_x} - min_x + 1;
    height_ = std::int64_t{points[points.size() - 1].y} - points[0].y + 1;
    bits_.assign(static_cast<std::size_t>(width_ * height_), 0);
    for (Pixel p : points) bits_[static_cast<std::size_t>((p.y - origin_.y) * width_ + (p.x - origin_.x))] = 1;
}

PointSet neighborhood(const PointSet& points, Pixel center, int epsilon)
{
    std::vector<Pixel> out;
    for (int dy = -epsilon; dy <= epsilon; ++dy) {
        for (int dx = -epsilon; dx <= epsilon; ++dx) {
            const Pixel p{center.x + dx, center.y + dy};
            if (points.contains(p)) out.push_back(p);
        }
    }
    return PointSet(std::move(out));
}

// ---- speed filter ----------------------------------------------------------

namespace {

void encode_speed_into(const PointIndex& prev, const PointIndex& cur, Pixel event, const SpeedLayout& layout,
                       SpikeSchedule& out)
{
    out.entries.clear();
    const PatchMapping patch{event, layout.epsilon};
    if (layout.fast) out.add(0, layout.bias);
    prev.for_each_near(event, layout.epsilon, [&](Pixel p) { out.add(0, layout.input(*patch.map(p))); });
    cur.for_each_near(event, layout.epsilon, [&](Pixel p) { out.add(1, layout.input(*patch.map(p))); });
}

}  // namespace

SpikeSchedule encode_speed(const BinnedFrame& prev, const BinnedFrame& cur, Pixel event, const SpeedFilterParams& p)
{
    check_params(p);
    if (!cur.active.contains(event)) throw std::invalid_argument("event pixel is not active in the current bin");
    SpikeSchedule schedule;
    encode_speed_into(PointIndex(prev.active), PointIndex(cur.active), event, speed_layout(p), schedule);
    return schedule;
}

SpeedDecision decide_speed(const FireRecord& fires, const SpeedFilterParams& p)
{
    return fires.fired(speed_layout(p).decision()) ? SpeedDecision::Keep : SpeedDecision::Filter;
}

SpeedFilter::SpeedFilter(const SpeedFilterParams& p)
    : params_(p), network_(build_speed(p)), layout_(speed_layout(p)), compiled_(network_)
{
}

SpeedDecision SpeedFilter::decide(const PointIndex& prev, const PointIndex& cur, Pixel event, RunContext& ctx) const
{
    encode_speed_into(prev, cur, event, layout_, ctx.schedule);
    const FireRecord fires = ctx.engine.run(ctx.schedule, layout_.cycles());
    return fires.fired(layout_.decision()) ? SpeedDecision::Keep : SpeedDecision::Filter;
}

std::vector<std::vector<SpeedDecision>> speed_decisions(const std::vector<BinnedFrame>& bins,
                                                        const SpeedFilterParams& p, unsigned threads)
{
    const SpeedFilter filter(p);
    std::vector<PointIndex> indexes;
    indexes.reserve(bins.size());
    for (const auto& b : bins) indexes.emplace_back(b.active);
    const PointIndex empty;

    std::vector<std::pair<std::size_t, std::size_t>> tasks;  // (bin, pixel)
    std::vector<std::vector<SpeedDecision>> out(bins.size());
    for (std::size_t b = 0; b < bins.size(); ++b) {
        out[b].resize(bins[b].active.size(), SpeedDecision::Filter);
        for (std::size_t k = 0; k < bins[b].active.size(); ++k) tasks.emplace_back(b, k);
    }

    parallel_for(tasks.size(), threads, [&](std::size_t begin, std::size_t end) {
        RunContext ctx = filter.make_context();
        for (std::size_t t = begin; t < end; ++t) {
            const auto [b, k] = tasks[t];
            const bool has_prev = b > 0 && bins[b - 1].bin_index + 1 == bins[b].bin_index;
            out[b][k] = filter.decide(has_prev ? indexes[b - 1] : empty, indexes[b], bins[b].active[k], ctx);
        }
    });
    return out;
}

std::vector<BinnedFrame> filter_speed(const std::vector<BinnedFrame>& bins, const SpeedFilterParams& p,
                                      unsigned threads)
{
    const auto decisions = speed_decisions(bins, p, threads);
    std::vector<BinnedFrame> out;
    out.reserve(bins.size());
    for (std::size_t b = 0; b < bins.size(); ++b) {
        std::vector<Pixel> kept;
        for (std::size_t k = 0; k < bins[b].active.size(); ++k) {
            if (decisions[b][k] == SpeedDecision::Keep) kept.push_back(bins[b].active[k]);
        }
        out.push_back({bins[b].bin_index, PointSet(std::move(kept))});
    }
    return out;
}

std::vector<bool> speed_keep_mask(const std::vector<Event>& events, const SpeedFilterParams& p, std::int64_t bin_us,
                                  unsigned threads)
{
    const auto bins = bin_events(events, bin_us);
    const auto decisions = speed_decisions(bins, p, threads);
    std::vector<bool> keep;
    keep.reserve(events.size());
    for (const auto& e : events) {
        const std::int64_t bin = bin_of(e.t_us, bin_us);
        const auto it = std::lower_bound(bins.begin(), bins.end(), bin,
                                         [](const BinnedFrame& f, std::int64_t b) { return f.bin_index < b; });
        const auto& active = it->active.pixels();
        const auto k = static_cast<std::size_t>(std::lower_bound(active.begin(), active.end(), e.pixel()) - active.begin());
        keep.push_back(decisions[static_cast<std::size_t>(it - bins.begin())][k] == SpeedDecision::Keep);
    }
    return keep;
}

// ---- DBSCAN ----------------------------------------------------------------

namespace {

void encode_dbscan_into(const PointIndex& points, Pixel event, const DbscanLayout& layout, Cycle horizon,
                        SpikeSchedule& out)
{
    out.entries.clear();
    const int eps = layout.epsilon;
    const PatchMapping patch{event, eps};
    Cycle next = 0;
    points.for_each_near(event, eps, [&](Pixel p) {
        out.add(0, layout.event_input(*patch.map(p)));
        if (p == event || next >= horizon) return;
        const Cycle cycle = next++;
        const PatchMapping sub{p, eps};
        points.for_each_near(p, eps, [&](Pixel q) { out.add(cycle, layout.neighbor_input(*sub.map(q))); });
    });
}

}  // namespace

SpikeSchedule encode_dbscan(const PointSet& points, Pixel event, const DbscanParams& p)
{
    check_params(p);
    if (!points.contains(event)) throw std::invalid_argument("event pixel is not in the point set");
    SpikeSchedule schedule;
    encode_dbscan_into(PointIndex(points), event, dbscan_layout(p), std::numeric_limits<Cycle>::max(), schedule);
    return schedule;
}

Classification decode_dbscan(const FireRecord& fires, const DbscanLayout& layout)
{
    if (fires.fired(layout.core)) return Classification::Core;
    if (fires.fired(layout.border)) return Classification::Border;
    return Classification::Noise;
}

DbscanClassifier::DbscanClassifier(const DbscanParams& p)
    : params_(p), network_(build_dbscan(p)), layout_(dbscan_layout(p)), compiled_(network_)
{
}

DbscanRun DbscanClassifier::run(const PointIndex& points, Pixel event, RunContext& ctx) const
{
    if (!points.contains(event)) throw std::invalid_argument("event pixel is not in the point set");
    const Cycle cycles = layout_.cycles();
    encode_dbscan_into(points, event, layout_, cycles, ctx.schedule);
    DbscanRun result;
    result.fires = ctx.engine.run(ctx.schedule, cycles);
    result.label = decode_dbscan(result.fires, layout_);
    return result;
}

Classification classify_event(const PointSet& points, Pixel event, const DbscanParams& p)
{
    const DbscanClassifier classifier(p);
    RunContext ctx = classifier.make_context();
    return classifier.classify(PointIndex(points), event, ctx);
}

namespace {

LabelMap classify_with(const DbscanClassifier& classifier, const PointSet& points, unsigned threads)
{
    const PointIndex index(points);
    std::vector<Classification> labels(points.size(), Classification::Noise);
    parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
        RunContext ctx = classifier.make_context();
        for (std::size_t i = begin; i < end; ++i) labels[i] = classifier.classify(index, points[i], ctx);
    });
    LabelMap out;
    for (std::size_t i = 0; i < points.size(); ++i) out.emplace_hint(out.end(), points[i], labels[i]);
    return out;
}

}  // namespace

LabelMap classify_window(const PointSet& points, const DbscanParams& p, unsigned threads)
{
    const DbscanClassifier classifier(p);
    return classify_with(classifier, points, threads);
}

// ---- pipeline ----------------------------------------------------------------

std::vector<PipelineWindow> classify_stream(const std::vector<Event>& events, const DbscanParams& p,
                                            std::int64_t window_us, unsigned threads, PipelineStats* stats)
{
    const DbscanClassifier classifier(p);
    std::vector<PipelineWindow> out;
    for (auto& w : window_events(events, window_us)) {
        PipelineWindow pw{w.t_start_us, w.duration_us, w.points, w.points, {}};
        pw.labels = without_noise(classify_with(classifier, pw.survivors, threads));
        if (stats) {
            stats->events += w.events.size();
            stats->dbscan_runs += pw.survivors.size();
            stats->cycles += pw.survivors.size() * classifier.layout().cycles();
        }
        out.push_back(std::move(pw));
    }
    return out;
}

std::vector<PipelineWindow> pipeline(const std::vector<Event>& events, const PipelineConfig& config,
                                     PipelineStats* stats)
{
    check_params(config.speed);
    check_params(config.dbscan);
    const std::vector<bool> keep = speed_keep_mask(events, config.speed, config.bin_us, config.threads);

    const DbscanClassifier classifier(config.dbscan);
    std::vector<PipelineWindow> out;
    std::size_t next = 0;  // windows partition the sorted stream in order
    for (auto& w : window_events(events, config.window_us)) {
        std::vector<Pixel> survivors;
        for (const auto& e : w.events) {
            if (keep[next++]) survivors.push_back(e.pixel());
        }
        PipelineWindow pw{w.t_start_us, w.duration_us, w.points, PointSet(std::move(survivors)), {}};
        pw.labels = without_noise(classify_with(classifier, pw.survivors, config.threads));
        if (stats) {
            stats->events += w.events.size();
            stats->dbscan_runs += pw.survivors.size();
            stats->cycles += pw.survivors.size() * classifier.layout().cycles();
        }
        out.push_back(std::move(pw));
    }
    if (stats) {
        const Cycle speed_cycles = speed_layout(config.speed).cycles();
        for (const auto& b : bin_events(events, config.bin_us)) {
            stats->speed_runs += b.active.size();
            stats->cycles += b.active.size() * speed_cycles;
        }
    }
    return out;
}

}  // namespace evsnn
