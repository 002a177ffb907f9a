#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evsnn/builders.hpp"
#include "evsnn/engine.hpp"
#include "evsnn/events.hpp"
#include "evsnn/labels.hpp"
#include "evsnn/pixel.hpp"

namespace evsnn {

/// Maps pixels near `center` onto a (2ε+1)² input bank.
struct PatchMapping {
    Pixel center;
    int epsilon = 1;

    std::optional<GridIndex> map(Pixel p) const
    {
        const int dx = p.x - center.x;
        const int dy = p.y - center.y;
        if (dx < -epsilon || dx > epsilon || dy < -epsilon || dy > epsilon) return std::nullopt;
        return GridIndex{dy + epsilon, dx + epsilon};
    }
    Pixel unmap(GridIndex g) const { return {center.x + g.col - epsilon, center.y + g.row - epsilon}; }
};

/// Occupancy bitmap over the bounding box of a point set.
class PointIndex {
public:
    PointIndex() = default;
    explicit PointIndex(const PointSet& points);

    bool contains(Pixel p) const
    {
        const std::int64_t dx = std::int64_t{p.x} - origin_.x;
        const std::int64_t dy = std::int64_t{p.y} - origin_.y;
        if (dx < 0 || dy < 0 || dx >= width_ || dy >= height_) return false;
        return bits_[static_cast<std::size_t>(dy * width_ + dx)] != 0;
    }

    /// Visits occupied pixels within Chebyshev distance `epsilon` of `center`,
    /// row-major.
    template <typename Fn>
    void for_each_near(Pixel center, int epsilon, Fn&& fn) const
    {
        for (int dy = -epsilon; dy <= epsilon; ++dy) {
            for (int dx = -epsilon; dx <= epsilon; ++dx) {
                const Pixel p{center.x + dx, center.y + dy};
                if (contains(p)) fn(p);
            }
        }
    }

private:
    Pixel origin_;
    std::int64_t width_ = 0;
    std::int64_t height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Per-thread engine plus a reusable schedule buffer.
struct RunContext {
    Engine engine;
    SpikeSchedule schedule;
};

/// Points of `points` within Chebyshev distance ε of `center`, center included.
PointSet neighborhood(const PointSet& points, Pixel center, int epsilon);

// ---- speed filter -------------------------------------------------------

/// Cycle 0: previous-bin patch (plus the bias neuron for the fast variant).
/// Cycle 1: current-bin patch; the event itself lands on I_{ε,ε}.
/// Throws std::invalid_argument if `event` is not active in `cur`.
SpikeSchedule encode_speed(const BinnedFrame& prev, const BinnedFrame& cur, Pixel event, const SpeedFilterParams& p);
SpeedDecision decide_speed(const FireRecord& fires, const SpeedFilterParams& p);

/// Built and compiled speed-filter network. Concurrent decide() calls are safe
/// with one RunContext per thread; contexts must not outlive the filter.
class SpeedFilter {
public:
    explicit SpeedFilter(const SpeedFilterParams& p);
    SpeedFilter(const SpeedFilter&) = delete;
    SpeedFilter& operator=(const SpeedFilter&) = delete;

    const SpeedFilterParams& params() const { return params_; }
    const Network& network() const { return network_; }
    const SpeedLayout& layout() const { return layout_; }
    RunContext make_context() const { return {Engine(compiled_), {}}; }

    SpeedDecision decide(const PointIndex& prev, const PointIndex& cur, Pixel event, RunContext& ctx) const;

private:
    SpeedFilterParams params_;
    Network network_;
    SpeedLayout layout_;
    CompiledNetwork compiled_;
};

/// Decision for every active pixel of every bin, in PointSet order. The
/// previous bin is the frame with bin_index - 1, or empty.
std::vector<std::vector<SpeedDecision>> speed_decisions(const std::vector<BinnedFrame>& bins,
                                                        const SpeedFilterParams& p, unsigned threads = 1);

/// Same bins, keeping only pixels the network passes.
std::vector<BinnedFrame> filter_speed(const std::vector<BinnedFrame>& bins, const SpeedFilterParams& p,
                                      unsigned threads = 1);

/// Per-event keep flags for a time-sorted stream: an event is kept when the
/// network passes its pixel in its bin.
std::vector<bool> speed_keep_mask(const std::vector<Event>& events, const SpeedFilterParams& p, std::int64_t bin_us,
                                  unsigned threads = 1);

// ---- DBSCAN -------------------------------------------------------------

/// Cycle 0: the event's neighborhood on bank I. Cycle k: the full
/// neighborhood of the event's k-th neighbor (row-major, event excluded) on
/// bank A, centered on that neighbor. Throws if `event` is not in `points`.
SpikeSchedule encode_dbscan(const PointSet& points, Pixel event, const DbscanParams& p);

/// O_c fired => Core; else O_b fired => Border; else Noise.
Classification decode_dbscan(const FireRecord& fires, const DbscanLayout& layout);

struct DbscanRun {
    Classification label = Classification::Noise;
    FireRecord fires;
};

class DbscanClassifier {
public:
    explicit DbscanClassifier(const DbscanParams& p);
    DbscanClassifier(const DbscanClassifier&) = delete;
    DbscanClassifier& operator=(const DbscanClassifier&) = delete;

    const DbscanParams& params() const { return params_; }
    const Network& network() const { return network_; }
    const DbscanLayout& layout() const { return layout_; }
    RunContext make_context() const { return {Engine(compiled_), {}}; }

    /// Runs min_points + 4 cycles from a cleared state. Bank-A spikes past the
    /// run horizon are not applied; they could not reach an output in time.
    DbscanRun run(const PointIndex& points, Pixel event, RunContext& ctx) const;
    Classification classify(const PointIndex& points, Pixel event, RunContext& ctx) const
    {
        return run(points, event, ctx).label;
    }

private:
    DbscanParams params_;
    Network network_;
    DbscanLayout layout_;
    CompiledNetwork compiled_;
};

Classification classify_event(const PointSet& points, Pixel event, const DbscanParams& p);

/// Every point classified from an independent cleared-state run. Includes Noise.
LabelMap classify_window(const PointSet& points, const DbscanParams& p, unsigned threads = 1);

// ---- speed -> DBSCAN pipeline ------------------------------------------

struct PipelineConfig {
    SpeedFilterParams speed{1, 9, SpeedVariant::FilterFast};
    DbscanParams dbscan{3, 10};
    std::int64_t bin_us = 1000;
    std::int64_t window_us = 50000;
    unsigned threads = 1;
};

struct PipelineStats {
    std::uint64_t events = 0;
    std::uint64_t speed_runs = 0;
    std::uint64_t dbscan_runs = 0;
    std::uint64_t cycles = 0;
};

struct PipelineWindow {
    std::int64_t t_start_us = 0;
    std::int64_t duration_us = 0;
    PointSet input;      // unique pixels before filtering
    PointSet survivors;  // pixels with at least one event kept by the speed filter
    LabelMap labels;     // core / border only

    LabeledWindow labeled() const { return {t_start_us, duration_us, labels}; }
};

/// Speed filter over the whole stream (bin by bin), then DBSCAN on each
/// window's surviving pixels; Noise is dropped. `events` must be time-sorted.
std::vector<PipelineWindow> pipeline(const std::vector<Event>& events, const PipelineConfig& config,
                                     PipelineStats* stats = nullptr);

/// Same as pipeline() without the speed stage.
std::vector<PipelineWindow> classify_stream(const std::vector<Event>& events, const DbscanParams& p,
                                            std::int64_t window_us, unsigned threads = 1,
                                            PipelineStats* stats = nullptr);

}  // namespace evsnn
