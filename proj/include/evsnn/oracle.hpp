#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "evsnn/builders.hpp"
#include "evsnn/events.hpp"
#include "evsnn/labels.hpp"
#include "evsnn/pixel.hpp"

// Brute-force reference implementations. Nothing here calls into the engine,
// the network builders' layouts or the harness, so agreement with them is
// meaningful.
namespace evsnn::oracle {

int chebyshev(Pixel a, Pixel b);

/// Counts prev and cur pixels within ε of `center` (center included).
SpeedDecision oracle_speed(const PointSet& prev, const PointSet& cur, Pixel center, int epsilon, int threshold,
                           SpeedVariant variant);

/// Core: at least min_points points within ε (self included). Border: not
/// core, with a core point within ε. Noise otherwise.
LabelMap oracle_dbscan_label(const PointSet& points, int epsilon, int min_points);

struct Mismatch {
    std::size_t window = 0;
    Pixel point;
    Classification a = Classification::Noise;
    Classification b = Classification::Noise;
};

struct MismatchReport {
    std::vector<Mismatch> mismatches;

    bool empty() const { return mismatches.empty(); }
    std::size_t size() const { return mismatches.size(); }
    std::string to_string() const;
};

class StructuralMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws StructuralMismatch when the key sets differ.
MismatchReport compare_labels(const LabelMap& a, const LabelMap& b);

/// File-level comparison: windows are matched by position and a point absent
/// from one side counts as Noise there. Differing window counts or bounds
/// throw StructuralMismatch.
MismatchReport compare_label_windows(const std::vector<LabeledWindow>& a, const std::vector<LabeledWindow>& b);

/// DBSCAN per aggregation window, Noise dropped.
std::vector<LabeledWindow> oracle_classify_stream(const std::vector<Event>& events, int epsilon, int min_points,
                                                  std::int64_t window_us);

/// Speed decision per (bin, pixel), then DBSCAN on each window's surviving
/// pixels, Noise dropped.
std::vector<LabeledWindow> oracle_pipeline(const std::vector<Event>& events, const SpeedFilterParams& speed,
                                           const DbscanParams& dbscan, std::int64_t bin_us, std::int64_t window_us);

}  // namespace evsnn::oracle
