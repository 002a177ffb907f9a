#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "evsnn/pixel.hpp"

namespace evsnn {

struct Event {
    std::int64_t t_us = 0;
    std::int32_t x = 0;
    std::int32_t y = 0;
    std::int8_t polarity = 1;

    Pixel pixel() const { return {x, y}; }
    friend bool operator==(const Event&, const Event&) = default;
};

struct Extent {
    std::int32_t width = 0;
    std::int32_t height = 0;

    bool contains(Pixel p) const { return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height; }
    friend bool operator==(const Extent&, const Extent&) = default;
};

/// Input error carrying the 1-based line it was detected on.
class EventParseError : public std::runtime_error {
public:
    EventParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct EventStream {
    std::vector<Event> events;
    bool reordered = false;  // input timestamps were non-monotone; events were stably sorted
};

/// Reads `t_us,x,y,p` rows with an optional header. Blank lines and lines
/// starting with '#' are skipped.
EventStream read_events(std::istream& in);
void write_events(std::ostream& out, const std::vector<Event>& events);

/// Pixels active during [bin_index * bin_us, (bin_index + 1) * bin_us).
struct BinnedFrame {
    std::int64_t bin_index = 0;
    PointSet active;

    friend bool operator==(const BinnedFrame&, const BinnedFrame&) = default;
};

inline std::int64_t bin_of(std::int64_t t_us, std::int64_t bin_us) { return t_us / bin_us; }

/// Non-empty bins only, in increasing bin_index order. Polarity is dropped and
/// repeated pixels within a bin collapse to one.
std::vector<BinnedFrame> bin_events(const std::vector<Event>& events, std::int64_t bin_us);

struct Window {
    std::int64_t t_start_us = 0;
    std::int64_t duration_us = 0;
    std::vector<Event> events;
    PointSet points;
};

/// Contiguous half-open windows aligned to multiples of window_us, covering the
/// first through the last event. Windows in between may be empty. Input must be
/// sorted by t_us.
std::vector<Window> window_events(const std::vector<Event>& events, std::int64_t window_us);

/// Smallest extent containing every event (zero for an empty stream).
Extent extent_of(const std::vector<Event>& events);

}  // namespace evsnn
