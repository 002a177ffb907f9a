#include "evsnn/events.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace evsnn {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

template <typename Int>
bool parse_int(std::string_view text, Int& out)
{
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end && !text.empty();
}

bool looks_like_header(std::string_view line)
{
    for (char c : line) {
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return true;
    }
    return false;
}

}  // namespace

EventStream read_events(std::istream& in)
{
    EventStream out;
    std::string raw;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (first_data_line) {
            first_data_line = false;
            if (looks_like_header(line)) continue;
        }

        const auto fields = split(line);
        if (fields.size() != 4) throw EventParseError(line_no, "expected 4 fields (t_us,x,y,p)");
        Event e;
        std::int64_t x = 0, y = 0, p = 0;
        if (!parse_int(fields[0], e.t_us)) throw EventParseError(line_no, "bad timestamp");
        if (!parse_int(fields[1], x)) throw EventParseError(line_no, "bad x coordinate");
        if (!parse_int(fields[2], y)) throw EventParseError(line_no, "bad y coordinate");
        if (!parse_int(fields[3], p)) throw EventParseError(line_no, "bad polarity");
        if (e.t_us < 0) throw EventParseError(line_no, "negative timestamp");
        if (x < 0 || y < 0) throw EventParseError(line_no, "negative coordinate");
        if (x > INT32_MAX || y > INT32_MAX) throw EventParseError(line_no, "coordinate out of range");
        if (p != 1 && p != -1) throw EventParseError(line_no, "polarity must be 1 or -1");
        e.x = static_cast<std::int32_t>(x);
        e.y = static_cast<std::int32_t>(y);
        e.polarity = static_cast<std::int8_t>(p);
        if (!out.events.empty() && e.t_us < out.events.back().t_us) out.reordered = true;
        out.events.push_back(e);
    }
    if (out.reordered) {
        std::stable_sort(out.events.begin(), out.events.end(),
                         [](const Event& a, const Event& b) { return a.t_us < b.t_us; });
    }
    return out;
}

void write_events(std::ostream& out, const std::vector<Event>& events)
{
    out << "t_us,x,y,p\n";
    for (const auto& e : events) out << e.t_us << ',' << e.x << ',' << e.y << ',' << int{e.polarity} << '\n';
}

std::vector<BinnedFrame> bin_events(const std::vector<Event>& events, std::int64_t bin_us)
{
    if (bin_us <= 0) throw std::invalid_argument("bin width must be positive");
    std::vector<std::pair<std::int64_t, Pixel>> keyed;
    keyed.reserve(events.size());
    for (const auto& e : events) keyed.emplace_back(bin_of(e.t_us, bin_us), e.pixel());
    std::sort(keyed.begin(), keyed.end());

    std::vector<BinnedFrame> frames;
    std::size_t i = 0;
    while (i < keyed.size()) {
        const std::int64_t bin = keyed[i].first;
        std::vector<Pixel> pixels;
        for (; i < keyed.size() && keyed[i].first == bin; ++i) pixels.push_back(keyed[i].second);
        frames.push_back({bin, PointSet(std::move(pixels))});
    }
    return frames;
}

std::vector<Window> window_events(const std::vector<Event>& events, std::int64_t window_us)
{
    if (window_us <= 0) throw std::invalid_argument("window length must be positive");
    std::vector<Window> windows;
    if (events.empty()) return windows;
    if (!std::is_sorted(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t_us < b.t_us; })) {
        throw std::invalid_argument("events must be sorted by timestamp");
    }

    const std::int64_t first = bin_of(events.front().t_us, window_us);
    const std::int64_t last = bin_of(events.back().t_us, window_us);
    windows.resize(static_cast<std::size_t>(last - first + 1));
    for (std::size_t k = 0; k < windows.size(); ++k) {
        windows[k].t_start_us = (first + static_cast<std::int64_t>(k)) * window_us;
        windows[k].duration_us = window_us;
    }
    for (const auto& e : events) {
        const std::int64_t w = bin_of(e.t_us, window_us);
        windows[static_cast<std::size_t>(w - first)].events.push_back(e);
    }
    for (auto& w : windows) {
        std::vector<Pixel> pixels;
        pixels.reserve(w.events.size());
        for (const auto& e : w.events) pixels.push_back(e.pixel());
        w.points = PointSet(std::move(pixels));
    }
    return windows;
}

Extent extent_of(const std::vector<Event>& events)
{
    Extent ext;
    for (const auto& e : events) {
        ext.width = std::max(ext.width, e.x + 1);
        ext.height = std::max(ext.height, e.y + 1);
    }
    return ext;
}

}  // namespace evsnn
