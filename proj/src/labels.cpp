#include "evsnn/labels.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace evsnn {

std::string_view to_string(Classification c)
{
    switch (c) {
    case Classification::Core: return "core";
    case Classification::Border: return "border";
    case Classification::Noise: return "noise";
    }
    return "?";
}

std::optional<Classification> parse_classification(std::string_view text)
{
    if (text == "core") return Classification::Core;
    if (text == "border") return Classification::Border;
    if (text == "noise") return Classification::Noise;
    return std::nullopt;
}

std::string_view to_string(SpeedDecision d)
{
    return d == SpeedDecision::Keep ? "keep" : "filter";
}

LabelMap without_noise(const LabelMap& labels)
{
    LabelMap out;
    for (const auto& [p, c] : labels) {
        if (c != Classification::Noise) out.emplace_hint(out.end(), p, c);
    }
    return out;
}

void write_labels(std::ostream& out, const std::vector<LabeledWindow>& windows)
{
    out << "x,y,label\n";
    for (std::size_t k = 0; k < windows.size(); ++k) {
        const auto& w = windows[k];
        out << "# window " << k << ' ' << w.t_start_us << ' ' << w.duration_us << '\n';
        for (const auto& [p, c] : w.labels) out << p.x << ',' << p.y << ',' << to_string(c) << '\n';
    }
}

std::string labels_to_string(const std::vector<LabeledWindow>& windows)
{
    std::ostringstream out;
    write_labels(out, windows);
    return out.str();
}

namespace {

template <typename Int>
bool parse_int(std::string_view text, Int& out)
{
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end && !text.empty();
}

}  // namespace

std::vector<LabeledWindow> read_labels(std::istream& in)
{
    std::vector<LabeledWindow> windows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# window", 0) == 0) {
            std::istringstream fields(line.substr(8));
            std::size_t index = 0;
            LabeledWindow w;
            if (!(fields >> index >> w.t_start_us >> w.duration_us)) throw LabelParseError(line_no, "bad window marker");
            if (index != windows.size()) throw LabelParseError(line_no, "window markers out of sequence");
            windows.push_back(std::move(w));
            continue;
        }
        if (line.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line == "x,y,label") continue;
        }

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) throw LabelParseError(line_no, "expected x,y,label");
        const std::string_view view(line);
        Pixel p;
        if (!parse_int(view.substr(0, c1), p.x) || !parse_int(view.substr(c1 + 1, c2 - c1 - 1), p.y)) {
            throw LabelParseError(line_no, "bad coordinate");
        }
        auto label = parse_classification(view.substr(c2 + 1));
        if (!label) throw LabelParseError(line_no, "unknown label '" + std::string(view.substr(c2 + 1)) + "'");
        if (windows.empty()) windows.emplace_back();
        if (!windows.back().labels.emplace(p, *label).second) throw LabelParseError(line_no, "duplicate point");
    }
    return windows;
}

}  // namespace evsnn
