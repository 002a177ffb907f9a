#include "evsnn/spike_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace evsnn {

namespace {

template <typename Int>
bool parse_uint(std::string_view text, Int& out)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end && !text.empty();
}

}  // namespace

SpikeSchedule read_schedule(std::istream& in)
{
    SpikeSchedule schedule;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (first) {
            first = false;
            if (line == "cycle,neuron") continue;
        }
        const std::size_t comma = line.find(',');
        const std::string where = "line " + std::to_string(line_no);
        if (comma == std::string::npos) throw ParseError(where, "expected cycle,neuron");
        Spike s;
        const std::string_view view(line);
        if (!parse_uint(view.substr(0, comma), s.cycle)) throw ParseError(where, "bad cycle");
        if (!parse_uint(view.substr(comma + 1), s.neuron)) throw ParseError(where, "bad neuron id");
        schedule.entries.push_back(s);
    }
    return schedule;
}

void write_schedule(std::ostream& out, const SpikeSchedule& schedule)
{
    out << "cycle,neuron\n";
    for (const auto& s : schedule.entries) out << s.cycle << ',' << s.neuron << '\n';
}

void write_fires(std::ostream& out, const FireRecord& fires)
{
    out << "neuron,cycle\n";
    for (const auto& f : fires.fires()) out << f.neuron << ',' << f.cycle << '\n';
}

std::string format_spike_table(const Network& net, const SpikeSchedule& schedule, const FireRecord& fires,
                               Cycle n_cycles, const std::vector<std::string>& columns)
{
    std::vector<std::string> names = columns;
    if (names.empty()) {
        for (const auto& n : net.neurons) {
            if (n.label) names.push_back(*n.label);
        }
    }
    std::vector<NeuronId> ids;
    for (const auto& name : names) ids.push_back(net.id_of(name));

    std::vector<std::string> applied(n_cycles);
    for (Cycle c = 0; c < n_cycles; ++c) {
        std::string cell;
        for (NeuronId id : schedule.at(c)) {
            if (!cell.empty()) cell += ",";
            cell += net.display_name(id);
        }
        applied[c] = cell.empty() ? "-" : cell;
    }

    std::size_t apply_width = 5;
    for (const auto& a : applied) apply_width = std::max(apply_width, a.size());

    std::ostringstream out;
    auto pad = [&](const std::string& s, std::size_t width) {
        out << s << std::string(width > s.size() ? width - s.size() : 0, ' ');
    };
    pad("cycle", 6);
    out << "| ";
    pad("apply", apply_width);
    out << " |";
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
    for (Cycle c = 0; c < n_cycles; ++c) {
        pad(std::to_string(c), 6);
        out << "| ";
        pad(applied[c], apply_width);
        out << " |";
        for (std::size_t k = 0; k < ids.size(); ++k) {
            out << ' ';
            pad(fires.fired_at(ids[k], c) ? "*" : "-", names[k].size());
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace evsnn
