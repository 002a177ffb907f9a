#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evsnn/pixel.hpp"

namespace evsnn {

enum class Classification { Core, Border, Noise };

enum class SpeedDecision { Keep, Filter };

using LabelMap = std::map<Pixel, Classification>;

std::string_view to_string(Classification c);
std::optional<Classification> parse_classification(std::string_view text);

std::string_view to_string(SpeedDecision d);

/// Labels of one aggregation window. Noise points are normally left out.
struct LabeledWindow {
    std::int64_t t_start_us = 0;
    std::int64_t duration_us = 0;
    LabelMap labels;

    friend bool operator==(const LabeledWindow&, const LabeledWindow&) = default;
};

/// Drops Noise entries.
LabelMap without_noise(const LabelMap& labels);

/// Label CSV: header `x,y,label`, then per window a `# window <k> <t_start_us> <duration_us>`
/// line followed by its rows in row-major order.
void write_labels(std::ostream& out, const std::vector<LabeledWindow>& windows);
std::string labels_to_string(const std::vector<LabeledWindow>& windows);

class LabelParseError : public std::runtime_error {
public:
    LabelParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Rows before any window marker belong to an implicit window 0.
std::vector<LabeledWindow> read_labels(std::istream& in);

}  // namespace evsnn
