#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "evsnn/events.hpp"
#include "evsnn/labels.hpp"

namespace evsnn {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlue{0, 0, 255};
inline constexpr Rgb kGreen{0, 255, 0};

struct RasterImage {
    std::int32_t width = 0;
    std::int32_t height = 0;
    std::vector<Rgb> pixels;  // row-major

    const Rgb& at(std::int32_t x, std::int32_t y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t count_not(const Rgb& color) const;
};

/// Present points are white unless labelled core (blue) or border (green);
/// everything else is black. Throws std::out_of_range for points outside
/// `extent` and std::invalid_argument for labels on absent points.
RasterImage render(const PointSet& points, const LabelMap& labels, Extent extent);

/// Binary PPM (P6, maxval 255).
void write_ppm(std::ostream& out, const RasterImage& image);

}  // namespace evsnn
