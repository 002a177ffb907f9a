#include "evsnn/render.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace evsnn {

std::size_t RasterImage::count_not(const Rgb& color) const
{
    return static_cast<std::size_t>(
        std::count_if(pixels.begin(), pixels.end(), [&](const Rgb& p) { return p != color; }));
}

RasterImage render(const PointSet& points, const LabelMap& labels, Extent extent)
{
    if (extent.width < 0 || extent.height < 0) throw std::invalid_argument("negative image extent");
    RasterImage image{extent.width, extent.height,
                      std::vector<Rgb>(static_cast<std::size_t>(extent.width) * extent.height, kBlack)};
    auto paint = [&](Pixel p, const Rgb& color) {
        if (!extent.contains(p)) {
            throw std::out_of_range("point (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") outside " +
                                    std::to_string(extent.width) + "x" + std::to_string(extent.height));
        }
        image.pixels[static_cast<std::size_t>(p.y) * extent.width + p.x] = color;
    };
    for (Pixel p : points) paint(p, kWhite);
    for (const auto& [p, label] : labels) {
        if (!points.contains(p)) throw std::invalid_argument("label for a point that is not in the window");
        switch (label) {
        case Classification::Core: paint(p, kBlue); break;
        case Classification::Border: paint(p, kGreen); break;
        case Classification::Noise: break;
        }
    }
    return image;
}

void write_ppm(std::ostream& out, const RasterImage& image)
{
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    for (const Rgb& p : image.pixels) out.write(reinterpret_cast<const char*>(p.data()), 3);
}

}  // namespace evsnn
