#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace evsnn {

/// Sensor pixel. `x` is the column, `y` the row.
struct Pixel {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;

    // Row-major: rows first, then columns.
    friend std::strong_ordering operator<=>(const Pixel& a, const Pixel& b)
    {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

/// Sorted (row-major), duplicate-free collection of pixels.
class PointSet {
public:
    using const_iterator = std::vector<Pixel>::const_iterator;

    PointSet() = default;
    PointSet(std::initializer_list<Pixel> pixels) : PointSet(std::vector<Pixel>(pixels)) {}
    explicit PointSet(std::vector<Pixel> pixels) : pixels_(std::move(pixels))
    {
        std::sort(pixels_.begin(), pixels_.end());
        pixels_.erase(std::unique(pixels_.begin(), pixels_.end()), pixels_.end());
    }

    bool contains(Pixel p) const { return std::binary_search(pixels_.begin(), pixels_.end(), p); }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }
    const_iterator begin() const { return pixels_.begin(); }
    const_iterator end() const { return pixels_.end(); }
    const std::vector<Pixel>& pixels() const { return pixels_; }
    const Pixel& operator[](std::size_t i) const { return pixels_[i]; }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<Pixel> pixels_;
};

}  // namespace evsnn
