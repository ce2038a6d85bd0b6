#pragma once

#include <cstdint>
#include <optional>

#include <nlohmann/json_fwd.hpp>

namespace tracecast {

/// Axis-aligned rectangle in integer device pixels. Half-open: a point
/// (x, y) is inside when left <= x < right and top <= y < bottom.
struct Rect {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;

    constexpr int width() const { return right - left; }
    constexpr int height() const { return bottom - top; }
    constexpr std::int64_t area() const {
        return static_cast<std::int64_t>(width()) * static_cast<std::int64_t>(height());
    }
    constexpr bool empty() const { return width() <= 0 || height() <= 0; }
    constexpr bool contains(int x, int y) const {
        return x >= left && x < right && y >= top && y < bottom;
    }
    constexpr bool contains(Rect const& other) const {
        return other.left >= left && other.right <= right && other.top >= top &&
               other.bottom <= bottom;
    }
    constexpr int center_x() const { return left + width() / 2; }
    constexpr int center_y() const { return top + height() / 2; }

    constexpr Rect translated(int dx, int dy) const {
        return {left + dx, top + dy, right + dx, bottom + dy};
    }

    bool valid() const { return left <= right && top <= bottom; }

    friend bool operator==(Rect const&, Rect const&) = default;
};

// Empty result when the rectangles do not overlap.
Rect intersect(Rect const& a, Rect const& b);

void to_json(nlohmann::json& j, Rect const& r);
void from_json(nlohmann::json const& j, Rect& r);

} // namespace tracecast
