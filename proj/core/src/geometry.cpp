#include "tracecast/geometry.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace tracecast {

Rect intersect(Rect const& a, Rect const& b) {
    Rect r{std::max(a.left, b.left), std::max(a.top, b.top), std::min(a.right, b.right),
           std::min(a.bottom, b.bottom)};
    if (r.right < r.left || r.bottom < r.top) {
        return {};
    }
    return r;
}

void to_json(nlohmann::json& j, Rect const& r) {
    j = nlohmann::json{{"l", r.left}, {"t", r.top}, {"r", r.right}, {"b", r.bottom}};
}

void from_json(nlohmann::json const& j, Rect& r) {
    r.left = j.at("l").get<int>();
    r.top = j.at("t").get<int>();
    r.right = j.at("r").get<int>();
    r.bottom = j.at("b").get<int>();
}

} // namespace tracecast
