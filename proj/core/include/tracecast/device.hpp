#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracecast/geometry.hpp"

namespace tracecast::sim {

// Grows every matching container by extra_dp at its bottom edge and pushes
// content laid out below it further down, possibly past the screen edge.
struct ExtraBottomSpace {
    std::string container_class;
    double extra_dp = 0;
    friend bool operator==(ExtraBottomSpace const&, ExtraBottomSpace const&) = default;
};

// Shows one additional item at the head of every matching container.
struct ExtraListItem {
    std::string container_class;
    std::string item_text;
    friend bool operator==(ExtraListItem const&, ExtraListItem const&) = default;
};

using Quirk = std::variant<ExtraBottomSpace, ExtraListItem>;

struct DeviceProfile {
    std::string name;
    int width_px = 0;
    int height_px = 0;
    double density = 1.0;
    std::vector<Quirk> quirks;

    Rect screen() const { return {0, 0, width_px, height_px}; }

    friend bool operator==(DeviceProfile const&, DeviceProfile const&) = default;
};

// Throws ConfigError when dimensions, density or quirk parameters are invalid.
void validate(DeviceProfile const& d);

DeviceProfile load_device_profile(std::string const& path);

void to_json(nlohmann::json& j, DeviceProfile const& d);
void from_json(nlohmann::json const& j, DeviceProfile& d);

} // namespace tracecast::sim
