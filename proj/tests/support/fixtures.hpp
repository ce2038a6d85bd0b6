#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>

#include "tracecast/app_spec.hpp"
#include "tracecast/device.hpp"

namespace fixtures {

inline std::string path(std::string_view rel) {
    return std::string(TRACECAST_FIXTURE_DIR) + "/" + std::string(rel);
}

inline std::string read(std::string_view rel) {
    std::ifstream in(path(rel), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::shared_ptr<tracecast::sim::AppSpec const> app(std::string_view name) {
    return std::make_shared<tracecast::sim::AppSpec const>(
        tracecast::sim::load_app_spec(path("apps/" + std::string(name) + ".json")));
}

inline tracecast::sim::DeviceProfile device(std::string_view name) {
    return tracecast::sim::load_device_profile(path("devices/" + std::string(name) + ".json"));
}

// Quirk-free profiles spanning densities 1.0 to 3.5.
inline constexpr std::string_view clean_devices[] = {
    "mdpi-480x800", "xhdpi-720x1280", "xxhdpi-1080x1920", "tall-1440x2560", "fractional-1080x1920",
};

} // namespace fixtures
