#include "tracecast/device.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"

namespace tracecast::sim {

void validate(DeviceProfile const& d) {
    if (d.width_px <= 0 || d.height_px <= 0) {
        throw ConfigError("device '" + d.name + "': screen size must be positive");
    }
    if (!(d.density > 0)) {
        throw ConfigError("device '" + d.name + "': density must be positive");
    }
    for (auto const& q : d.quirks) {
        if (auto const* b = std::get_if<ExtraBottomSpace>(&q); b && !(b->extra_dp > 0)) {
            throw ConfigError("device '" + d.name + "': extraDp must be positive");
        }
    }
}

void to_json(nlohmann::json& j, DeviceProfile const& d) {
    auto quirks = nlohmann::json::array();
    for (auto const& q : d.quirks) {
        if (auto const* b = std::get_if<ExtraBottomSpace>(&q)) {
            quirks.push_back({{"type", "extraBottomSpace"},
                              {"containerClass", b->container_class},
                              {"extraDp", b->extra_dp}});
        } else {
            auto const& l = std::get<ExtraListItem>(q);
            quirks.push_back({{"type", "extraListItem"},
                              {"containerClass", l.container_class},
                              {"itemText", l.item_text}});
        }
    }
    j = nlohmann::json{{"name", d.name},
                       {"widthPx", d.width_px},
                       {"heightPx", d.height_px},
                       {"density", d.density},
                       {"quirks", quirks}};
}

void from_json(nlohmann::json const& j, DeviceProfile& d) {
    d.name = j.at("name").get<std::string>();
    d.width_px = j.at("widthPx").get<int>();
    d.height_px = j.at("heightPx").get<int>();
    d.density = j.at("density").get<double>();
    d.quirks.clear();
    for (auto const& q : j.value("quirks", nlohmann::json::array())) {
        auto type = q.at("type").get<std::string>();
        if (type == "extraBottomSpace") {
            d.quirks.emplace_back(ExtraBottomSpace{q.at("containerClass").get<std::string>(),
                                                   q.at("extraDp").get<double>()});
        } else if (type == "extraListItem") {
            d.quirks.emplace_back(ExtraListItem{q.at("containerClass").get<std::string>(),
                                                q.at("itemText").get<std::string>()});
        } else {
            throw ParseError("unknown quirk type '" + type + "'");
        }
    }
}

DeviceProfile load_device_profile(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open device profile '" + path + "'");
    }
    DeviceProfile d;
    try {
        d = nlohmann::json::parse(in).get<DeviceProfile>();
    } catch (nlohmann::json::exception const& e) {
        throw ParseError("device profile '" + path + "': " + e.what());
    }
    validate(d);
    return d;
}

} // namespace tracecast::sim
