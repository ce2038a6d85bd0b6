#pragma once

#include <map>
#include <optional>
#include <string>

#include "tracecast/app_spec.hpp"
#include "tracecast/device.hpp"
#include "tracecast/ui_tree.hpp"

namespace tracecast::sim {

// Session-local view state layered over the template.
struct RenderOptions {
    std::optional<NodeId> focused;
    std::map<NodeId, std::string> text_overrides;
    int scroll_offset_px = 0;
};

/// Lays out one screen for a device: state bindings are substituted, dp
/// bounds are scaled by the density and rounded, then the device quirks are
/// applied in profile order. Content may end up off-screen.
UiTree render(AppSpec const& app, std::string const& screen_id, StateMap const& state,
              DeviceProfile const& device, RenderOptions const& options = {});

// Largest useful scroll offset for a rendered (unscrolled) tree.
int max_scroll_offset(UiTree const& unscrolled);

} // namespace tracecast::sim
