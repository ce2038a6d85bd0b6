#include "tracecast/render.hpp"

#include <cmath>
#include <vector>

namespace tracecast::sim {

namespace {

int scale(int dp, double density) { return static_cast<int>(std::lround(dp * density)); }

void scale_bounds(UiNode& node, double density) {
    auto& b = node.bounds;
    b = {scale(b.left, density), scale(b.top, density), scale(b.right, density),
         scale(b.bottom, density)};
    for (auto& child : node.children) {
        scale_bounds(child, density);
    }
}

void apply_view_state(UiNode& node, ScreenTemplate const& screen, StateMap const& state,
                      RenderOptions const& options) {
    if (auto it = screen.bindings.find(node.id); it != screen.bindings.end()) {
        auto value = state.find(it->second);
        node.text = value == state.end() ? std::string{} : value->second;
    }
    if (auto it = options.text_overrides.find(node.id); it != options.text_overrides.end()) {
        node.text = it->second;
    }
    node.flags.focused = options.focused && *options.focused == node.id;
    if (node.flags.editable && !node.text) {
        node.text = "";
    }
    for (auto& child : node.children) {
        apply_view_state(child, screen, state, options);
    }
}

void translate_subtree(UiNode& node, int dy) {
    node.bounds = node.bounds.translated(0, dy);
    for (auto& child : node.children) {
        translate_subtree(child, dy);
    }
}

void collect_by_class(UiNode& node, std::string const& cls, std::vector<UiNode*>& out) {
    if (node.class_name == cls) {
        out.push_back(&node);
    }
    for (auto& child : node.children) {
        collect_by_class(child, cls, out);
    }
}

bool contains_node(UiNode const& subtree, UiNode const* target) {
    if (&subtree == target) {
        return true;
    }
    for (auto const& child : subtree.children) {
        if (contains_node(child, target)) {
            return true;
        }
    }
    return false;
}

// Shift every node outside the container's subtree and ancestor chain whose
// top edge sits at or below the container's original bottom.
void push_down(UiNode& node, UiNode const& container, int edge, int shift) {
    if (&node == &container) {
        return;
    }
    if (!contains_node(node, &container) && node.bounds.top >= edge) {
        node.bounds = node.bounds.translated(0, shift);
    }
    for (auto& child : node.children) {
        push_down(child, container, edge, shift);
    }
}

void apply_quirk(UiNode& root, ExtraBottomSpace const& q, double density) {
    int shift = static_cast<int>(std::lround(q.extra_dp * density));
    std::vector<UiNode*> containers;
    collect_by_class(root, q.container_class, containers);
    for (auto* c : containers) {
        int edge = c->bounds.bottom;
        c->bounds.bottom += shift;
        push_down(root, *c, edge, shift);
    }
}

void apply_quirk(UiNode& root, ExtraListItem const& q, double density) {
    std::vector<UiNode*> containers;
    collect_by_class(root, q.container_class, containers);
    for (auto* c : containers) {
        UiNode extra;
        extra.id = c->id + "#extra";
        extra.text = q.item_text;
        if (c->children.empty()) {
            extra.class_name = "TextView";
            extra.bounds = {c->bounds.left, c->bounds.top, c->bounds.right,
                            c->bounds.top + static_cast<int>(std::lround(48 * density))};
        } else {
            auto const& first = c->children.front();
            extra.class_name = first.class_name;
            extra.bounds = first.bounds;
            extra.flags = first.flags;
            extra.flags.focused = false;
            extra.flags.checked = false;
        }
        int dy = extra.bounds.height();
        for (auto& child : c->children) {
            translate_subtree(child, dy);
        }
        c->children.insert(c->children.begin(), std::move(extra));
    }
}

int max_bottom_below_root(UiNode const& node, bool is_root) {
    int best = is_root ? 0 : node.bounds.bottom;
    for (auto const& child : node.children) {
        best = std::max(best, max_bottom_below_root(child, false));
    }
    return best;
}

} // namespace

UiTree render(AppSpec const& app, std::string const& screen_id, StateMap const& state,
              DeviceProfile const& device, RenderOptions const& options) {
    auto const& screen = app.screen(screen_id);
    UiTree tree;
    tree.window_kind = screen.kind;
    tree.active = true;
    tree.screen = device.screen();
    tree.root = screen.root;

    apply_view_state(tree.root, screen, state, options);
    scale_bounds(tree.root, device.density);
    for (auto const& quirk : device.quirks) {
        std::visit([&](auto const& q) { apply_quirk(tree.root, q, device.density); }, quirk);
    }
    if (options.scroll_offset_px != 0) {
        for (auto& child : tree.root.children) {
            translate_subtree(child, -options.scroll_offset_px);
        }
    }
    return tree;
}

int max_scroll_offset(UiTree const& unscrolled) {
    return std::max(0, max_bottom_below_root(unscrolled.root, true) - unscrolled.screen.bottom);
}

} // namespace tracecast::sim
