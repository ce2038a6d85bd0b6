#include "tracecast/ui_tree.hpp"

#include <unordered_set>

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"

namespace tracecast {

namespace {

void walk(UiNode const& node, int depth, UiNode const* parent,
          std::function<void(UiNode const&, int, UiNode const*)> const& fn) {
    fn(node, depth, parent);
    for (auto const& child : node.children) {
        walk(child, depth + 1, &node, fn);
    }
}

bool collect_path(UiNode const& node, std::string_view id, std::vector<UiNode const*>& out) {
    out.push_back(&node);
    if (node.id == id) {
        return true;
    }
    for (auto const& child : node.children) {
        if (collect_path(child, id, out)) {
            return true;
        }
    }
    out.pop_back();
    return false;
}

UiNode* find_mut(UiNode& node, std::string_view id) {
    if (node.id == id) {
        return &node;
    }
    for (auto& child : node.children) {
        if (auto* hit = find_mut(child, id)) {
            return hit;
        }
    }
    return nullptr;
}

} // namespace

void visit_preorder(UiNode const& root,
                    std::function<void(UiNode const&, int, UiNode const*)> const& fn) {
    walk(root, 0, nullptr, fn);
}

UiNode const* find_node(UiTree const& tree, std::string_view id) {
    return find_mut(const_cast<UiNode&>(tree.root), id);
}

UiNode* find_node(UiTree& tree, std::string_view id) { return find_mut(tree.root, id); }

std::vector<UiNode const*> path_to(UiTree const& tree, std::string_view id) {
    std::vector<UiNode const*> out;
    if (!collect_path(tree.root, id, out)) {
        out.clear();
    }
    return out;
}

UiNode const* parent_of(UiTree const& tree, std::string_view id) {
    auto path = path_to(tree, id);
    return path.size() >= 2 ? path[path.size() - 2] : nullptr;
}

std::size_t node_count(UiTree const& tree) {
    std::size_t n = 0;
    visit_preorder(tree.root, [&](UiNode const&, int, UiNode const*) { ++n; });
    return n;
}

std::optional<std::string> validate(UiTree const& tree) {
    std::unordered_set<std::string> seen;
    std::optional<std::string> problem;
    visit_preorder(tree.root, [&](UiNode const& node, int, UiNode const*) {
        if (problem) {
            return;
        }
        if (!seen.insert(node.id).second) {
            problem = "duplicate node id '" + node.id + "'";
        } else if (!node.bounds.valid()) {
            problem = "node '" + node.id + "' has inverted bounds";
        } else if (node.flags.editable && !node.text) {
            problem = "editable node '" + node.id + "' has no text field";
        }
    });
    return problem;
}

std::string_view to_string(WindowKind kind) {
    switch (kind) {
    case WindowKind::activity:
        return "activity";
    case WindowKind::dialog:
        return "dialog";
    case WindowKind::popup:
        return "popup";
    }
    return "activity";
}

WindowKind window_kind_from_string(std::string_view s) {
    if (s == "activity") {
        return WindowKind::activity;
    }
    if (s == "dialog") {
        return WindowKind::dialog;
    }
    if (s == "popup") {
        return WindowKind::popup;
    }
    throw ParseError("unknown window kind '" + std::string(s) + "'");
}

void to_json(nlohmann::json& j, NodeFlags const& f) {
    j = nlohmann::json{{"clickable", f.clickable},   {"longClickable", f.long_clickable},
                       {"checkable", f.checkable},   {"checked", f.checked},
                       {"enabled", f.enabled},       {"focusable", f.focusable},
                       {"focused", f.focused},       {"editable", f.editable},
                       {"scrollable", f.scrollable}, {"selectable", f.selectable}};
}

void from_json(nlohmann::json const& j, NodeFlags& f) {
    f = NodeFlags{};
    f.clickable = j.value("clickable", f.clickable);
    f.long_clickable = j.value("longClickable", f.long_clickable);
    f.checkable = j.value("checkable", f.checkable);
    f.checked = j.value("checked", f.checked);
    f.enabled = j.value("enabled", f.enabled);
    f.focusable = j.value("focusable", f.focusable);
    f.focused = j.value("focused", f.focused);
    f.editable = j.value("editable", f.editable);
    f.scrollable = j.value("scrollable", f.scrollable);
    f.selectable = j.value("selectable", f.selectable);
}

void to_json(nlohmann::json& j, UiNode const& n) {
    j = nlohmann::json::object();
    j["node-id"] = n.id;
    j["class"] = n.class_name;
    if (n.resource_id) {
        j["resourceId"] = *n.resource_id;
    }
    if (n.text) {
        j["text"] = *n.text;
    }
    j["bounds"] = n.bounds;
    j["flags"] = n.flags;
    j["children"] = n.children;
}

void from_json(nlohmann::json const& j, UiNode& n) {
    n.id = j.at("node-id").get<std::string>();
    n.class_name = j.at("class").get<std::string>();
    n.resource_id.reset();
    n.text.reset();
    if (auto it = j.find("resourceId"); it != j.end() && !it->is_null()) {
        n.resource_id = it->get<std::string>();
    }
    if (auto it = j.find("text"); it != j.end() && !it->is_null()) {
        n.text = it->get<std::string>();
    }
    n.bounds = j.at("bounds").get<Rect>();
    n.flags = j.contains("flags") ? j.at("flags").get<NodeFlags>() : NodeFlags{};
    n.children = j.value("children", std::vector<UiNode>{});
}

void to_json(nlohmann::json& j, UiTree const& t) {
    j = nlohmann::json{{"windowKind", to_string(t.window_kind)},
                       {"active", t.active},
                       {"screen", t.screen},
                       {"root", t.root}};
}

void from_json(nlohmann::json const& j, UiTree& t) {
    t.window_kind = window_kind_from_string(j.value("windowKind", std::string("activity")));
    t.active = j.value("active", true);
    t.screen = j.at("screen").get<Rect>();
    t.root = j.at("root").get<UiNode>();
}

} // namespace tracecast
