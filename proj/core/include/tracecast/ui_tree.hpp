#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracecast/geometry.hpp"

namespace tracecast {

using NodeId = std::string;

struct NodeFlags {
    bool clickable = false;
    bool long_clickable = false;
    bool checkable = false;
    bool checked = false;
    bool enabled = true;
    bool focusable = false;
    bool focused = false;
    bool editable = false;
    bool scrollable = false;
    bool selectable = false;

    friend bool operator==(NodeFlags const&, NodeFlags const&) = default;
};

struct UiNode {
    NodeId id;
    std::string class_name;
    std::optional<std::string> resource_id;
    std::optional<std::string> text;
    Rect bounds;
    NodeFlags flags;
    std::vector<UiNode> children;

    friend bool operator==(UiNode const&, UiNode const&) = default;
};

enum class WindowKind { activity, dialog, popup };

struct UiTree {
    UiNode root;
    WindowKind window_kind = WindowKind::activity;
    bool active = true;
    Rect screen;

    friend bool operator==(UiTree const&, UiTree const&) = default;
};

// Pre-order walk. The callback receives the node, its depth (root = 0) and
// its parent (nullptr for the root).
void visit_preorder(UiNode const& root,
                    std::function<void(UiNode const&, int depth, UiNode const* parent)> const& fn);

UiNode const* find_node(UiTree const& tree, std::string_view id);
UiNode* find_node(UiTree& tree, std::string_view id);

// Root-to-node chain, both ends included; empty when the id is absent.
std::vector<UiNode const*> path_to(UiTree const& tree, std::string_view id);

UiNode const* parent_of(UiTree const& tree, std::string_view id);

std::size_t node_count(UiTree const& tree);

// Checks id uniqueness, rect validity and the editable => text invariant.
// Returns a description of the first violation, or nullopt.
std::optional<std::string> validate(UiTree const& tree);

std::string_view to_string(WindowKind kind);
WindowKind window_kind_from_string(std::string_view s);

void to_json(nlohmann::json& j, NodeFlags const& f);
void from_json(nlohmann::json const& j, NodeFlags& f);
void to_json(nlohmann::json& j, UiNode const& n);
void from_json(nlohmann::json const& j, UiNode& n);
void to_json(nlohmann::json& j, UiTree const& t);
void from_json(nlohmann::json const& j, UiTree& t);

} // namespace tracecast
