#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracecast/selector.hpp"
#include "tracecast/ui_tree.hpp"

namespace tracecast {

/// resource-id -> number of nodes carrying it. Every key has count >= 1.
using ResourceIdMap = std::map<std::string, int, std::less<>>;

/// Breadth-first tally of resource ids. When `visit_order` is given, node ids
/// are appended in the order they were visited.
ResourceIdMap build_resource_id_map(UiTree const& tree,
                                    std::vector<NodeId>* visit_order = nullptr);

/// Foreground node enclosing (x, y): the deepest enclosing node, ties going
/// to the one drawn last (latest in pre-order).
std::optional<NodeId> hit_test(UiTree const& tree, int x, int y);

/// Absolute path of class names from the root. A step carries a 1-based
/// index among same-class siblings, omitted when the node is the only child
/// of its class. Throws std::out_of_range for an unknown node.
std::string xpath_for(UiTree const& tree, std::string_view node);

/// Throws ParseError on a malformed path.
MatchResult evaluate_xpath(UiTree const& tree, std::string_view path);

MatchResult evaluate_selector(UiTree const& tree, Selector const& sel);

} // namespace tracecast
