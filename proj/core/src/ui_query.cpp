#include "tracecast/ui_query.hpp"

#include <deque>
#include <stdexcept>

namespace tracecast {

namespace {

MatchResult from_matches(std::vector<UiNode const*> const& matches) {
    if (matches.empty()) {
        return MatchResult::not_found();
    }
    if (matches.size() == 1) {
        return MatchResult::unique(matches.front()->id);
    }
    return MatchResult::ambiguous(matches.size());
}

void hit_walk(UiNode const& node, int depth, int x, int y, UiNode const*& best, int& best_depth) {
    if (node.bounds.contains(x, y) && depth >= best_depth) {
        best = &node;
        best_depth = depth;
    }
    // Children may overflow their parent, so there is no pruning here.
    for (auto const& child : node.children) {
        hit_walk(child, depth + 1, x, y, best, best_depth);
    }
}

} // namespace

ResourceIdMap build_resource_id_map(UiTree const& tree, std::vector<NodeId>* visit_order) {
    ResourceIdMap counts;
    std::deque<UiNode const*> queue{&tree.root};
    while (!queue.empty()) {
        auto const* node = queue.front();
        queue.pop_front();
        if (visit_order) {
            visit_order->push_back(node->id);
        }
        if (node->resource_id) {
            ++counts[*node->resource_id];
        }
        for (auto const& child : node->children) {
            queue.push_back(&child);
        }
    }
    return counts;
}

std::optional<NodeId> hit_test(UiTree const& tree, int x, int y) {
    UiNode const* best = nullptr;
    int best_depth = -1;
    hit_walk(tree.root, 0, x, y, best, best_depth);
    if (!best) {
        return std::nullopt;
    }
    return best->id;
}

std::string xpath_for(UiTree const& tree, std::string_view node) {
    auto chain = path_to(tree, node);
    if (chain.empty()) {
        throw std::out_of_range("node '" + std::string(node) + "' not in tree");
    }
    std::vector<XPathStep> steps;
    steps.push_back({chain.front()->class_name, std::nullopt});
    for (std::size_t i = 1; i < chain.size(); ++i) {
        auto const* parent = chain[i - 1];
        auto const* self = chain[i];
        int same_class = 0;
        int position = 0;
        for (auto const& sibling : parent->children) {
            if (sibling.class_name == self->class_name) {
                ++same_class;
                if (&sibling == self) {
                    position = same_class;
                }
            }
        }
        XPathStep step{self->class_name, std::nullopt};
        if (same_class > 1) {
            step.index = position;
        }
        steps.push_back(std::move(step));
    }
    return format_xpath(steps);
}

MatchResult evaluate_xpath(UiTree const& tree, std::string_view path) {
    auto steps = parse_xpath(path);

    std::vector<UiNode const*> context;
    auto const& first = steps.front();
    // The root is the only node at its level.
    if (tree.root.class_name == first.class_name && (!first.index || *first.index == 1)) {
        context.push_back(&tree.root);
    }
    for (std::size_t i = 1; i < steps.size() && !context.empty(); ++i) {
        auto const& step = steps[i];
        std::vector<UiNode const*> next;
        for (auto const* node : context) {
            int seen = 0;
            for (auto const& child : node->children) {
                if (child.class_name != step.class_name) {
                    continue;
                }
                ++seen;
                if (!step.index || *step.index == seen) {
                    next.push_back(&child);
                }
            }
        }
        context = std::move(next);
    }
    return from_matches(context);
}

MatchResult evaluate_selector(UiTree const& tree, Selector const& sel) {
    if (auto const* x = std::get_if<XPathSelector>(&sel)) {
        return evaluate_xpath(tree, x->path);
    }
    std::vector<UiNode const*> matches;
    if (auto const* r = std::get_if<ResourceIdSelector>(&sel)) {
        visit_preorder(tree.root, [&](UiNode const& n, int, UiNode const*) {
            if (n.resource_id && *n.resource_id == r->id) {
                matches.push_back(&n);
            }
        });
    } else {
        auto const& p = std::get<PropertySelector>(sel);
        visit_preorder(tree.root, [&](UiNode const& n, int, UiNode const*) {
            if (n.class_name != p.element_class) {
                return;
            }
            if (p.element_text && n.text.value_or("") != *p.element_text) {
                return;
            }
            matches.push_back(&n);
        });
    }
    return from_matches(matches);
}

} // namespace tracecast
