#pragma once

// Brute-force reference implementations. Deliberately naive and written
// without the library's query helpers so they can check them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tracecast/ui_tree.hpp"

namespace oracles {

using tracecast::UiNode;
using tracecast::UiTree;

inline void tally_ids(UiNode const& n, std::map<std::string, int>& out) {
    if (n.resource_id) {
        out[*n.resource_id] += 1;
    }
    for (auto const& c : n.children) {
        tally_ids(c, out);
    }
}

inline std::map<std::string, int> id_tally(UiTree const& t) {
    std::map<std::string, int> out;
    tally_ids(t.root, out);
    return out;
}

struct Flat {
    UiNode const* node;
    UiNode const* parent;
    int depth;
};

inline void flatten(UiNode const& n, UiNode const* parent, int depth, std::vector<Flat>& out) {
    out.push_back({&n, parent, depth});
    for (auto const& c : n.children) {
        flatten(c, &n, depth + 1, out);
    }
}

inline std::vector<Flat> flat(UiTree const& t) {
    std::vector<Flat> out;
    flatten(t.root, nullptr, 0, out);
    return out;
}

// Deepest node whose rectangle holds the point; among equals the one drawn
// last (later in pre-order).
inline std::optional<std::string> hit(UiTree const& t, int x, int y) {
    std::optional<std::string> best;
    int best_depth = -1;
    for (auto const& f : flat(t)) {
        auto const& b = f.node->bounds;
        bool inside = x >= b.left && x < b.right && y >= b.top && y < b.bottom;
        if (inside && f.depth >= best_depth) {
            best = f.node->id;
            best_depth = f.depth;
        }
    }
    return best;
}

// Class-name path with 1-based same-class sibling indices, omitted for
// singletons.
inline std::string xpath(UiTree const& t, std::string const& id) {
    auto all = flat(t);
    std::vector<Flat> chain;
    for (std::string cur = id;;) {
        Flat const* f = nullptr;
        for (auto const& e : all) {
            if (e.node->id == cur) {
                f = &e;
            }
        }
        if (!f) {
            return {};
        }
        chain.insert(chain.begin(), *f);
        if (!f->parent) {
            break;
        }
        cur = f->parent->id;
    }
    std::string out;
    for (auto const& f : chain) {
        out += "/" + f.node->class_name;
        if (!f.parent) {
            continue;
        }
        int same = 0;
        int position = 0;
        for (auto const& s : f.parent->children) {
            if (s.class_name == f.node->class_name) {
                ++same;
                if (&s == f.node) {
                    position = same;
                }
            }
        }
        if (same > 1) {
            out += "[" + std::to_string(position) + "]";
        }
    }
    return out;
}

// Visible-area percentage check in floating point.
inline bool displayed(tracecast::Rect const& b, tracecast::Rect const& screen, int threshold) {
    double w = std::max(0, std::min(b.right, screen.right) - std::max(b.left, screen.left));
    double h = std::max(0, std::min(b.bottom, screen.bottom) - std::max(b.top, screen.top));
    double area = double(b.right - b.left) * double(b.bottom - b.top);
    if (area <= 0) {
        return false;
    }
    return (w * h) / area * 100.0 >= threshold - 1e-9;
}

} // namespace oracles
