#pragma once

#include <random>
#include <string>

#include "tracecast/ui_tree.hpp"

namespace gen_tree {

struct Limits {
    int max_depth = 8;
    int max_fanout = 6;
    int max_nodes = 250;
};

// Random hierarchy with heavy class and id reuse so that same-class
// siblings, duplicate ids and overlapping rectangles are all common.
class Generator {
public:
    explicit Generator(unsigned seed, Limits limits = {}) : rng_(seed), limits_(limits) {}

    tracecast::UiTree tree() {
        count_ = 0;
        tracecast::UiTree t;
        t.screen = {0, 0, 1080, 1920};
        t.root = node(0, {0, 0, 1080, 1920});
        return t;
    }

    std::mt19937& rng() { return rng_; }

private:
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    tracecast::Rect inside(tracecast::Rect const& p) {
        if (p.width() < 2 || p.height() < 2) {
            return p;
        }
        int l = uniform(p.left, p.right - 1);
        int t = uniform(p.top, p.bottom - 1);
        // Occasionally spill past the parent.
        int r = uniform(l + 1, p.right + (uniform(0, 9) == 0 ? 40 : 0));
        int b = uniform(t + 1, p.bottom + (uniform(0, 9) == 0 ? 40 : 0));
        return {l, t, r, b};
    }

    tracecast::UiNode node(int depth, tracecast::Rect bounds) {
        static char const* const classes[] = {"LinearLayout", "FrameLayout", "Button",
                                              "TextView",     "ImageView",   "android.widget.EditText"};
        tracecast::UiNode n;
        n.id = "n" + std::to_string(count_++);
        n.class_name = classes[uniform(0, 5)];
        n.bounds = bounds;
        int id_roll = uniform(0, 9);
        if (id_roll < 4) {
            n.resource_id = "id" + std::to_string(uniform(0, 12));
        }
        if (uniform(0, 1)) {
            n.text = "t" + std::to_string(uniform(0, 5));
        }
        n.flags.clickable = uniform(0, 1);
        n.flags.enabled = uniform(0, 5) != 0;
        n.flags.focusable = uniform(0, 1);
        n.flags.checkable = uniform(0, 3) == 0;
        n.flags.checked = n.flags.checkable && uniform(0, 1);
        if (depth < limits_.max_depth) {
            int fan = uniform(0, limits_.max_fanout);
            if (depth >= 3) {
                fan = uniform(0, limits_.max_fanout / 2);
            }
            for (int i = 0; i < fan && count_ < limits_.max_nodes; ++i) {
                n.children.push_back(node(depth + 1, inside(bounds)));
            }
        }
        return n;
    }

    std::mt19937 rng_;
    Limits limits_;
    int count_ = 0;
};

} // namespace gen_tree
