#include "tracecast/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"
#include "tracecast/ui_query.hpp"

namespace tracecast::oracle {

namespace {

using P = PropertyKind;

std::string_view simple_name(std::string_view class_name) {
    auto dot = class_name.rfind('.');
    return dot == std::string_view::npos ? class_name : class_name.substr(dot + 1);
}

bool flag_holds(PropertyKind p, UiNode const& n, Rect const& screen,
                std::optional<int> threshold) {
    switch (p) {
    case P::checked:
        return n.flags.checked;
    case P::clickable:
        return n.flags.clickable;
    case P::displayed:
        return displayed_at_least(n.bounds, screen, threshold.value_or(100));
    case P::enabled:
        return n.flags.enabled;
    case P::focus:
        return n.flags.focused;
    case P::focusable:
        return n.flags.focusable;
    default:
        return false;
    }
}

std::vector<UiNode const*> all_nodes(UiTree const& tree) {
    std::vector<UiNode const*> out;
    visit_preorder(tree.root, [&](UiNode const& n, int, UiNode const*) { out.push_back(&n); });
    return out;
}

} // namespace

PropertyRegistry PropertyRegistry::builtin() {
    PropertyRegistry r;
    r.entries_ = {
        {"Button", {P::displayed, P::enabled, P::clickable}},
        {"ImageButton", {P::displayed, P::enabled, P::clickable}},
        {"TextView", {P::text, P::displayed}},
        {"EditText", {P::text, P::displayed, P::enabled, P::focusable, P::focus}},
        {"CheckBox", {P::checked, P::displayed, P::enabled, P::clickable, P::text}},
        {"RadioButton", {P::checked, P::displayed, P::enabled, P::text}},
        {"Switch", {P::checked, P::displayed, P::enabled}},
        {"ToggleButton", {P::checked, P::displayed, P::enabled, P::text}},
        {"CheckedTextView", {P::checked, P::text, P::displayed}},
        {"ImageView", {P::displayed}},
        {"ListView", {P::displayed, P::enabled}},
        {"Spinner", {P::displayed, P::enabled, P::clickable}},
        {"ProgressBar", {P::displayed}},
        {"SeekBar", {P::displayed, P::enabled, P::focusable}},
    };
    return r;
}

PropertyRegistry PropertyRegistry::from_json(nlohmann::json const& j) {
    PropertyRegistry r;
    if (!j.is_object()) {
        throw ParseError("registry must be an object of class -> property list");
    }
    for (auto const& [cls, list] : j.items()) {
        std::vector<PropertyKind> props;
        for (auto const& p : list) {
            auto kind = property_from_string(p.get<std::string>());
            if (is_relational(kind)) {
                throw ParseError("registry entry '" + cls + "' lists relational property");
            }
            props.push_back(kind);
        }
        r.entries_[cls] = std::move(props);
    }
    return r;
}

PropertyRegistry PropertyRegistry::load(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open registry '" + path + "'");
    }
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (nlohmann::json::exception const& e) {
        throw ParseError("registry '" + path + "': " + e.what());
    }
}

nlohmann::json PropertyRegistry::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (auto const& [cls, props] : entries_) {
        auto& list = j[cls] = nlohmann::json::array();
        for (auto p : props) {
            list.push_back(std::string(to_string(p)));
        }
    }
    return j;
}

std::vector<PropertyKind> PropertyRegistry::default_relevant() {
    return {P::displayed, P::enabled};
}

std::vector<PropertyKind> PropertyRegistry::relevant(std::string_view class_name) const {
    if (auto it = entries_.find(class_name); it != entries_.end()) {
        return it->second;
    }
    if (auto it = entries_.find(simple_name(class_name)); it != entries_.end()) {
        return it->second;
    }
    return default_relevant();
}

std::vector<PropertyKind> PropertyRegistry::assertable(std::string_view class_name) const {
    auto out = relevant(class_name);
    bool checkable = std::find(out.begin(), out.end(), P::checked) != out.end();
    for (auto p : all_properties) {
        if (p == P::checked && !checkable) {
            continue;
        }
        if (std::find(out.begin(), out.end(), p) == out.end()) {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<PropertyKind> relevant_properties(std::string_view class_name) {
    static auto const registry = PropertyRegistry::builtin();
    return registry.relevant(class_name);
}

bool displayed_at_least(Rect const& bounds, Rect const& screen, int threshold_percent) {
    auto area = bounds.area();
    if (area <= 0) {
        return false;
    }
    auto visible = intersect(bounds, screen).area();
    return visible * 100 >= static_cast<std::int64_t>(threshold_percent) * area;
}

std::vector<AssertionDef> auto_assert(rec::Recorder const& recorder, UiTree const& tree, int x,
                                      int y, std::int64_t timestamp,
                                      PropertyRegistry const& registry) {
    std::vector<AssertionDef> out;
    auto hit = hit_test(tree, x, y);
    if (!hit) {
        return out;
    }
    auto const& node = *find_node(tree, *hit);
    sim::AccEvent payload;
    payload.class_name = node.class_name;
    payload.text = node.text;
    auto selector = recorder.choose_selector(node.id, payload, tree);
    for (auto p : registry.relevant(node.class_name)) {
        AssertionDef a;
        a.property = p;
        a.selector = selector;
        a.timestamp = timestamp;
        if (p == P::text) {
            a.values.emplace_back(node.text.value_or(""));
        } else {
            a.negated = !flag_holds(p, node, tree.screen, std::nullopt);
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::optional<ManualSelection> manual_select(UiTree const& tree, int x, int y,
                                             PropertyRegistry const& registry) {
    auto hit = hit_test(tree, x, y);
    if (!hit) {
        return std::nullopt;
    }
    auto const& node = *find_node(tree, *hit);
    return ManualSelection{node.id, node.bounds, registry.assertable(node.class_name)};
}

AssertionDef commit_manual(rec::Recorder& recorder, UiTree const& tree, NodeId const& node_id,
                           ManualChoice const& choice, std::int64_t timestamp) {
    auto const* node = find_node(tree, node_id);
    if (!node) {
        throw std::invalid_argument("no node '" + node_id + "' in the current tree");
    }
    if (is_relational(choice.property) && !choice.related) {
        throw std::invalid_argument(std::string(to_string(choice.property)) +
                                    " assertion needs a second element");
    }
    sim::AccEvent payload;
    payload.class_name = node->class_name;
    payload.text = node->text;

    AssertionDef a;
    a.property = choice.property;
    a.selector = recorder.choose_selector(node->id, payload, tree);
    a.timestamp = timestamp;
    a.negated = choice.negated;
    a.threshold = choice.threshold;
    if (is_relational(choice.property)) {
        a.related = choice.related;
    } else if (choice.property == P::text) {
        a.values.emplace_back(choice.value ? to_display(*choice.value) : node->text.value_or(""));
    } else if (choice.value) {
        if (auto const* b = std::get_if<bool>(&*choice.value); b && !*b) {
            a.negated = !a.negated;
        }
    }
    try {
        recorder.record_assertion(a);
    } catch (ParseError const& e) {
        throw std::invalid_argument(e.what());
    }
    return a;
}

CheckResult check_assertion(UiTree const& tree, AssertionDef const& assertion,
                            Rect const& screen) {
    auto primary = evaluate_selector(tree, assertion.selector);
    if (!primary.is_unique()) {
        return {Verdict::unresolved, describe(assertion.selector) + " is " + describe(primary)};
    }

    // The set of nodes holding the property.
    std::vector<UiNode const*> holders;
    if (is_relational(assertion.property)) {
        if (!assertion.related) {
            return {Verdict::unresolved, "relational assertion without a second selector"};
        }
        auto other = evaluate_selector(tree, *assertion.related);
        if (!other.is_unique()) {
            return {Verdict::unresolved,
                    describe(*assertion.related) + " is " + describe(other)};
        }
        auto const* anchor = find_node(tree, other.node());
        auto const* anchor_parent = parent_of(tree, other.node());
        switch (assertion.property) {
        case P::child:
            for (auto const& c : anchor->children) {
                holders.push_back(&c);
            }
            break;
        case P::parent:
            if (anchor_parent) {
                holders.push_back(anchor_parent);
            }
            break;
        default:
            if (anchor_parent) {
                for (auto const& c : anchor_parent->children) {
                    if (c.id != anchor->id) {
                        holders.push_back(&c);
                    }
                }
            }
            break;
        }
    } else {
        std::string expected;
        if (assertion.property == P::text && !assertion.values.empty()) {
            expected = to_display(assertion.values.front());
        }
        for (auto const* n : all_nodes(tree)) {
            bool holds = assertion.property == P::text
                             ? n->text.has_value() && *n->text == expected
                             : flag_holds(assertion.property, *n, screen, assertion.threshold);
            if (holds) {
                holders.push_back(n);
            }
        }
    }

    bool member = std::any_of(holders.begin(), holders.end(),
                              [&](UiNode const* n) { return n->id == primary.node(); });
    if (member != assertion.negated) {
        return {Verdict::pass, {}};
    }
    auto const& target = *find_node(tree, primary.node());
    std::string msg = std::string(to_string(assertion.property)) +
                      (assertion.negated ? " unexpectedly holds for " : " does not hold for ") +
                      describe(assertion.selector);
    if (assertion.property == P::text) {
        msg += " (text is \"" + target.text.value_or("") + "\")";
    }
    return {Verdict::fail, msg};
}

} // namespace tracecast::oracle
