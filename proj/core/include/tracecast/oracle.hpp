#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracecast/property.hpp"
#include "tracecast/recorder.hpp"
#include "tracecast/trace.hpp"
#include "tracecast/ui_tree.hpp"

namespace tracecast::oracle {

/// class name -> properties worth asserting for it, most relevant first.
///
/// Lookups try the exact class name, then the part after the last '.', so
/// "android.widget.Button" finds "Button". Unknown classes get
/// default_relevant(). A class is treated as checkable when its entry lists
/// `checked`; `checked` is not offered for any other class.
class PropertyRegistry {
public:
    static PropertyRegistry builtin();
    // Throws ParseError.
    static PropertyRegistry from_json(nlohmann::json const& j);
    static PropertyRegistry load(std::string const& path);

    static std::vector<PropertyKind> default_relevant();

    std::vector<PropertyKind> relevant(std::string_view class_name) const;

    /// Everything assertable on the class: the relevant properties first,
    /// then the remaining applicable ones in declaration order.
    std::vector<PropertyKind> assertable(std::string_view class_name) const;

    std::map<std::string, std::vector<PropertyKind>, std::less<>> const& entries() const {
        return entries_;
    }

    nlohmann::json to_json() const;

private:
    std::map<std::string, std::vector<PropertyKind>, std::less<>> entries_;
};

// Uses the builtin registry.
std::vector<PropertyKind> relevant_properties(std::string_view class_name);

/// One assertion per relevant property of the foreground node at (x, y),
/// capturing the property's current value. Boolean properties that are
/// currently false come out negated. Empty when no node is hit.
std::vector<AssertionDef> auto_assert(rec::Recorder const& recorder, UiTree const& tree, int x,
                                      int y, std::int64_t timestamp,
                                      PropertyRegistry const& registry = PropertyRegistry::builtin());

struct ManualSelection {
    NodeId node;
    Rect highlight;
    std::vector<PropertyKind> properties;
};

std::optional<ManualSelection> manual_select(UiTree const& tree, int x, int y,
                                             PropertyRegistry const& registry =
                                                 PropertyRegistry::builtin());

struct ManualChoice {
    PropertyKind property = PropertyKind::displayed;
    std::optional<Scalar> value;     // text: expected text; booleans: expected flag
    std::optional<Selector> related; // relational properties
    bool negated = false;
    std::optional<int> threshold;
};

/// Builds the assertion for `node`, records it and returns it. Throws
/// std::invalid_argument when the node is unknown or a relational property
/// comes without a second selector.
AssertionDef commit_manual(rec::Recorder& recorder, UiTree const& tree, NodeId const& node,
                           ManualChoice const& choice, std::int64_t timestamp);

enum class Verdict { pass, fail, unresolved };

struct CheckResult {
    Verdict verdict = Verdict::pass;
    std::string message;
};

/// Collects the nodes holding the property and tests whether the node the
/// primary selector resolves to is among them (inverted when negated).
/// `unresolved` means a selector did not resolve uniquely; callers treat it
/// as an error, not a failure.
CheckResult check_assertion(UiTree const& tree, AssertionDef const& assertion,
                            Rect const& screen);

// Integer visible-area percentage test: area(bounds ∩ screen) * 100 >= threshold * area(bounds).
bool displayed_at_least(Rect const& bounds, Rect const& screen, int threshold_percent);

} // namespace tracecast::oracle
